"""Exact computational algebra for measurement-operator groups over prime
dimensions: root-of-unity scalars, generalised phase-gate tables and their
per-level polynomial expansion, the semidirect shift extension and its tensor
powers, the projection onto Heisenberg-Weyl normal form, GHZ-state
computation simulation, and linear-constraint-system checking."""

from .cyclo import Phase, max_level, set_max_level
from .phase_fn import LevelCoefficients, PhaseFunction, lagrange_coeffs
from .kgroup import (
    CommutingPairCase,
    KElement,
    SubgroupReport,
    classify_commuting_pair,
    dihedral_check,
    enumerate_kgroup,
    maximal_p_torsion_abelian,
    structural_p_torsion,
)
from .ktensor import (
    SymplecticVector,
    TensorElement,
    is_isotropic,
    structural_tensor_p_torsion,
    symplectic_form,
)
from .projection import (
    DISPLAYED,
    PROOF,
    HWElement,
    even_prime_counterexample,
    p_map,
    phi,
    phi_local,
    r_map,
    value_map_nu,
)
from .mbqc import (
    ContextualityWitness,
    MbqcSpec,
    MultivariatePoly,
    OutputTable,
    SiteSpec,
    contextuality_witness,
    expected_star_outputs,
    ghz_evaluate,
    interpolate_poly,
    measurement_op,
    output_table,
    qubit_star_spec,
    qudit_star_spec,
    star_measurement_op,
)
from .lcs import (
    GeneratorAssignment,
    LCS,
    MerminFixtures,
    SolutionConditionReport,
    check_classical,
    check_solution_conditions,
    commute_on_ghz,
    lcs_from_mbqc,
    measurement_family_report,
    mermin_fixtures,
    reduce_to_classical,
    solve_classical,
)

__all__ = [
    "Phase",
    "max_level",
    "set_max_level",
    "PhaseFunction",
    "LevelCoefficients",
    "lagrange_coeffs",
    "KElement",
    "CommutingPairCase",
    "SubgroupReport",
    "classify_commuting_pair",
    "dihedral_check",
    "enumerate_kgroup",
    "maximal_p_torsion_abelian",
    "structural_p_torsion",
    "TensorElement",
    "SymplecticVector",
    "symplectic_form",
    "is_isotropic",
    "structural_tensor_p_torsion",
    "HWElement",
    "PROOF",
    "DISPLAYED",
    "phi",
    "phi_local",
    "r_map",
    "p_map",
    "value_map_nu",
    "even_prime_counterexample",
    "MbqcSpec",
    "SiteSpec",
    "OutputTable",
    "MultivariatePoly",
    "ContextualityWitness",
    "measurement_op",
    "star_measurement_op",
    "ghz_evaluate",
    "output_table",
    "interpolate_poly",
    "contextuality_witness",
    "qudit_star_spec",
    "qubit_star_spec",
    "expected_star_outputs",
    "LCS",
    "GeneratorAssignment",
    "SolutionConditionReport",
    "MerminFixtures",
    "solve_classical",
    "check_classical",
    "check_solution_conditions",
    "commute_on_ghz",
    "lcs_from_mbqc",
    "reduce_to_classical",
    "measurement_family_report",
    "mermin_fixtures",
]
