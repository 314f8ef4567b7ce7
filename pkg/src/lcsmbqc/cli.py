"""Command-line entry point: demos, verification suites, computation runs,
and constraint-system utilities.

Reports are JSON (sorted keys, no timestamps) so identical configurations
produce identical bytes; tables are CSV.  Exit codes: 0 all verdicts hold,
1 a property or expected verdict failed, 2 usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Optional, Sequence

from . import verify
from .errors import BudgetExceededError, EvenPrimeError
from .kgroup import maximal_p_torsion_abelian
from .lcs import (
    GeneratorAssignment,
    LCS,
    check_classical,
    check_solution_conditions,
    lcs_from_mbqc,
    measurement_family_report,
    mermin_fixtures,
    reduce_to_classical,
    solve_classical,
)
from .mbqc import (
    MbqcSpec,
    contextuality_witness,
    expected_star_outputs,
    output_table,
    qubit_star_spec,
    qudit_star_spec,
)
from .projection import PROOF, VARIANTS, phi
from .ktensor import TensorElement

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _emit(report: dict, out: Optional[str]) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)


def _write_table_csv(table, path_or_stdout: Optional[str]) -> None:
    rows = [
        [*inputs, "" if o is None else o, det]
        for inputs, o, det in zip(table.inputs(), table.outputs, table.deterministic)
    ]
    header = [f"i_{k + 1}" for k in range(table.n_inputs)] + ["o", "deterministic"]
    if path_or_stdout:
        with open(path_or_stdout, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(header)
        writer.writerows(rows)


def _load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _load_assignment(path: str) -> GeneratorAssignment:
    data = _load_json(path)
    if isinstance(data, dict) and "generators" in data:
        return GeneratorAssignment.from_json(data)
    # also accept a plain {index: tensor} map with J defaulted
    items = sorted(data.items(), key=lambda kv: int(kv[0]))
    gens = [TensorElement.from_json(v) for _, v in items]
    return GeneratorAssignment.with_default_j(gens)


# ---------------------------------------------------------------------------
# demos
# ---------------------------------------------------------------------------


def cmd_demo(args) -> int:
    name = args.name
    if name == "mermin-square":
        fixtures = mermin_fixtures()
        classical = solve_classical(fixtures.square)
        report = check_solution_conditions(fixtures.square, fixtures.square_assignment)
        summary = {
            "demo": name,
            "classical_solution": classical,
            "conditions": {
                "torsion": report.torsion,
                "commutativity": report.commutativity,
                "constraints": report.constraints,
            },
            "quantum_solution": report.is_quantum_solution,
        }
        print(f"classical: {'NONE' if classical is None else classical}, "
              f"quantum: {'PASS' if report.is_quantum_solution else 'FAIL'}")
        _emit(summary, args.out)
        return EXIT_OK if classical is None and report.is_quantum_solution else EXIT_FAIL

    if name == "mermin-star":
        spec = qubit_star_spec()
        table = output_table(spec)
        fixtures = mermin_fixtures()
        simulated = lcs_from_mbqc(spec, table)
        witness = contextuality_witness(table)
        summary = {
            "demo": name,
            "outputs": list(table.outputs),
            "deterministic": all(table.deterministic),
            "degree": witness.degree,
            "contextual": witness.contextual,
            "classical_solution_simulated": solve_classical(simulated),
            "classical_solution_fixture": solve_classical(fixtures.star),
        }
        ok = (
            summary["deterministic"]
            and summary["contextual"]
            and summary["classical_solution_simulated"] is None
            and summary["classical_solution_fixture"] is None
        )
        print(f"outputs: {list(table.outputs)}, degree: {witness.degree}, "
              f"classical: {'NONE' if ok else 'CHECK'}")
        _emit(summary, args.out)
        return EXIT_OK if ok else EXIT_FAIL

    if name == "qudit-star":
        p = args.p or 3
        try:
            spec = qudit_star_spec(p)
        except (EvenPrimeError, ValueError) as exc:
            print(f"qudit star requires an odd prime: {exc}", file=sys.stderr)
            return EXIT_USAGE
        table = output_table(spec)
        witness = contextuality_witness(table)
        family = measurement_family_report(spec, table)
        summary = {
            "demo": name,
            "p": p,
            "outputs": list(table.outputs),
            "matches_closed_form": table.outputs == expected_star_outputs(p),
            "degree": witness.degree,
            "contextual": witness.contextual,
            "family": {
                "all_torsion": family.all_torsion,
                "ghz_rows_match_outputs": family.ghz_rows_match_outputs,
                "all_pairs_commute_on_ghz": family.all_pairs_commute_on_ghz,
                "exact_commutativity": family.exact_commutativity,
                "noncommuting_pair": family.noncommuting_pair,
            },
        }
        ok = (
            summary["matches_closed_form"]
            and witness.contextual
            and family.all_torsion
            and family.ghz_rows_match_outputs
            and family.all_pairs_commute_on_ghz
            and not family.exact_commutativity
        )
        print(f"p={p}: degree {witness.degree} -> "
              f"{'contextual' if witness.contextual else 'not contextual'}")
        _emit(summary, args.out)
        return EXIT_OK if ok else EXIT_FAIL

    print(f"unknown demo {name!r}", file=sys.stderr)
    return EXIT_USAGE


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    kwargs = {}
    if args.suite in ("lemma1", "torsion", "commuting-pairs", "decomposition",
                      "phi", "symplectic"):
        if args.p:
            kwargs["p"] = args.p
        if args.m:
            kwargs["m"] = args.m
    if args.suite == "subgroups":
        kwargs["p"] = args.p or 3
        kwargs["m"] = args.m or 2
        if args.budget:
            kwargs["budget"] = args.budget
    if args.suite == "phi":
        if args.n:
            kwargs["n"] = args.n
        kwargs["variant"] = args.variant
    if args.suite in ("phi", "symplectic", "decomposition", "pipeline"):
        if args.seed is not None:
            kwargs["seed"] = args.seed
    if args.suite in ("phi", "symplectic"):
        if args.samples:
            kwargs["samples"] = args.samples

    suite_fn = verify.SUITES.get(args.suite)
    if suite_fn is None:
        print(f"unknown suite {args.suite!r}", file=sys.stderr)
        return EXIT_USAGE
    report = suite_fn(**kwargs)
    _emit(report.to_json(), args.out)
    for check in report.checks:
        mark = "PASS" if check.passed else "FAIL"
        print(f"[{mark}] {check.name} ({check.count} checks) {check.detail}".rstrip())
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# mbqc
# ---------------------------------------------------------------------------


def cmd_mbqc(args) -> int:
    if args.mbqc_command == "run":
        spec = MbqcSpec.from_json(_load_json(args.spec))
    elif args.mbqc_command == "demo":
        if args.name == "qudit-star":
            try:
                spec = qudit_star_spec(args.p or 3)
            except (EvenPrimeError, ValueError) as exc:
                print(f"qudit star requires an odd prime: {exc}", file=sys.stderr)
                return EXIT_USAGE
        elif args.name == "qubit-star":
            spec = qubit_star_spec()
        else:
            print(f"unknown computation demo {args.name!r}", file=sys.stderr)
            return EXIT_USAGE
    else:
        return EXIT_USAGE
    table = output_table(spec)
    _write_table_csv(table, args.out)
    return EXIT_OK if table.is_fully_deterministic else EXIT_FAIL


# ---------------------------------------------------------------------------
# lcs
# ---------------------------------------------------------------------------


def cmd_lcs(args) -> int:
    if args.lcs_command == "from-mbqc":
        spec = MbqcSpec.from_json(_load_json(args.spec))
        system = lcs_from_mbqc(spec, output_table(spec))
        _emit(system.to_json(), args.out)
        return EXIT_OK

    system = LCS.from_json(_load_json(args.lcs))
    if args.lcs_command == "solve":
        solution = solve_classical(system)
        _emit({"solution": solution}, args.out)
        print("NONE" if solution is None else ",".join(map(str, solution)))
        return EXIT_OK

    if args.lcs_command == "check":
        if args.x is not None:
            x = tuple(int(v) for v in args.x.split(","))
            ok = check_classical(system, x)
            _emit({"classical_check": ok}, args.out)
            return EXIT_OK if ok else EXIT_FAIL
        assignment = _load_assignment(args.assignment)
        report = check_solution_conditions(system, assignment)
        _emit(
            {
                "torsion": report.torsion,
                "commutativity": report.commutativity,
                "constraints": report.constraints,
                "operator_solution": report.is_operator_solution,
                "quantum_solution": report.is_quantum_solution,
                "torsion_failures": list(report.torsion_failures),
                "commuting_failures": [list(x) for x in report.commuting_failures],
                "constraint_failures": list(report.constraint_failures),
            },
            args.out,
        )
        return EXIT_OK if report.is_quantum_solution else EXIT_FAIL

    if args.lcs_command == "reduce":
        assignment = _load_assignment(args.assignment)
        try:
            x = reduce_to_classical(system, assignment, args.variant)
        except (EvenPrimeError, ValueError) as exc:
            print(f"reduction failed: {exc}", file=sys.stderr)
            return EXIT_FAIL
        _emit({"solution": list(x), "verified": check_classical(system, x)}, args.out)
        return EXIT_OK

    return EXIT_USAGE


# ---------------------------------------------------------------------------
# phi / subgroups
# ---------------------------------------------------------------------------


def cmd_phi(args) -> int:
    data = _load_json(args.tensor) if args.tensor else json.load(sys.stdin)
    element = TensorElement.from_json(data)
    image = phi(element, args.variant)
    _emit(image.to_json(), args.out)
    return EXIT_OK


def cmd_subgroups(args) -> int:
    report = maximal_p_torsion_abelian(args.p, args.m, args.budget)
    summary = {
        "p": args.p,
        "m": args.m,
        "subgroup_count": len(report.subgroups),
        "kinds": list(report.kinds),
        "orders": [len(s) for s in report.subgroups],
        "intersections_equal_center": report.intersections_equal_center,
        "center_order": len(report.center),
    }
    _emit(summary, args.out)
    print(
        f"{len(report.subgroups)} maximal p-torsion abelian subgroups "
        f"({report.torus_count} torus, {report.shift_count} center-and-shift); "
        f"pairwise intersections == center: {report.intersections_equal_center}"
    )
    ok = report.intersections_equal_center and all(k != "other" for k in report.kinds)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcsmbqc",
        description="exact measurement-operator groups, GHZ computations, and "
        "linear constraint systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    demo = sub.add_parser("demo", help="run a named fixture end to end")
    demo.add_argument("name", choices=("mermin-square", "mermin-star", "qudit-star"))
    demo.add_argument("--p", type=int, default=None)
    demo.add_argument("--out", default=None)
    demo.set_defaults(func=cmd_demo)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("suite", choices=sorted(verify.SUITES))
    ver.add_argument("--p", type=int, default=None)
    ver.add_argument("--m", type=int, default=None)
    ver.add_argument("--n", type=int, default=None)
    ver.add_argument("--variant", choices=VARIANTS, default=PROOF)
    ver.add_argument("--samples", type=int, default=None)
    ver.add_argument("--seed", type=int, default=None)
    ver.add_argument("--budget", type=int, default=None)
    ver.add_argument("--out", default=None)
    ver.set_defaults(func=cmd_verify)

    mbqc_cmd = sub.add_parser("mbqc", help="simulate a computation")
    mbqc_sub = mbqc_cmd.add_subparsers(dest="mbqc_command", required=True)
    run = mbqc_sub.add_parser("run")
    run.add_argument("--spec", required=True)
    run.add_argument("--out", default=None)
    run.set_defaults(func=cmd_mbqc)
    mdemo = mbqc_sub.add_parser("demo")
    mdemo.add_argument("name", choices=("qudit-star", "qubit-star"))
    mdemo.add_argument("--p", type=int, default=None)
    mdemo.add_argument("--out", default=None)
    mdemo.set_defaults(func=cmd_mbqc)

    lcs_cmd = sub.add_parser("lcs", help="constraint-system utilities")
    lcs_sub = lcs_cmd.add_subparsers(dest="lcs_command", required=True)
    solve = lcs_sub.add_parser("solve")
    solve.add_argument("--lcs", required=True)
    solve.add_argument("--out", default=None)
    solve.set_defaults(func=cmd_lcs)
    check = lcs_sub.add_parser("check")
    check.add_argument("--lcs", required=True)
    check.add_argument("--x", default=None)
    check.add_argument("--assignment", default=None)
    check.add_argument("--out", default=None)
    check.set_defaults(func=cmd_lcs)
    from_mbqc = lcs_sub.add_parser("from-mbqc")
    from_mbqc.add_argument("--spec", required=True)
    from_mbqc.add_argument("--out", default=None)
    from_mbqc.set_defaults(func=cmd_lcs)
    reduce_cmd = lcs_sub.add_parser("reduce")
    reduce_cmd.add_argument("--lcs", required=True)
    reduce_cmd.add_argument("--assignment", required=True)
    reduce_cmd.add_argument("--variant", choices=VARIANTS, default=PROOF)
    reduce_cmd.add_argument("--out", default=None)
    reduce_cmd.set_defaults(func=cmd_lcs)

    phi_cmd = sub.add_parser("phi", help="project a tensor into normal form")
    phi_cmd.add_argument("--variant", choices=VARIANTS, default=PROOF)
    phi_cmd.add_argument("--tensor", default=None, help="JSON file; stdin if omitted")
    phi_cmd.add_argument("--out", default=None)
    phi_cmd.set_defaults(func=cmd_phi)

    subgroups = sub.add_parser("subgroups", help="classify maximal torsion abelian subgroups")
    subgroups.add_argument("--p", type=int, required=True)
    subgroups.add_argument("--m", type=int, required=True)
    subgroups.add_argument("--budget", type=int, default=None)
    subgroups.add_argument("--out", default=None)
    subgroups.set_defaults(func=cmd_subgroups)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if (
        getattr(args, "lcs_command", None) == "check"
        and args.x is None
        and args.assignment is None
    ):
        parser.error("lcs check needs --x or --assignment")
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"missing input file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
