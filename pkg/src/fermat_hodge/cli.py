"""Command-line interface: computations, persistent cache, table export.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 incomplete or budget-truncated result.
"""

from __future__ import annotations

import argparse
import json
import sys
from multiprocessing import Pool

from .budget import DEFAULT_MAX_CANDIDATES, DEFAULT_MAX_SECONDS, SearchBudget
from .cache import SCHEMA_VERSION, ResultCache
from .characters import enumerate_hodge_labels
from .cycles import (
    COUNTEREXAMPLE_33,
    ConditionReport,
    check_condition,
    is_quasi_decomposable,
    newton_identity_check,
    standard_elements,
    verdict as cycles_verdict,
)
from .errors import (
    BudgetExceededError,
    IncompleteBasisError,
    InvalidModulusError,
)
from .cycles import LevelPool
from .hilbert import hilbert_basis, is_decomposable
from .monoid import enumerate_level, format_vector, is_member

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INCOMPLETE = 3


def _budget(args) -> SearchBudget:
    return SearchBudget(
        max_seconds=args.max_seconds, max_candidates=args.max_candidates
    )


def _cache(args) -> ResultCache:
    return ResultCache(args.cache_dir)


def _cached_basis(m, cache, budget):
    basis = cache.get_basis(m)
    if basis is None:
        basis = hilbert_basis(m, budget=budget)
        cache.put_basis(basis)
    return basis


def _cached_level(m, y, cache):
    vectors = cache.get_level(m, y)
    if vectors is None:
        vectors = enumerate_level(m, y)
        cache.put_level(m, y, vectors)
    return vectors


def _basis_payload(basis) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "m": basis.m,
        "algorithm": basis.algorithm,
        "complete": basis.complete,
        "max_level_seen": basis.max_level_seen,
        "elements": [format_vector(v) for v in basis.elements],
    }


def cmd_basis(args) -> int:
    budget = _budget(args)
    cache = _cache(args)
    if args.algorithm == "completion" and args.max_level is None:
        basis = _cached_basis(args.m, cache, budget)
    else:
        basis = hilbert_basis(
            args.m,
            max_level=args.max_level,
            algorithm=args.algorithm,
            budget=budget,
        )
        cache.put_basis(basis)
    if args.format == "json":
        print(json.dumps(_basis_payload(basis), sort_keys=True, indent=1))
    else:
        print(
            f"m={basis.m} algorithm={basis.algorithm} "
            f"complete={str(basis.complete).lower()} "
            f"max_level={basis.max_element_level} elements={len(basis.elements)}"
        )
        for v in basis.elements:
            print(format_vector(v))
    return EXIT_OK if basis.complete else EXIT_INCOMPLETE


def cmd_phi(args) -> int:
    basis = _cached_basis(args.m, _cache(args), _budget(args))
    if not basis.complete:
        print(
            f"phi({args.m}) >= {basis.max_element_level} complete=false",
            file=sys.stdout,
        )
        return EXIT_INCOMPLETE
    print(f"phi({args.m}) = {basis.max_element_level} complete=true")
    return EXIT_OK


def cmd_phi_table(args) -> int:
    if args.m_from < 2 or args.m_from > args.m_to:
        print(f"invalid range {args.m_from}..{args.m_to}", file=sys.stderr)
        return EXIT_USAGE
    cache = _cache(args)
    rows = []
    any_incomplete = False
    for m in range(args.m_from, args.m_to + 1):
        basis = _cached_basis(m, cache, _budget(args))
        rows.append((m, basis.max_element_level, basis.complete))
        any_incomplete |= not basis.complete
    if args.format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "rows": [
                {"m": m, "phi": phi_val, "complete": complete}
                for m, phi_val, complete in rows
            ],
        }
        print(json.dumps(payload, sort_keys=True, indent=1))
    else:
        print("m,phi,complete")
        for m, phi_val, complete in rows:
            print(f"{m},{phi_val},{str(complete).lower()}")
    return EXIT_INCOMPLETE if any_incomplete else EXIT_OK


def _report_lines(report: ConditionReport) -> list[str]:
    counts = report.counts
    lines = [
        f"m={report.m} n={'all' if report.n is None else report.n} "
        f"exclude_standard={str(report.exclude_standard).lower()} "
        f"verdict={str(report.verdict).lower()} "
        f"complete={str(report.complete).lower()} "
        f"checked={len(report.outcomes)} quasi={counts['QUASI']} "
        f"standard={counts['STANDARD']} fail={counts['FAIL']} "
        f"standard_set={report.standard_count}"
    ]
    for o in report.outcomes:
        if o.kind == "QUASI":
            w = o.witness
            lines.append(
                f"QUASI {format_vector(o.element)} b={format_vector(w.b)} "
                f"c={format_vector(w.c)} d={format_vector(w.d)}"
            )
        elif o.kind == "STANDARD":
            p = o.provenance
            lines.append(
                f"STANDARD {format_vector(o.element)} p={p.p} i={p.i} "
                f"doubled={str(p.doubled).lower()}"
            )
        else:
            lines.append(f"FAIL {format_vector(o.element)}")
    return lines


def _report_payload(report: ConditionReport) -> dict:
    counts = report.counts
    outcomes = []
    for o in report.outcomes:
        item = {"element": format_vector(o.element), "kind": o.kind}
        if o.witness is not None:
            item["witness"] = {
                "b": format_vector(o.witness.b),
                "c": format_vector(o.witness.c),
                "d": format_vector(o.witness.d),
            }
        if o.provenance is not None:
            item["provenance"] = {
                "p": o.provenance.p,
                "i": o.provenance.i,
                "doubled": o.provenance.doubled,
            }
        outcomes.append(item)
    return {
        "schema_version": SCHEMA_VERSION,
        "m": report.m,
        "n": report.n,
        "exclude_standard": report.exclude_standard,
        "verdict": report.verdict,
        "complete": report.complete,
        "counts": counts,
        "standard_set": report.standard_count,
        "outcomes": outcomes,
    }


def _cached_report(m, n, exclude_standard, cache, budget) -> ConditionReport:
    report = cache.get_report(m, n, exclude_standard)
    if report is None:
        basis = cache.get_basis(m) if n is None else None
        report = check_condition(
            m, n=n, exclude_standard=exclude_standard, budget=budget, basis=basis
        )
        cache.put_report(report)
    return report


def cmd_check(args) -> int:
    cache = _cache(args)
    try:
        report = _cached_report(
            args.m, args.n, args.exclude_standard, cache, _budget(args)
        )
    except (IncompleteBasisError, BudgetExceededError) as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    if args.format == "json":
        print(json.dumps(_report_payload(report), sort_keys=True, indent=1))
    else:
        for line in _report_lines(report):
            print(line)
    return EXIT_OK if report.complete else EXIT_INCOMPLETE


def _scan_single(job) -> dict:
    m, n_max_seconds, n_max_candidates = job
    budget = SearchBudget(max_seconds=n_max_seconds, max_candidates=n_max_candidates)
    try:
        report = check_condition(m, n=4, exclude_standard=True, budget=budget)
        return _report_payload(report)
    except (BudgetExceededError, IncompleteBasisError):
        return {
            "schema_version": SCHEMA_VERSION,
            "m": m,
            "n": 4,
            "exclude_standard": True,
            "verdict": True,
            "complete": False,
            "counts": {"QUASI": 0, "STANDARD": 0, "FAIL": 0},
            "standard_set": 0,
            "outcomes": [],
        }


def cmd_scan_fourfolds(args) -> int:
    if args.m_from < 2 or args.m_from > args.m_to:
        print(f"invalid range {args.m_from}..{args.m_to}", file=sys.stderr)
        return EXIT_USAGE
    from math import gcd

    degrees = [
        m
        for m in range(args.m_from, args.m_to + 1)
        if args.coprime_to is None or gcd(m, args.coprime_to) == 1
    ]
    jobs = [(m, args.max_seconds, args.max_candidates) for m in degrees]
    if args.jobs > 1 and len(jobs) > 1:
        with Pool(processes=args.jobs) as pool:
            payloads = pool.map(_scan_single, jobs)
    else:
        payloads = [_scan_single(job) for job in jobs]
    failures = []
    incomplete = []
    for payload in payloads:
        counts = payload["counts"]
        print(
            f"m={payload['m']} verdict={str(payload['verdict']).lower()} "
            f"complete={str(payload['complete']).lower()} "
            f"checked={len(payload['outcomes'])} quasi={counts['QUASI']} "
            f"standard={counts['STANDARD']} fail={counts['FAIL']}"
        )
        if not payload["verdict"]:
            failures.append(payload["m"])
        if not payload["complete"]:
            incomplete.append(payload["m"])
    if failures:
        print(f"summary: {len(payloads)} degrees, failures at {failures}")
    else:
        print(f"summary: {len(payloads)} degrees, all conditions hold")
    if incomplete:
        print(f"summary: incomplete at {incomplete}")
        return EXIT_INCOMPLETE
    return EXIT_OK


def cmd_hodge(args) -> int:
    labels = enumerate_hodge_labels(args.m, args.n, expand_permutations=args.expand)
    if args.format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "m": args.m,
            "n": args.n,
            "labels": [",".join(str(a) for a in lab.entries) for lab in labels],
        }
        print(json.dumps(payload, sort_keys=True, indent=1))
    else:
        print(f"m={args.m} n={args.n} labels={len(labels)}")
        for lab in labels:
            print(",".join(str(a) for a in lab.entries))
    return EXIT_OK


def cmd_verdict(args) -> int:
    report = cycles_verdict(args.m, args.n, budget=_budget(args))
    print(
        f"m={report.m} n={report.n} status={report.status.value} "
        f"justification={report.justification}"
    )
    return EXIT_OK


def cmd_verify_33(args) -> int:
    cache = _cache(args)
    failures = []
    x = COUNTEREXAMPLE_33
    member = is_member(x, 33)
    print(f"membership: {'confirmed' if member else 'FAILED'}")
    if not member:
        failures.append("membership")
    indec = member and is_decomposable(x, 33) is None
    print(f"indecomposable: {'confirmed' if indec else 'FAILED'}")
    if not indec:
        failures.append("indecomposable")
    non_standard = x not in standard_elements(33)
    print(f"non-standard: {'confirmed' if non_standard else 'FAILED'}")
    if not non_standard:
        failures.append("non-standard")
    pool = LevelPool(m=33, levels={y: tuple(_cached_level(33, y, cache)) for y in (1, 2, 3)})
    not_quasi = member and is_quasi_decomposable(x, 33, pool.levels[1], pool) is None
    print(f"not-quasi-decomposable: {'confirmed' if not_quasi else 'FAILED'}")
    if not not_quasi:
        failures.append("not-quasi-decomposable")
    return EXIT_OK if not failures else EXIT_VERIFY_FAILED


def cmd_newton(args) -> int:
    passed = newton_identity_check(args.d, args.trials, args.seed)
    print(
        f"d={args.d} trials={args.trials} seed={args.seed} "
        f"passed={str(passed).lower()}"
    )
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def _add_common(sub, with_format=None) -> None:
    sub.add_argument("--cache-dir", default=None, help="cache directory")
    sub.add_argument(
        "--max-seconds", type=float, default=DEFAULT_MAX_SECONDS,
        help="wall-clock budget per computation",
    )
    sub.add_argument(
        "--max-candidates", type=int, default=DEFAULT_MAX_CANDIDATES,
        help="candidate budget per computation",
    )
    if with_format:
        sub.add_argument("--format", choices=with_format, default=with_format[0])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermat-hodge",
        description=(
            "Combinatorics of Hodge classes on Fermat varieties: the "
            "residue-count monoid, its indecomposable elements, and the "
            "quasi-decomposability checks behind the conjecture verdicts."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("basis", help="indecomposable elements for a degree")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--algorithm", choices=["completion", "levelwise"],
                   default="completion")
    p.add_argument("--max-level", type=int, default=None)
    _add_common(p, with_format=["text", "json"])
    p.set_defaults(func=cmd_basis)

    p = subs.add_parser("phi", help="maximum level among the indecomposables")
    p.add_argument("--m", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_phi)

    p = subs.add_parser("phi-table", help="phi over a degree range")
    p.add_argument("--from", dest="m_from", type=int, required=True)
    p.add_argument("--to", dest="m_to", type=int, required=True)
    _add_common(p, with_format=["csv", "json"])
    p.set_defaults(func=cmd_phi_table)

    p = subs.add_parser("check", help="level-range quasi-decomposability report")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--exclude-standard", action="store_true")
    _add_common(p, with_format=["text", "json"])
    p.set_defaults(func=cmd_check)

    p = subs.add_parser("scan-fourfolds", help="fourfold condition over a range")
    p.add_argument("--from", dest="m_from", type=int, required=True)
    p.add_argument("--to", dest="m_to", type=int, required=True)
    p.add_argument("--coprime-to", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_scan_fourfolds)

    p = subs.add_parser("hodge", help="Hodge labels for a degree and dimension")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--expand", action="store_true",
                   help="list every permutation, not just sorted representatives")
    _add_common(p, with_format=["text", "json"])
    p.set_defaults(func=cmd_hodge)

    p = subs.add_parser("verdict", help="Hodge-conjecture status for (m, n)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_verdict)

    p = subs.add_parser("verify-33", help="recheck the degree-33 counterexample")
    _add_common(p)
    p.set_defaults(func=cmd_verify_33)

    p = subs.add_parser("newton", help="seeded power-sum identity check")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=cmd_newton)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except InvalidModulusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceededError, IncompleteBasisError) as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE


if __name__ == "__main__":
    raise SystemExit(main())
