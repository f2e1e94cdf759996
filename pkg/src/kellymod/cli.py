"""Command-line front end: ``kellymod rank|kernel|diagonal|verify|suite``.

Exit codes: 0 pass, 1 counterexample found, 2 usage or precondition error,
3 resource cap.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Callable, Sequence

from .combinatorics import binomial, require_prime
from .errors import ParseError, PreconditionError, ResourceCapError
from .graph_theorems import GRAPH_THEOREMS, verify_graph_theorem
from .graphs import parse_graph
from .incidence import (
    build_inclusion_matrix,
    check_wilson_range,
    classify_basis,
    kernel_class,
    left_kernel,
    wilson_diagonal,
    wilson_rank,
)
from .linalg import diagonal_specs_equivalent, rank_mod_p, rank_rational, smith_normal_form
from .pair_checks import check_graph_pair, check_tournament_pair
from .reconstruction import verify_main_theorem, verify_pouzet_lemma
from .report import Report, Route, Tally
from .suite import PROFILES, run_suite
from .tournament_theorems import TOURNAMENT_THEOREMS, verify_tournament_theorem
from .tournaments import parse_tournament

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

CATALOGUE: tuple[str, ...] = ("thm-main", "lemma-pouzet", *GRAPH_THEOREMS, *TOURNAMENT_THEOREMS)


class UsageError(Exception):
    """Bad command-line input that argparse itself does not catch."""


def _params(**kw) -> dict:
    return {k: v for k, v in kw.items() if v is not None}


def cmd_rank(args: argparse.Namespace) -> Report:
    v, t, k, p = args.v, args.t, args.k, args.p
    check_wilson_range(v, t, k)
    W = build_inclusion_matrix(v, t, k)
    tally = Tally()
    data = {"rational": rank_rational(W.integer)}
    tally.bump("rational_is_full", int(data["rational"] == binomial(v, t)))
    if data["rational"] != binomial(v, t):
        tally.fail(0, {"kind": "rational-rank", "rank": data["rational"], "expected": binomial(v, t)})
    if p is not None:
        require_prime(p)
        data["wilson"] = wilson_rank(v, t, k, p)
        data["elimination"] = rank_mod_p(W.mod(p))
        data["kernel_dim"] = binomial(v, t) - data["elimination"]
        data["agree"] = data["wilson"] == data["elimination"]
        tally.bump("agree", int(data["agree"]))
        if not data["agree"]:
            tally.fail(1, {"kind": "wilson-rank", "wilson": data["wilson"], "elimination": data["elimination"]})
    report = tally.to_report("rank", _params(v=v, t=t, k=k, p=p), Route.KERNEL)
    report.data = data
    return report


def cmd_kernel(args: argparse.Namespace) -> Report:
    v, t, k, p = args.v, args.t, args.k, args.p
    require_prime(p)
    check_wilson_range(v, t, k)
    basis = left_kernel(v, t, k, p)
    computed = classify_basis(basis)
    predicted = kernel_class(t, k, p)
    tally = Tally()
    tally.bump("dim", computed.dim)
    tally.bump("match", int(predicted is computed.tag))
    if predicted is not computed.tag:
        tally.fail(0, {"predicted": predicted.value, "computed": computed.tag.value})
    report = tally.to_report("kernel", {"v": v, "t": t, "k": k, "p": p}, Route.KERNEL)
    report.data = {
        "basis": [list(b) for b in basis],
        "predicted": predicted.value,
        "computed": computed.tag.value,
    }
    return report


def cmd_diagonal(args: argparse.Namespace) -> Report:
    v, t, k = args.v, args.t, args.k
    check_wilson_range(v, t, k)
    snf = smith_normal_form(build_inclusion_matrix(v, t, k).integer)
    want = wilson_diagonal(v, t, k)
    tally = Tally()
    ok = diagonal_specs_equivalent(snf, want)
    tally.bump("match", int(ok))
    if not ok:
        tally.fail(0, {"snf": [list(e) for e in snf.entries], "wilson": [list(e) for e in want.entries]})
    report = tally.to_report("diagonal", {"v": v, "t": t, "k": k}, Route.KERNEL)
    report.data = {"snf": [list(e) for e in snf.entries], "wilson": [list(e) for e in want.entries]}
    return report


def _read(path: str, parse: Callable):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _need_args(args: argparse.Namespace, theorem: str, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{theorem} needs {' '.join(missing)}")


def cmd_verify(args: argparse.Namespace) -> Report:
    theorem = args.theorem
    if theorem not in CATALOGUE:
        raise UsageError(f"unknown statement {theorem!r}; catalogue:\n  " + "\n  ".join(CATALOGUE))
    sweep = {"route": args.route, "seed": args.seed, "sample": args.sample}
    if args.graph or args.graph2:
        _need_args(args, theorem, "graph", "graph2")
        g, g2 = _read(args.graph, parse_graph), _read(args.graph2, parse_graph)
        return check_graph_pair(theorem, g, g2, args.k, args.p)
    if args.tournament or args.tournament2:
        _need_args(args, theorem, "tournament", "tournament2")
        t, t2 = _read(args.tournament, parse_tournament), _read(args.tournament2, parse_tournament)
        return check_tournament_pair(theorem, t, t2, args.k, args.p)
    if theorem == "thm-main":
        _need_args(args, theorem, "v", "t", "k", "p")
        return verify_main_theorem(args.v, args.t, args.k, args.p, **sweep)
    if theorem == "lemma-pouzet":
        _need_args(args, theorem, "v", "t", "r")
        return verify_pouzet_lemma(args.v, args.t, args.r, **sweep)
    if theorem in GRAPH_THEOREMS:
        _need_args(args, theorem, "v")
        return verify_graph_theorem(theorem, args.v, args.k, args.p, **sweep)
    return verify_tournament_theorem(theorem, args.v, args.k, args.p, max_order=args.max_order, **sweep)


def cmd_suite(args: argparse.Namespace) -> Report:
    return run_suite(args.profile, threads=args.threads or os.cpu_count() or 1, timing=args.timing)


def _add_vtk(sp: argparse.ArgumentParser, p_required: bool | None) -> None:
    sp.add_argument("--v", type=int, required=True, help="ground set size")
    sp.add_argument("--t", type=int, required=True, help="row subset size")
    sp.add_argument("--k", type=int, required=True, help="column subset size")
    if p_required is not None:
        sp.add_argument("--p", type=int, required=p_required, help="prime modulus")


def _add_output(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--json", action="store_true", help="emit the JSON report")
    sp.add_argument("--timing", action="store_true", help="record wall time in ms (breaks byte-identical output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kellymod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("rank", help="Wilson rank, elimination rank and rational rank of W[t,k]")
    _add_vtk(sp, p_required=False)
    _add_output(sp)
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("kernel", help="left kernel of W[t,k] mod p with its predicted class")
    _add_vtk(sp, p_required=True)
    _add_output(sp)
    sp.set_defaults(func=cmd_kernel)

    sp = sub.add_parser("diagonal", help="Smith normal form of W[t,k] against the Wilson diagonal")
    _add_vtk(sp, p_required=None)
    _add_output(sp)
    sp.set_defaults(func=cmd_diagonal)

    sp = sub.add_parser("verify", help="verify a catalogued statement; 'verify list' prints the catalogue")
    sp.add_argument("theorem", help="statement id")
    for name in ("v", "t", "k", "p", "r"):
        sp.add_argument(f"--{name}", type=int)
    sp.add_argument("--route", choices=["auto", "exhaustive", "sampled", "kernel", "constructed"])
    sp.add_argument("--seed", type=int, help="sampling seed")
    sp.add_argument("--sample", type=int, help="sample size")
    sp.add_argument("--max-order", type=int, dest="max_order", help="largest constructed instance")
    for name in ("graph", "graph2", "tournament", "tournament2"):
        sp.add_argument(f"--{name}", metavar="PATH")
    _add_output(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("suite", help="run the acceptance grid")
    sp.add_argument("--profile", choices=PROFILES, default="quick")
    sp.add_argument("--threads", type=int, help="worker processes (default: CPU count)")
    _add_output(sp)
    sp.set_defaults(func=cmd_suite)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify" and args.theorem == "list":
        print("\n".join(CATALOGUE))
        return EXIT_PASS
    start = time.perf_counter()
    try:
        report = args.func(args)
    except ResourceCapError as exc:
        print(f"kellymod: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, PreconditionError, ParseError, ValueError) as exc:
        print(f"kellymod: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing and not report.ms:
        report.ms = int((time.perf_counter() - start) * 1000)
    print(report.to_json() if args.json else report.to_text())
    if not report.passed:
        print("kellymod: COUNTEREXAMPLE FOUND; this falsifies the run, check the implementation", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
