"""The acceptance grid as a list of criteria, each producing a report."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .combinatorics import binomial
from .graph_theorems import verify_graph_theorem
from .incidence import (
    build_inclusion_matrix,
    computed_kernel_class,
    kernel_class,
    kneser_adjacency,
    wilson_diagonal,
    wilson_rank,
)
from .linalg import DiagonalSpec, diagonal_specs_equivalent, rank_mod_p, rank_rational, smith_normal_form
from .reconstruction import verify_main_theorem, verify_pouzet_lemma
from .report import Report, Route, Tally, aggregate
from .tournament_theorems import verify_tournament_theorem

PROFILES = ("quick", "full")


@dataclass(frozen=True)
class Limits:
    v_max: int
    snf_max_dim: int | None
    constructed_max: int


def limits(profile: str) -> Limits:
    if profile == "quick":
        return Limits(v_max=8, snf_max_dim=40, constructed_max=8)
    if profile == "full":
        return Limits(v_max=10, snf_max_dim=None, constructed_max=9)
    raise ValueError(f"unknown profile {profile!r}; choose from {', '.join(PROFILES)}")


def _grid(v_lo: int, v_hi: int, t_max: int):
    """``(v, t, k)`` with ``t <= min(k, v-k, t_max)``."""
    for v in range(v_lo, v_hi + 1):
        for k in range(v + 1):
            for t in range(min(k, v - k, t_max) + 1):
                yield v, t, k


def criterion_wilson_rank(lim: Limits) -> Report:
    tally = Tally()
    idx = 0
    for p in (2, 3, 5, 7):
        for v, t, k in _grid(0, min(lim.v_max, 10), 4):
            tally.bump("cases")
            got = rank_mod_p(build_inclusion_matrix(v, t, k).mod(p))
            want = wilson_rank(v, t, k, p)
            if got != want:
                tally.fail(idx, {"v": v, "t": t, "k": k, "p": p, "elimination": got, "wilson": want})
            idx += 1
    return tally.to_report("wilson-rank", {"v_max": min(lim.v_max, 10), "t_max": 4, "primes": [2, 3, 5, 7]}, Route.EXHAUSTIVE)


def criterion_rational_rank(lim: Limits) -> Report:
    tally = Tally()
    for idx, (v, t, k) in enumerate(_grid(0, min(lim.v_max, 10), 4)):
        tally.bump("cases")
        got = rank_rational(build_inclusion_matrix(v, t, k).integer)
        if got != binomial(v, t):
            tally.fail(idx, {"v": v, "t": t, "k": k, "rank": got, "expected": binomial(v, t)})
    return tally.to_report("rational-rank", {"v_max": min(lim.v_max, 10), "t_max": 4}, Route.EXHAUSTIVE)


def criterion_diagonal_form(lim: Limits) -> Report:
    tally = Tally()
    for idx, (v, t, k) in enumerate(_grid(0, min(lim.v_max, 8), 3)):
        rows, cols = binomial(v, t), binomial(v, k)
        if lim.snf_max_dim is not None and max(rows, cols) > lim.snf_max_dim:
            tally.bump("skipped_by_profile")
            continue
        tally.bump("cases")
        got = smith_normal_form(build_inclusion_matrix(v, t, k).integer)
        want = wilson_diagonal(v, t, k)
        if not diagonal_specs_equivalent(got, want):
            tally.fail(idx, {
                "v": v, "t": t, "k": k,
                "snf": [list(e) for e in got.entries], "wilson": [list(e) for e in want.entries],
            })
    params = {"v_max": min(lim.v_max, 8), "t_max": 3, "snf_max_dim": lim.snf_max_dim}
    return tally.to_report("diagonal-form", params, Route.EXHAUSTIVE)


def criterion_kernel_class(lim: Limits) -> Report:
    tally = Tally()
    idx = 0
    for p in (2, 3, 5):
        for v, t, k in _grid(0, min(lim.v_max, 9), 3):
            tally.bump("cases")
            want = kernel_class(t, k, p)
            got = computed_kernel_class(v, t, k, p)
            tally.bump(f"class:{got.tag.value}")
            if got.tag is not want:
                tally.fail(idx, {"v": v, "t": t, "k": k, "p": p, "predicted": want.value, "computed": got.tag.value})
            idx += 1
    return tally.to_report("kernel-class", {"v_max": min(lim.v_max, 9), "t_max": 3, "primes": [2, 3, 5]}, Route.EXHAUSTIVE)


def criterion_kneser(lim: Limits) -> Report:
    tally = Tally()
    idx = 0
    for v in range(0, min(lim.v_max, 10) + 1):
        for t in range(0, min(3, v // 2) + 1):
            tally.bump("cases")
            got = rank_rational(kneser_adjacency(t, v))
            if got != binomial(v, t):
                tally.fail(idx, {"v": v, "t": t, "rank": got, "expected": binomial(v, t)})
            idx += 1
    return tally.to_report("kneser-rank", {"v_max": min(lim.v_max, 10), "t_max": 3}, Route.EXHAUSTIVE)


def criterion_main_theorem(lim: Limits) -> Report:
    reports = [
        verify_main_theorem(5, 2, 3, 3, route="exhaustive"),
        verify_main_theorem(6, 2, 4, 2, route="exhaustive"),
        verify_main_theorem(5, 1, 2, 2, route="exhaustive"),
    ]
    return aggregate("main-theorem", {}, reports)


def criterion_pouzet(lim: Limits) -> Report:
    reports = [verify_pouzet_lemma(5, 1, 1, route="exhaustive"), verify_pouzet_lemma(5, 2, 1, route="exhaustive")]
    return aggregate("pouzet-lemma", {}, reports)


def criterion_graphs(lim: Limits) -> Report:
    reports = [verify_graph_theorem("thm-graph-1.5", 5, 2, 3, route="exhaustive")]
    for v in range(6, min(lim.v_max, 8) + 1):
        reports.append(verify_graph_theorem("thm-graph-1.4", v, 4, 2, route="kernel"))
        reports.append(verify_graph_theorem("thm-graph-1.5", v, 3, 3, route="kernel"))
        reports.append(verify_graph_theorem("thm-graph-1.5", v, 2, 2, route="kernel"))
    reports.append(verify_graph_theorem("thm-graph-1.5", 8, 6, 2, route="kernel"))
    reports.append(verify_graph_theorem("thm-graph-1.4", 6, 4, 2, route="sampled"))
    reports.append(verify_graph_theorem("thm-graph-1.5", 6, 3, 3, route="sampled"))
    reports.append(verify_graph_theorem("thm-graph-1.5", 6, 2, 2, route="sampled"))
    for v in (5, 6, 7):
        reports.append(verify_graph_theorem("claim-bipartite", v, 3))
    reports.append(verify_graph_theorem("claim-clawfree", 5, route="exhaustive"))
    reports.append(verify_graph_theorem("thm-graph-4.4", 5, 3, route="exhaustive"))
    reports.append(verify_graph_theorem("thm-graph-4.1", 6, 3, route="sampled"))
    reports.append(verify_graph_theorem("thm-graph-4.2", 8, 4, 2, route="kernel"))
    return aggregate("graph-theorems", {}, reports)


def criterion_tournaments(lim: Limits) -> Report:
    reports = [
        verify_tournament_theorem("thm-tournament-5.1", 5, 3, 3, route="exhaustive"),
        verify_tournament_theorem("lemma-hypomorphe", 5, route="exhaustive"),
        verify_tournament_theorem("claim-3hyp4hyp", 5, route="exhaustive"),
        verify_tournament_theorem("lemma-41", max_order=lim.constructed_max),
        verify_tournament_theorem("thm-tournament-5.2", 6, 3, route="sampled"),
    ]
    return aggregate("tournament-theorems", {}, reports)


def criterion_beyond_desk(lim: Limits) -> Report:
    """Statements out of exhaustive reach; their routes must not claim exhaustiveness."""
    reports = [
        verify_tournament_theorem("thm-tournament-5.3", 8, 4, 2),
        verify_tournament_theorem("thm-tournament-5.3", 8, 4, None),
        verify_graph_theorem("thm-graph-4.3", 7, 5, route="sampled"),
        verify_tournament_theorem("thm-beta6", max_order=lim.constructed_max),
    ]
    tally = Tally()
    for i, r in enumerate(reports):
        tally.bump(f"route:{r.route.value}")
        if r.route not in (Route.CONSTRUCTED, Route.SAMPLED):
            tally.fail(i, {"command": r.command, "route": r.route.value})
    reports.append(tally.to_report("route-labels", {}, Route.CONSTRUCTED))
    return aggregate("beyond-desk-scale", {}, reports)


CRITERIA: tuple[tuple[str, Callable[[Limits], Report]], ...] = (
    ("1", criterion_wilson_rank),
    ("2", criterion_rational_rank),
    ("3", criterion_diagonal_form),
    ("4", criterion_kernel_class),
    ("5", criterion_kneser),
    ("6", criterion_main_theorem),
    ("7", criterion_pouzet),
    ("8", criterion_graphs),
    ("9", criterion_tournaments),
    ("10", criterion_beyond_desk),
)


def _run_one(args: tuple[str, str, bool]) -> Report:
    name, profile, timing = args
    fn = dict(CRITERIA)[name]
    start = time.perf_counter()
    report = fn(limits(profile))
    if timing:
        report.ms = int((time.perf_counter() - start) * 1000)
    report.params = {"criterion": int(name), **report.params}
    return report


def run_criterion(name: str, profile: str = "quick", timing: bool = False) -> Report:
    return _run_one((name, profile, timing))


def run_suite(profile: str = "quick", threads: int = 1, timing: bool = False) -> Report:
    """Every criterion under ``profile``; sub-reports keep criterion order for any thread count."""
    limits(profile)
    jobs = [(name, profile, timing) for name, _ in CRITERIA]
    start = time.perf_counter()
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(_run_one, jobs))
    else:
        reports = [_run_one(j) for j in jobs]
    report = aggregate("suite", {"profile": profile}, reports)
    if timing:
        report.ms = int((time.perf_counter() - start) * 1000)
    return report


__all__ = ["CRITERIA", "PROFILES", "Limits", "limits", "run_criterion", "run_suite", "DiagonalSpec"]
