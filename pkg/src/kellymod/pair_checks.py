"""Check one statement on one user-supplied pair of graphs or tournaments.

Each check evaluates the statement's hypothesis on the pair and, when it
holds, the conclusion. A pair that meets the hypothesis but misses the
conclusion is reported as a counterexample.
"""

from __future__ import annotations

from typing import Callable

from .combinatorics import binomial, require_prime
from .errors import PreconditionError
from .graph_theorems import GRAPH_THEOREMS, _need, _part_1_5, _part_4_1, _part_4_2
from .graphs import Graph, full_pairs, homogeneous_bits, is_claw_free, p4_bits, serialize_graph
from .incidence import build_inclusion_matrix
from .report import Report, Route, Tally
from .tournament_theorems import TOURNAMENT_THEOREMS, _check_difference_class
from .tournaments import (
    Tournament,
    beta6_bits,
    cycle3_bits,
    diamond_bits,
    difference_classes,
    is_hereditarily_isomorphic,
    is_le_k_hypomorphic,
    serialize_tournament,
)


def _counts_related(v: int, t: int, k: int, p: int | None) -> Callable[[int, int], bool]:
    """Whether two ``t``-families have equal (or congruent mod ``p``) counts on every ``k``-set."""
    cols = build_inclusion_matrix(v, t, k).col_bits
    if p is None:
        return lambda a, b: all((a & c).bit_count() == (b & c).bit_count() for c in cols)
    return lambda a, b: all(((a & c).bit_count() - (b & c).bit_count()) % p == 0 for c in cols)


def _report(command: str, params: dict, hypothesis: bool, conclusion: bool | None, payload: dict) -> Report:
    tally = Tally()
    tally.bump("hypothesis_holds", int(hypothesis))
    if hypothesis:
        tally.bump("conclusion_holds", int(bool(conclusion)))
        if not conclusion:
            tally.fail(0, payload)
    return tally.to_report(command, params, Route.CONSTRUCTED)


def check_graph_pair(theorem: str, g: Graph, g2: Graph, k: int | None = None, p: int | None = None) -> Report:
    if theorem not in GRAPH_THEOREMS or theorem in ("claim-bipartite", "kelly-identity"):
        raise PreconditionError(f"{theorem} does not take a pair of graphs")
    _need(g.v == g2.v, f"graphs have different vertex counts {g.v} and {g2.v}")
    v = g.v
    full = full_pairs(v)
    if theorem != "claim-clawfree":
        _need(k is not None, f"{theorem} needs --k")
    if p is not None:
        require_prime(p)
    if theorem in ("thm-graph-1.4", "thm-graph-1.5"):
        _need(2 <= k <= v - 2, f"requires 2 <= k <= v-2; got v={v}, k={k}")
        if theorem == "thm-graph-1.4":
            p = 2 if p is None else p
            _need(p == 2 and k % 4 == 0, f"requires p=2 and k = 0 mod 4; got k={k}, p={p}")
            allowed = {g.edges, g.edges ^ full}
        else:
            _need(p is not None, f"{theorem} needs --p")
            part = _part_1_5(k, p)
            allowed = {g.edges}
            if part == 2 and g.edges in (0, full):
                allowed.add(g.edges ^ full)
        hyp = _counts_related(v, 2, k, p)(g.edges, g2.edges)
        concl = g2.edges in allowed
    elif theorem == "thm-graph-4.1":
        _need(3 <= k <= v - 3, f"requires 3 <= k <= v-3; got v={v}, k={k}")
        _part_4_1(k, p)
        a, b = homogeneous_bits(g.edges, v), homogeneous_bits(g2.edges, v)
        hyp = _counts_related(v, 3, k, p)(a, b)
        concl = a == b
    elif theorem == "thm-graph-4.2":
        _need(4 <= k <= v - 4, f"requires 4 <= k <= v-4; got v={v}, k={k}")
        part = _part_4_2(k, p)
        a, b = p4_bits(g.edges, v), p4_bits(g2.edges, v)
        hyp = _counts_related(v, 4, k, p)(a, b)
        concl = a == b or (part == "2c" and a ^ b == (1 << binomial(v, 4)) - 1)
    elif theorem in ("thm-graph-4.3", "thm-graph-4.4"):
        lo = 5 if theorem == "thm-graph-4.3" else 3
        r = 1 if theorem == "thm-graph-4.3" else 3
        _need(lo <= k <= v - 2 and k % 4 == r, f"requires {lo} <= k <= v-2 and k = {r} mod 4; got v={v}, k={k}")
        hyp = _counts_related(v, 2, k, 2)(g.edges, g2.edges) and homogeneous_bits(g.edges, v) == homogeneous_bits(g2.edges, v)
        concl = g2.edges in ({g.edges, g.edges ^ full} if r == 1 else {g.edges})
    else:
        hyp = homogeneous_bits(g.edges, v) == homogeneous_bits(g2.edges, v)
        concl = is_claw_free(Graph(v, g.edges ^ g2.edges))
    params = {n: x for n, x in (("v", v), ("k", k), ("p", p)) if x is not None}
    payload = {"G": serialize_graph(g), "G2": serialize_graph(g2)}
    return _report(theorem, params, hyp, concl, payload)


def check_tournament_pair(
    theorem: str, t: Tournament, t2: Tournament, k: int | None = None, p: int | None = None
) -> Report:
    if theorem not in TOURNAMENT_THEOREMS:
        raise PreconditionError(f"{theorem} does not take a pair of tournaments")
    _need(t.v == t2.v, f"tournaments have different vertex counts {t.v} and {t2.v}")
    v = t.v
    if p is not None:
        require_prime(p)
    if theorem == "thm-tournament-5.1":
        _need(k is not None and p is not None, f"{theorem} needs --k and --p")
        _need(2 <= k <= v - 2, f"requires 2 <= k <= v-2; got v={v}, k={k}")
        dual_ok = (p == 2 and k % 4 == 0) or _part_1_5(k, p) == 2
        hyp = _counts_related(v, 2, k, p)(t.arcs ^ t2.arcs, 0)
        concl = t2.arcs == t.arcs or (dual_ok and t2.arcs == t.arcs ^ full_pairs(v))
    elif theorem == "thm-tournament-5.2":
        _need(k is not None, f"{theorem} needs --k")
        _need(3 <= k <= v - 3, f"requires 3 <= k <= v-3; got v={v}, k={k}")
        _part_4_1(k, p)
        a, b = cycle3_bits(t.arcs, v), cycle3_bits(t2.arcs, v)
        hyp = _counts_related(v, 3, k, p)(a, b)
        concl = a == b
    elif theorem == "thm-tournament-5.3":
        _need(k is not None, f"{theorem} needs --k")
        _need(4 <= k <= v - 4, f"requires 4 <= k <= v-4; got v={v}, k={k}")
        part = _part_4_2(k, p)
        (a, am), (b, bm) = diamond_bits(t.arcs, v), diamond_bits(t2.arcs, v)
        hyp = cycle3_bits(t.arcs, v) == cycle3_bits(t2.arcs, v) and _counts_related(v, 4, k, p)(a, b)
        concl = is_le_k_hypomorphic(t, t2, 5) or (part == "2c" and a == bm and am == b)
    elif theorem == "lemma-hypomorphe":
        hyp = v >= 5 and is_le_k_hypomorphic(t, t2, 4)
        concl = is_le_k_hypomorphic(t, t2, 5)
    elif theorem == "claim-3hyp4hyp":
        (a, am), (b, bm) = diamond_bits(t.arcs, v), diamond_bits(t2.arcs, v)
        hyp = cycle3_bits(t.arcs, v) == cycle3_bits(t2.arcs, v) and a == b
        concl = am == bm and is_le_k_hypomorphic(t, t2, min(5, v))
    elif theorem == "lemma-41":
        hyp = is_le_k_hypomorphic(t, t2, min(4, v))
        concl = all(_check_difference_class(t, t2, c) is None for c in difference_classes(t, t2).nontrivial)
    else:
        _need(k is not None, f"{theorem} needs --k")
        _need(6 <= k <= v - 6, f"requires 6 <= k <= v-6; got v={v}, k={k}")
        a, b = beta6_bits(t.arcs, v)[0], beta6_bits(t2.arcs, v)[0]
        hyp = is_le_k_hypomorphic(t, t2, 4) and _counts_related(v, 6, k, p)(a, b)
        concl = is_hereditarily_isomorphic(t, t2)
    params = {n: x for n, x in (("v", v), ("k", k), ("p", p)) if x is not None}
    payload = {"T": serialize_tournament(t), "T2": serialize_tournament(t2)}
    return _report(theorem, params, hyp, concl, payload)
