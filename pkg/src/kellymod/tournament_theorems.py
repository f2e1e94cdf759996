"""Verification of the tournament statements.

Small statements are swept exhaustively at five or six vertices. The
statements that only bite at eight or twelve vertices are checked through
their ingredients (kernel regimes, the lemmas they cite) and on constructed
instances built from circular dilations and their partial duals.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterator

from .combinatorics import binomial, pairs, require_prime, subset_masks
from .config import check_ground_set
from .errors import PreconditionError
from .graph_theorems import (
    _count_signature,
    _enumeration_route,
    _full_rank_rational,
    _kernel_regime,
    _need,
    _part_1_5,
    _part_4_1,
    _part_4_2,
    _sweep_families,
)
from .graphs import full_pairs, subset_pair_masks
from .incidence import KernelTag, build_inclusion_matrix
from .reconstruction import _seed_for
from .report import Report, Route, Tally, group_by, group_pairs, population
from .tournaments import (
    Tournament,
    _sub_canon,
    beta6_bits,
    circular_dilation,
    cycle3,
    cycle3_bits,
    diamond_bits,
    difference_classes,
    dual,
    is_hereditarily_isomorphic,
    is_interval,
    is_le_k_hypomorphic,
    lexicographic_sum,
    recognize_circular_decomposition,
)

TOURNAMENT_THEOREMS = (
    "thm-tournament-5.1",
    "thm-tournament-5.2",
    "thm-tournament-5.3",
    "lemma-hypomorphe",
    "claim-3hyp4hyp",
    "lemma-41",
    "thm-beta6",
)

CONSTRUCTED_MAX_ORDER = 9


def _arcs_payload(v: int, arcs: int) -> list[list[int]]:
    return [list(a) for a in Tournament(v, arcs).arc_list()]


def _pair_payload(v: int, a: int, b: int, **extra) -> dict:
    return {"T": _arcs_payload(v, a), "T2": _arcs_payload(v, b), **extra}


def _hypomorphy_signature(arcs: int, v: int, max_k: int) -> tuple:
    """Isomorphism classes of every subtournament of order 3..max_k."""
    t = Tournament(v, arcs)
    return tuple(_sub_canon(t, m) for k in range(3, max_k + 1) for m in subset_masks(v, k))


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for a in range(1, total - parts + 2):
        for rest in compositions(total - a, parts - 1):
            yield (a, *rest)


def circular_profiles(max_order: int) -> Iterator[tuple[int, ...]]:
    """Chain-length profiles over ``T_{2h+1}`` with at most ``max_order`` vertices."""
    for n in range(1, max_order + 1):
        for m in range(1, n + 1, 2):
            yield from compositions(n, m)


def partial_dual(t: Tournament, block: frozenset[int] | set[int]) -> Tournament:
    """Reverse the arcs with both ends in ``block``."""
    mask = 0
    for m, (i, j) in enumerate(pairs(t.v)):
        if i in block and j in block:
            mask |= 1 << m
    return Tournament(t.v, t.arcs ^ mask)


# ---------------------------------------------------------------------------
# boolean sums with few edges


def _good_graphs(v: int, k: int, p: int) -> list[int]:
    """Graphs all of whose ``k``-subsets carry a multiple of ``p`` edges."""
    masks = subset_pair_masks(v, k)
    return [g for g in range(1 << binomial(v, 2)) if all((g & m).bit_count() % p == 0 for m in masks)]


def verify_boolean_sum_congruence(
    v: int, k: int, p: int, route: str | None = None, seed: int | None = None, sample: int | None = None
) -> Report:
    """Few disagreements (mod ``p``) on every ``k``-set force ``T' = T`` or ``T' = T*``."""
    check_ground_set(v)
    require_prime(p)
    _need(2 <= k <= v - 2, f"requires 2 <= k <= v-2; got v={v}, k={k}")
    if p == 2 and k % 4 == 0:
        part, expected = 4, KernelTag.ALL_ONES
    else:
        part = _part_1_5(k, p)
        expected = KernelTag.ALL_ONES if part == 2 else KernelTag.TRIVIAL
    tally = Tally()
    tally.bump("part", part)
    _kernel_regime(tally, v, 2, k, p, [expected])
    full = full_pairs(v)
    dual_ok = part in (2, 4)
    chosen = _enumeration_route(route, v)
    if chosen is not Route.KERNEL:
        good = _good_graphs(v, k, p)
        tally.bump("good_boolean_sums", len(good))
        codes = population(binomial(v, 2), chosen, seed, sample)
        tally.bump("instances", len(codes))
        idx = 0
        for a in codes:
            for g in good:
                if g == 0:
                    continue
                tally.bump("hypothesis_pairs")
                b = a ^ g
                if not (dual_ok and g == full):
                    tally.fail(idx, _pair_payload(v, a, b))
                idx += 1
    params = {"v": v, "k": k, "p": p}
    return tally.to_report("thm-tournament-5.1", params, chosen, _seed_for(chosen, seed))


# ---------------------------------------------------------------------------
# 3-cycle counts


@lru_cache(maxsize=None)
def every_tournament_has_acyclic_triple(v: int = 4) -> bool:
    return all(cycle3_bits(a, v) != (1 << binomial(v, 3)) - 1 for a in range(1 << binomial(v, 2)))


@lru_cache(maxsize=None)
def every_tournament_has_non_diamond(v: int = 5) -> bool:
    return all(
        (plus | minus) != (1 << binomial(v, 4)) - 1
        for plus, minus in (diamond_bits(a, v) for a in range(1 << binomial(v, 2)))
    )


def verify_cycle_counts(
    v: int, k: int, p: int | None = None,
    route: str | None = None, seed: int | None = None, sample: int | None = None,
) -> Report:
    """Count conditions on 3-cycles force ``(<=3)``-hypomorphy, i.e. equal 3-cycle families."""
    check_ground_set(v)
    _need(3 <= k <= v - 3, f"requires 3 <= k <= v-3; got v={v}, k={k}")
    part = _part_4_1(k, p)
    tally = Tally()
    tally.bump("part", part)
    if part == 1:
        _full_rank_rational(tally, v, 3, k)
    else:
        regime = _kernel_regime(tally, v, 3, k, p, [KernelTag.TRIVIAL, KernelTag.ALL_ONES])
        if regime is KernelTag.ALL_ONES:
            # a tournament on >= 4 vertices is never all 3-cycles
            if not every_tournament_has_acyclic_triple(4):
                tally.fail(-1, {"kind": "acyclic-triple", "v": 4})
            tally.bump("acyclic_triple_tournaments_checked", 1 << 6)
            if p == 2:
                tally.fail(-1, {"kind": "regime", "detail": "complement direction not excluded"})
    chosen = _enumeration_route(route, v)
    if chosen is not Route.KERNEL:
        codes = population(binomial(v, 2), chosen, seed, sample)
        _sweep_families(
            tally, codes, lambda a: cycle3_bits(a, v), _count_signature(v, 3, k, p),
            lambda a, b: a == b, lambda a, b: _pair_payload(v, a, b),
        )
    params = {"v": v, "k": k, "p": p}
    return tally.to_report("thm-tournament-5.2", params, chosen, _seed_for(chosen, seed))


# ---------------------------------------------------------------------------
# hypomorphy lemmas at five vertices


def verify_hypomorphe(v: int = 5, route: str | None = None, seed: int | None = None, sample: int | None = None) -> Report:
    """``(<=4)``-hypomorphic tournaments on at least 5 vertices are ``(<=5)``-hypomorphic."""
    check_ground_set(v)
    _need(v >= 5, f"requires v >= 5; got v={v}")
    chosen = _enumeration_route(route, v)
    if chosen is Route.KERNEL:
        chosen = Route.SAMPLED
    codes = population(binomial(v, 2), chosen, seed, sample)
    tally = Tally()
    tally.bump("instances", len(codes))
    groups = group_by(codes, lambda a: _hypomorphy_signature(a, v, 4))
    tally.bump("groups", len(groups))
    for idx, (a, b) in enumerate(group_pairs(groups)):
        tally.bump("hypothesis_pairs")
        if not is_le_k_hypomorphic(Tournament(v, a), Tournament(v, b), 5):
            tally.fail(idx, _pair_payload(v, a, b))
    return tally.to_report("lemma-hypomorphe", {"v": v}, chosen, _seed_for(chosen, seed))


def verify_3hyp4hyp(v: int = 5, route: str | None = None, seed: int | None = None, sample: int | None = None) -> Report:
    """Equal 3-cycle and positive-diamond families give equal negative diamonds
    and ``(<=5)``-hypomorphy."""
    check_ground_set(v)
    _need(v >= 5, f"requires v >= 5; got v={v}")
    chosen = _enumeration_route(route, v)
    if chosen is Route.KERNEL:
        chosen = Route.SAMPLED
    codes = population(binomial(v, 2), chosen, seed, sample)
    tally = Tally()
    tally.bump("instances", len(codes))
    groups = group_by(codes, lambda a: (cycle3_bits(a, v), diamond_bits(a, v)[0]))
    tally.bump("groups", len(groups))
    for idx, (a, b) in enumerate(group_pairs(groups)):
        tally.bump("hypothesis_pairs")
        if diamond_bits(a, v)[1] != diamond_bits(b, v)[1]:
            tally.fail(idx, _pair_payload(v, a, b, kind="negative-diamonds"))
        elif not is_le_k_hypomorphic(Tournament(v, a), Tournament(v, b), 5):
            tally.fail(idx, _pair_payload(v, a, b, kind="hypomorphy"))
    return tally.to_report("claim-3hyp4hyp", {"v": v}, chosen, _seed_for(chosen, seed))


# ---------------------------------------------------------------------------
# difference classes


def _check_difference_class(t: Tournament, t2: Tournament, cls: frozenset[int]) -> str | None:
    """Name the first failing part (1, 2 or 3) for one difference class, else None."""
    if not (is_interval(t, cls) and is_interval(t2, cls)):
        return "1"
    members = sorted(cls)
    for tri in combinations(members, 3):
        a = t.induced(tri)
        if a.arcs in _cyclic_codes():
            if t2.induced(tri).arcs != dual(a).arcs:
                return "2"
    sub = t.induced(members)
    sub2 = t2.induced(members)
    d1 = recognize_circular_decomposition(sub)
    d2 = recognize_circular_decomposition(dual(sub2))
    if d1 is None or d2 is None or d1.h != d2.h:
        return "3"
    if {frozenset(b) for b in d1.blocks} != {frozenset(b) for b in d2.blocks}:
        return "3"
    # the two dilations sit over mutually dual copies of T_{2h+1}
    reps = [b[0] for b in d1.blocks]
    if sub2.induced(reps).arcs != dual(sub.induced(reps)).arcs:
        return "3"
    return None


@lru_cache(maxsize=None)
def _cyclic_codes() -> frozenset[int]:
    c = cycle3()
    return frozenset({c.arcs, dual(c).arcs})


def _check_lemma_41_pair(tally: Tally, idx: int, t: Tournament, t2: Tournament) -> None:
    tally.bump("hypothesis_pairs")
    for cls in difference_classes(t, t2).nontrivial:
        tally.bump("difference_classes")
        part = _check_difference_class(t, t2, cls)
        if part is not None:
            tally.fail(idx, _pair_payload(t.v, t.arcs, t2.arcs, part=part, cls=sorted(cls)))
            return


def lemma_41_instances(max_order: int = CONSTRUCTED_MAX_ORDER) -> Iterator[tuple[Tournament, Tournament]]:
    """Circular dilations against their duals, alone and embedded as an interval
    of a 3-cycle with two singleton blocks."""
    one = Tournament.chain(1)
    for prof in circular_profiles(max_order):
        a = circular_dilation(prof)
        yield a, dual(a)
        if a.v + 2 <= max_order:
            base = lexicographic_sum(cycle3(), [a, one, one])
            yield base, partial_dual(base, frozenset(range(a.v)))


def verify_lemma_41(max_order: int = CONSTRUCTED_MAX_ORDER, exhaustive_v: int = 5) -> Report:
    """Parts (1) to (3) on all ``(<=4)``-hypomorphic pairs at ``exhaustive_v``
    vertices and on constructed circular-dilation pairs."""
    _need(1 <= max_order <= 12, f"constructed instances are capped at 12 vertices, got {max_order}")
    tally = Tally()
    idx = 0
    codes = range(1 << binomial(exhaustive_v, 2))
    groups = group_by(codes, lambda a: _hypomorphy_signature(a, exhaustive_v, 4))
    for a, b in group_pairs(groups):
        tally.bump("exhaustive_pairs")
        _check_lemma_41_pair(tally, idx, Tournament(exhaustive_v, a), Tournament(exhaustive_v, b))
        idx += 1
    for t, t2 in lemma_41_instances(max_order):
        tally.bump("constructed_pairs")
        if not is_le_k_hypomorphic(t, t2, 4):
            tally.bump("constructed_not_hypomorphic")
            tally.fail(idx, _pair_payload(t.v, t.arcs, t2.arcs, kind="construction"))
        else:
            _check_lemma_41_pair(tally, idx, t, t2)
        idx += 1
    params = {"max_order": max_order, "exhaustive_v": exhaustive_v}
    return tally.to_report("lemma-41", params, Route.CONSTRUCTED)


# ---------------------------------------------------------------------------
# beta6 and hereditary isomorphism


def beta6_free_shape(prof: tuple[int, ...]) -> bool:
    """The profiles a difference class can have once both beta6 orientations are excluded."""
    m = len(prof)
    if m == 1:
        return True
    if m == 3:
        s = sorted(prof)
        return s[0] == s[1] == 1 or max(prof) <= 2
    if m == 5:
        return sorted(prof)[-2] == 1 and max(prof) <= 2
    if m == 7:
        return max(prof) == 1
    return False


def beta6_instances(max_order: int) -> Iterator[tuple[tuple[int, ...], Tournament, Tournament]]:
    one = Tournament.chain(1)
    for prof in circular_profiles(max_order):
        if not beta6_free_shape(prof):
            continue
        a = circular_dilation(prof)
        yield prof, a, dual(a)
        if a.v + 2 <= max_order:
            base = lexicographic_sum(cycle3(), [a, one, one])
            yield prof, base, partial_dual(base, frozenset(range(a.v)))


def verify_beta6(
    max_order: int = CONSTRUCTED_MAX_ORDER, k: int | None = None, p: int | None = None, v: int | None = None
) -> Report:
    """Ingredients of the beta6 statement on constructed instances.

    1. A circular dilation avoids both beta6 orientations exactly for the
       profiles allowed by ``beta6_free_shape``.
    2. Such a class and its dual are ``(<=6)``-hypomorphic.
    3. Pairs built by dualizing such a class inside a larger tournament are
       hereditarily isomorphic.
    With ``k`` and ``p`` the kernel regime of ``W[6,k]`` is also checked.
    """
    _need(1 <= max_order <= 12, f"constructed instances are capped at 12 vertices, got {max_order}")
    tally = Tally()
    if p is not None:
        _need(k is not None, "the kernel check needs k as well as p")
        v = 12 if v is None else v
        _need(6 <= k <= v - 6, f"requires 6 <= k <= v-6; got v={v}, k={k}")
        _kernel_regime(tally, v, 6, k, p, [KernelTag.TRIVIAL, KernelTag.ALL_ONES])
    idx = 0
    for prof in circular_profiles(max_order):
        a = circular_dilation(prof)
        tally.bump("profiles")
        free = a.v < 6 or beta6_bits(a.arcs, a.v) == (0, 0)
        if free != beta6_free_shape(prof):
            tally.fail(idx, {"kind": "shape", "profile": list(prof), "beta6_free": free})
        idx += 1
    for prof, t, t2 in beta6_instances(max_order):
        tally.bump("constructed_pairs")
        if not is_le_k_hypomorphic(t, t2, 4):
            tally.fail(idx, _pair_payload(t.v, t.arcs, t2.arcs, kind="construction", profile=list(prof)))
        elif not is_le_k_hypomorphic(t, t2, min(6, t.v)):
            tally.fail(idx, _pair_payload(t.v, t.arcs, t2.arcs, kind="le6-hypomorphy", profile=list(prof)))
        elif not is_hereditarily_isomorphic(t, t2):
            tally.fail(idx, _pair_payload(t.v, t.arcs, t2.arcs, kind="hereditary", profile=list(prof)))
        else:
            tally.bump("hereditarily_isomorphic")
        idx += 1
    params = {"max_order": max_order, "k": k, "p": p}
    return tally.to_report("thm-beta6", params, Route.CONSTRUCTED)


# ---------------------------------------------------------------------------
# diamond counts


def _diamond_condition(v: int, k: int, p: int | None) -> Callable[[int, int], bool]:
    cols = build_inclusion_matrix(v, 4, k).col_bits
    if p is None:
        return lambda a, b: all((a & c).bit_count() == (b & c).bit_count() for c in cols)
    return lambda a, b: all(((a & c).bit_count() - (b & c).bit_count()) % p == 0 for c in cols)


def diamond_instances(v: int) -> Iterator[tuple[Tournament, Tournament]]:
    """Circular dilations on ``v`` vertices against their duals and their
    partial duals on runs of a chain block."""
    for prof in compositions_all(v):
        t = circular_dilation(prof)
        yield t, dual(t)
        start = 0
        for n in prof:
            for lo in range(n):
                for hi in range(lo + 2, n + 1):
                    yield t, partial_dual(t, frozenset(range(start + lo, start + hi)))
            start += n


def compositions_all(v: int) -> Iterator[tuple[int, ...]]:
    for m in range(1, v + 1, 2):
        yield from compositions(v, m)


def verify_diamond_counts(v: int = 8, k: int = 4, p: int | None = None) -> Report:
    """``(<=3)``-hypomorphic pairs with related positive-diamond counts are
    ``(<=5)``-hypomorphic (or swap the diamond signs when ``p = 2`` and ``8 | k``)."""
    check_ground_set(v)
    _need(4 <= k <= v - 4, f"requires 4 <= k <= v-4; got v={v}, k={k}")
    _need(v <= CONSTRUCTED_MAX_ORDER, f"constructed instances are capped at {CONSTRUCTED_MAX_ORDER} vertices")
    part = _part_4_2(k, p)
    tally = Tally()
    tally.bump("part_code", {"1": 1, "2a": 2, "2b": 3, "2c": 4}[part])
    if part == "1":
        _full_rank_rational(tally, v, 4, k)
    else:
        regime = _kernel_regime(tally, v, 4, k, p, [KernelTag.TRIVIAL, KernelTag.ALL_ONES])
        if regime is KernelTag.ALL_ONES:
            if not every_tournament_has_non_diamond(5):
                tally.fail(-1, {"kind": "non-diamond", "v": 5})
            tally.bump("non_diamond_tournaments_checked", 1 << 10)
    related = _diamond_condition(v, k, p)
    for idx, (t, t2) in enumerate(diamond_instances(v)):
        tally.bump("constructed_pairs")
        if cycle3_bits(t.arcs, v) != cycle3_bits(t2.arcs, v):
            continue
        plus, minus = diamond_bits(t.arcs, v)
        plus2, minus2 = diamond_bits(t2.arcs, v)
        if not related(plus, plus2):
            continue
        tally.bump("hypothesis_pairs")
        if is_le_k_hypomorphic(t, t2, 5):
            tally.bump("le5_hypomorphic")
            continue
        if part == "2c" and plus == minus2 and minus == plus2:
            tally.bump("diamond_swap")
            continue
        tally.fail(idx, _pair_payload(v, t.arcs, t2.arcs))
    params = {"v": v, "k": k, "p": p}
    return tally.to_report("thm-tournament-5.3", params, Route.CONSTRUCTED)


def verify_tournament_theorem(
    theorem: str, v: int | None = None, k: int | None = None, p: int | None = None,
    route: str | None = None, seed: int | None = None, sample: int | None = None,
    max_order: int | None = None,
) -> Report:
    """Dispatch a tournament statement by id (see ``TOURNAMENT_THEOREMS``)."""
    if theorem not in TOURNAMENT_THEOREMS:
        raise PreconditionError(
            f"unknown tournament statement {theorem!r}; choose from {', '.join(TOURNAMENT_THEOREMS)}"
        )

    def need(name: str, value):
        _need(value is not None, f"{theorem} needs --{name}")
        return value

    if theorem == "thm-tournament-5.1":
        return verify_boolean_sum_congruence(need("v", v), need("k", k), need("p", p), route, seed, sample)
    if theorem == "thm-tournament-5.2":
        return verify_cycle_counts(need("v", v), need("k", k), p, route, seed, sample)
    if theorem == "thm-tournament-5.3":
        _need(route in (None, "auto", "constructed"), "this statement is checked on constructed instances only")
        return verify_diamond_counts(8 if v is None else v, 4 if k is None else k, p)
    if theorem == "lemma-hypomorphe":
        return verify_hypomorphe(5 if v is None else v, route, seed, sample)
    if theorem == "claim-3hyp4hyp":
        return verify_3hyp4hyp(5 if v is None else v, route, seed, sample)
    if theorem == "lemma-41":
        _need(route in (None, "auto", "constructed"), "this statement is checked on constructed instances only")
        return verify_lemma_41(CONSTRUCTED_MAX_ORDER if max_order is None else max_order)
    _need(route in (None, "auto", "constructed"), "this statement is checked on constructed instances only")
    return verify_beta6(CONSTRUCTED_MAX_ORDER if max_order is None else max_order, k, p, v)
