from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import tournament_iso_raw

from kellymod.combinatorics import SubsetCode, binomial
from kellymod.errors import ParseError
from kellymod.graphs import Graph
from kellymod.tournament_theorems import compositions
from kellymod.tournaments import (
    SubtournamentClass4,
    Tournament,
    all_tournaments,
    beta6_plus,
    beta6_sets,
    boolean_sum,
    c3_count,
    canonical_code,
    circular_dilation,
    circular_tournament,
    classify_4,
    cycle3,
    cycle4,
    diamond_minus,
    diamond_plus,
    diamond_sets,
    difference_classes,
    dual,
    is_diamond_free,
    is_interval,
    is_isomorphic,
    is_k_hypomorphic,
    lexicographic_sum,
    parse_tournament,
    recognize_circular_decomposition,
    rotational_tournament,
    serialize_tournament,
)


def tournaments(v: int):
    return st.integers(0, (1 << binomial(v, 2)) - 1).map(lambda a: Tournament(v, a))


def relabel(t: Tournament, perm: list[int]) -> Tournament:
    return Tournament.from_arcs(t.v, [(perm[a], perm[b]) for a, b in t.arc_list()])


SOURCE_PLUS_C3 = Tournament.from_arcs(4, [(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (3, 2)])


def test_parse_roundtrip_and_errors():
    t = circular_tournament(2)
    assert parse_tournament(serialize_tournament(t)) == t
    with pytest.raises(ParseError) as exc:
        parse_tournament("v 3\na 0 1\na 1 2")
    assert "missing" in str(exc.value)
    with pytest.raises(ParseError) as exc:
        parse_tournament("v 3\na 0 1\na 1 0\na 1 2\na 0 2")
    assert exc.value.line == 3


def test_dual_examples():
    c = cycle3()
    assert is_isomorphic(dual(c), c) and dual(c) != c
    assert dual(Tournament.chain(3)) == relabel(Tournament.chain(3), [2, 1, 0])
    assert dual(diamond_plus()) == diamond_minus()


@given(tournaments(6))
@settings(max_examples=40, deadline=None)
def test_dual_invariants(t):
    assert dual(dual(t)) == t
    assert c3_count(dual(t)) == c3_count(t)
    plus, minus = diamond_sets(t)
    dplus, dminus = diamond_sets(dual(t))
    assert plus == dminus and minus == dplus
    assert boolean_sum(t, dual(t)) == Graph.complete(6)
    assert boolean_sum(t, t) == Graph.empty(6)


def test_cycle_counts():
    assert c3_count(Tournament.chain(4)) == 0
    assert c3_count(cycle4()) == 2
    assert c3_count(diamond_plus()) == 1 == c3_count(diamond_minus())


def test_cycle_count_oracle():
    for t in all_tournaments(5):
        want = sum(
            1 for a, b, c in combinations(range(5), 3) if t.beats(a, b) == t.beats(b, c) == t.beats(c, a)
        )
        assert c3_count(t) == want


def test_classify_4_examples():
    full = SubsetCode.of(range(4))
    assert classify_4(diamond_plus(), full) is SubtournamentClass4.DIAMOND_PLUS
    assert classify_4(cycle4(), full) is SubtournamentClass4.CYCLE4
    assert classify_4(Tournament.chain(4), full) is SubtournamentClass4.CHAIN4
    assert classify_4(SOURCE_PLUS_C3, full) is SubtournamentClass4.DIAMOND_MINUS


def test_classify_4_matches_isomorphism_oracle():
    reps = {
        SubtournamentClass4.CHAIN4: Tournament.chain(4),
        SubtournamentClass4.CYCLE4: cycle4(),
        SubtournamentClass4.DIAMOND_PLUS: diamond_plus(),
        SubtournamentClass4.DIAMOND_MINUS: diamond_minus(),
    }
    full = SubsetCode.of(range(4))
    for t in all_tournaments(4):
        tag = classify_4(t, full)
        assert tournament_iso_raw(4, t.beats, reps[tag].beats)


@given(tournaments(7))
@settings(max_examples=20, deadline=None)
def test_classification_histogram_sums(t):
    counts = {}
    for s in combinations(range(7), 4):
        tag = classify_4(t, SubsetCode.of(s))
        counts[tag] = counts.get(tag, 0) + 1
    assert sum(counts.values()) == binomial(7, 4)
    plus, minus = diamond_sets(t)
    assert counts.get(SubtournamentClass4.DIAMOND_PLUS, 0) == len(plus)
    assert counts.get(SubtournamentClass4.DIAMOND_MINUS, 0) == len(minus)


def test_diamond_and_beta6_sets():
    plus, minus = diamond_sets(diamond_plus())
    assert len(plus) == 1 and len(minus) == 0
    assert diamond_sets(circular_tournament(2)) == (plus.empty(5, 4), plus.empty(5, 4))
    bplus, bminus = beta6_sets(beta6_plus())
    assert len(bplus) == 1 and len(bminus) == 0


@pytest.mark.parametrize("n, classes", [(3, 2), (4, 4), (5, 12)])
def test_canonical_code_counts_isomorphism_classes(n, classes):
    codes = {canonical_code(n, t.arcs) for t in all_tournaments(n)}
    assert len(codes) == classes


@pytest.mark.parametrize("n", [3, 4, 5])
def test_canonical_code_matches_raw_permutation_search(n):
    reps: dict = {}
    for t in all_tournaments(n):
        code = canonical_code(n, t.arcs)
        rep = reps.setdefault(code, t)
        assert tournament_iso_raw(n, t.beats, rep.beats)
    rep_list = list(reps.values())
    for a, b in combinations(rep_list, 2):
        assert not tournament_iso_raw(n, a.beats, b.beats)


@given(tournaments(7), st.permutations(range(7)))
@settings(max_examples=20, deadline=None)
def test_isomorphism_under_relabelling(t, perm):
    assert is_isomorphic(t, relabel(t, list(perm)))


def test_circular_tournaments():
    assert circular_tournament(1) == cycle3()
    assert circular_tournament(2).out_degrees() == (2,) * 5
    for h in range(1, 5):
        assert circular_tournament(h) == rotational_tournament(2 * h + 1)
        assert is_diamond_free(circular_tournament(h))


def test_lexicographic_sum():
    assert lexicographic_sum(cycle3(), [Tournament.chain(1)] * 3) == cycle3()
    comps = [Tournament.chain(3), Tournament.chain(2), Tournament.chain(1)]
    assert lexicographic_sum(cycle3(), comps) == beta6_plus()
    t = circular_dilation((2, 3, 1, 1, 2))
    start = 0
    for n in (2, 3, 1, 1, 2):
        assert is_interval(t, range(start, start + n))
        start += n


def test_intervals():
    assert is_interval(diamond_plus(), [0, 1, 2])
    for s in ([], [0], [0, 1, 2, 3]):
        assert is_interval(diamond_plus(), s)
    for s in combinations(range(3), 2):
        assert not is_interval(cycle3(), s)


def test_hypomorphy():
    rng = random.Random(3)
    for v in range(3, 8):
        t = Tournament(v, rng.getrandbits(binomial(v, 2)))
        assert is_k_hypomorphic(t, t, min(4, v))
        assert is_k_hypomorphic(t, dual(t), 3)
    assert not is_k_hypomorphic(SOURCE_PLUS_C3, diamond_plus(), 4)
    assert is_k_hypomorphic(SOURCE_PLUS_C3, diamond_plus(), 4, up_to_duality=True)


def test_difference_classes():
    assert difference_classes(cycle3(), cycle3()).nontrivial == ()
    assert difference_classes(cycle3(), dual(cycle3())).nontrivial == (frozenset({0, 1, 2}),)


def _min_rotation(prof: tuple[int, ...]) -> tuple[int, ...]:
    return min(prof[i:] + prof[:i] for i in range(len(prof)))


def test_recognition_examples():
    assert recognize_circular_decomposition(Tournament.chain(5)).lengths == (5,)
    c3 = recognize_circular_decomposition(cycle3())
    assert (c3.h, c3.lengths) == (1, (1, 1, 1))
    # Rotation-minimal labelling of the dilation (3, 2, 1).
    b = recognize_circular_decomposition(beta6_plus())
    assert (b.h, b.lengths) == (1, (1, 3, 2))
    assert recognize_circular_decomposition(diamond_plus()) is None


def test_recognition_inverts_dilation_up_to_nine_vertices():
    seen = 0
    for total in range(1, 10):
        for m in range(1, total + 1, 2):
            for prof in compositions(total, m):
                dec = recognize_circular_decomposition(circular_dilation(prof))
                assert dec is not None and dec.h == (m - 1) // 2
                assert dec.lengths == (_min_rotation(prof) if m > 1 else prof)
                seen += 1
    assert seen > 100


def test_recognition_rejects_diamonds():
    for t in all_tournaments(5):
        if not is_diamond_free(t):
            assert recognize_circular_decomposition(t) is None
        else:
            dec = recognize_circular_decomposition(t)
            assert dec is not None and is_isomorphic(circular_dilation(dec.lengths), t)
