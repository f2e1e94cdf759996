from __future__ import annotations

from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kellymod.combinatorics import SubsetCode, binomial
from kellymod.errors import ParseError, PreconditionError
from kellymod.graphs import (
    Graph,
    boolean_sum,
    count_induced_copies,
    full_pairs,
    homogeneous_bits,
    induced_edge_count,
    is_claw_free,
    is_complete_bipartite,
    is_isomorphic,
    kelly_identity_holds,
    p4_bits,
    p4_sets,
    parse_graph,
    serialize_graph,
    three_homogeneous_sets,
)


def graphs(v: int):
    return st.integers(0, (1 << binomial(v, 2)) - 1).map(lambda e: Graph(v, e))


def iso_raw(g: Graph, h: Graph) -> bool:
    return g.v == h.v and any(
        all(g.has_edge(i, j) == h.has_edge(p[i], p[j]) for i, j in combinations(range(g.v), 2))
        for p in permutations(range(g.v))
    )


CLAW = Graph.star(4)
P4 = Graph.path(4)


def test_parse_and_serialize():
    tri = parse_graph("v 3\ne 0 1\ne 1 2\ne 0 2")
    assert tri == Graph.complete(3)
    assert parse_graph("v 4") == Graph.empty(4)
    assert parse_graph(serialize_graph(Graph.cycle(6))) == Graph.cycle(6)


@pytest.mark.parametrize(
    "text, line",
    [("v 3\ne 1 1", 2), ("v 3\ne 0 3", 2), ("v 3\ne 0 1\ne 1 0", 3), ("e 0 1", 1), ("v 3\nx 0 1", 2)],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_graph(text)
    assert exc.value.line == line


def test_induced_edge_count_examples():
    k5 = Graph.complete(5)
    assert induced_edge_count(k5, SubsetCode.of([0, 2, 4])) == 3
    assert induced_edge_count(Graph.empty(5), SubsetCode.of([0, 2, 4])) == 0
    c5 = Graph.cycle(5)
    for quad in combinations(range(5), 4):
        assert induced_edge_count(c5, SubsetCode.of(quad)) == 3


@given(graphs(7), st.sets(st.integers(0, 6)))
@settings(max_examples=80, deadline=None)
def test_edge_count_bits_matches_naive(g, k_set):
    s = SubsetCode.of(sorted(k_set))
    want = sum(g.has_edge(i, j) for i, j in combinations(sorted(k_set), 2))
    assert induced_edge_count(g, s) == want
    assert induced_edge_count(g, s, method="naive") == want


def test_homogeneous_examples():
    assert len(three_homogeneous_sets(Graph.complete(5))) == 10
    assert len(three_homogeneous_sets(Graph.cycle(5))) == 0


def test_p4_examples():
    assert [m.elements for m in p4_sets(P4).members] == [(0, 1, 2, 3)]
    assert len(p4_sets(Graph.cycle(5))) == 5
    assert len(p4_sets(Graph.complete(4))) == 0


def test_four_vertex_tables_match_isomorphism_oracle():
    for code in range(64):
        g = Graph(4, code)
        assert bool(p4_bits(code, 4)) == iso_raw(g, P4)
        assert is_claw_free(g) == (not iso_raw(g, CLAW))


def test_three_vertex_homogeneity_oracle():
    for code in range(8):
        assert bool(homogeneous_bits(code, 3)) == (code in (0, 7))


def test_claw_free_oracle():
    for code in range(1 << 10):
        g = Graph(5, code)
        want = not any(iso_raw(g.induced(q), CLAW) for q in combinations(range(5), 4))
        assert is_claw_free(g) == want


def test_complete_bipartite_oracle():
    def oracle(g: Graph) -> bool:
        for side in range(1 << g.v):
            if all(g.has_edge(i, j) == ((side >> i & 1) != (side >> j & 1)) for i, j in combinations(range(g.v), 2)):
                return True
        return False

    for code in range(1 << 10):
        assert is_complete_bipartite(Graph(5, code)) == oracle(Graph(5, code))


def test_bipartite_claw_examples():
    assert is_complete_bipartite(CLAW) and not is_claw_free(CLAW)
    c5 = Graph.cycle(5)
    assert not is_complete_bipartite(c5) and is_claw_free(c5)
    assert is_complete_bipartite(Graph.empty(5)) and is_claw_free(Graph.empty(5))


@given(graphs(6), graphs(6))
@settings(max_examples=40, deadline=None)
def test_boolean_sum_laws(g, h):
    assert boolean_sum(g, g) == Graph.empty(6)
    assert boolean_sum(g, Graph.empty(6)) == g
    assert boolean_sum(g, Graph.complete(6)) == g.complement()
    assert boolean_sum(g, h) == boolean_sum(h, g)


def test_boolean_sum_rejects_size_mismatch():
    with pytest.raises(PreconditionError):
        boolean_sum(Graph.empty(4), Graph.empty(5))


def test_count_induced_copies_examples():
    assert count_induced_copies(Graph.complete(3), Graph.complete(2)) == 3
    assert count_induced_copies(Graph.cycle(5), P4) == 5


@given(graphs(6))
@settings(max_examples=30, deadline=None)
def test_isomorphism_matches_raw(g):
    h = Graph.from_edges(6, [(5 - i, 5 - j) for i, j in g.edge_list()])
    assert is_isomorphic(g, h)
    assert is_isomorphic(g, g.complement()) == iso_raw(g, g.complement())


@given(graphs(8), st.sampled_from([Graph.path(3), P4, CLAW, Graph.cycle(4), Graph.cycle(5)]))
@settings(max_examples=25, deadline=None)
def test_kelly_identity(g, pattern):
    assert kelly_identity_holds(pattern, g)


def test_full_pairs():
    assert full_pairs(5) == (1 << 10) - 1
