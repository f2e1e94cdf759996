from __future__ import annotations

import pytest

from kellymod import pair_checks
from kellymod.errors import PreconditionError, ResourceCapError
from kellymod.graph_theorems import (
    every_graph_has_homogeneous_triple,
    every_graph_has_non_p4_quadruple,
    verify_graph_theorem,
)
from kellymod.graphs import Graph
from kellymod.report import Route
from kellymod.tournament_theorems import (
    circular_profiles,
    every_tournament_has_acyclic_triple,
    every_tournament_has_non_diamond,
    verify_tournament_theorem,
)
from kellymod.tournaments import circular_dilation, cycle3, dual

FROZEN_GRAPH = [
    (("thm-graph-1.5", 5, 2, 3, "exhaustive"), Route.EXHAUSTIVE, {"instances": 1024, "groups": 1024}),
    (("claim-bipartite", 7, 3, None, None), Route.KERNEL, {"kernel_dim": 6, "kernel_vectors": 64, "complete_bipartite": 64}),
    (("claim-bipartite", 5, 3, None, None), Route.KERNEL, {"kernel_dim": 4, "complete_bipartite": 16}),
    (("claim-clawfree", 5, None, None, "exhaustive"), Route.EXHAUSTIVE, {"groups": 217, "hypothesis_pairs": 4792}),
    (("thm-graph-4.4", 5, 3, None, "exhaustive"), Route.EXHAUSTIVE, {"parity_pairs": 7680, "kernel_vectors_with_claw": 15}),
    (("thm-graph-4.1", 6, 3, None, "exhaustive"), Route.EXHAUSTIVE, {"rational_rank": 20, "distinct_families": 9574}),
    (("thm-graph-4.2", 8, 4, 2, "kernel"), Route.KERNEL, {"regime:Trivial": 1}),
    (("thm-graph-1.4", 8, 4, 2, None), Route.KERNEL, {"kernel_dim": 1, "regime:AllOnes": 1}),
    (("kelly-identity", 5, None, None, None), Route.EXHAUSTIVE, {"checks": 18432}),
]


@pytest.mark.parametrize("args, route, counters", FROZEN_GRAPH, ids=[a[0][0] + f"-v{a[0][1]}" for a in FROZEN_GRAPH])
def test_graph_theorems_frozen(args, route, counters):
    theorem, v, k, p, r = args
    rep = verify_graph_theorem(theorem, v, k, p, route=r)
    assert rep.passed and rep.route is route
    for name, value in counters.items():
        assert rep.counters[name] == value


def test_sampled_parity_route_is_seeded_and_deterministic():
    a = verify_graph_theorem("thm-graph-4.3", 7, 5, route="sampled", sample=256)
    assert a.passed and a.route is Route.SAMPLED and a.seed == 1729
    assert a.counters["kernel_coset_size"] == 128 and a.counters["hypothesis_pairs"] == 110
    assert a.to_json() == verify_graph_theorem("thm-graph-4.3", 7, 5, route="sampled", sample=256).to_json()


def test_ramsey_style_facts():
    assert every_graph_has_homogeneous_triple(6)
    assert not every_graph_has_homogeneous_triple(5)
    assert every_graph_has_non_p4_quadruple(6)
    assert not every_graph_has_non_p4_quadruple(5)
    assert every_tournament_has_acyclic_triple(4)
    assert every_tournament_has_non_diamond(5)


def test_graph_preconditions():
    with pytest.raises(PreconditionError):
        verify_graph_theorem("thm-graph-1.4", 6, 3, 2)
    with pytest.raises(PreconditionError):
        verify_graph_theorem("thm-graph-9.9", 6, 3, 2)
    with pytest.raises(ResourceCapError):
        verify_graph_theorem("thm-graph-1.5", 8, 3, 3, route="exhaustive")


FROZEN_TOURNAMENT = [
    (("thm-tournament-5.1", 5, 3, 3, "exhaustive", None), Route.EXHAUSTIVE, {"hypothesis_pairs": 1024, "good_boolean_sums": 2}),
    (("thm-tournament-5.2", 6, 3, 3, "exhaustive", None), Route.EXHAUSTIVE, {"distinct_families": 8563}),
    (("lemma-hypomorphe", 5, None, None, "exhaustive", None), Route.EXHAUSTIVE, {"groups": 398, "hypothesis_pairs": 8752}),
    (("claim-3hyp4hyp", 5, None, None, "exhaustive", None), Route.EXHAUSTIVE, {"hypothesis_pairs": 8752}),
    (("lemma-41", None, None, None, None, 7), Route.CONSTRUCTED, {"constructed_pairs": 80, "exhaustive_pairs": 8752}),
    (("thm-beta6", None, None, None, None, 8), Route.CONSTRUCTED, {"profiles": 128, "hereditarily_isomorphic": 61}),
    (("thm-tournament-5.3", 8, 4, 2, None, None), Route.CONSTRUCTED, {"constructed_pairs": 449, "le5_hypomorphic": 449}),
]


@pytest.mark.parametrize("args, route, counters", FROZEN_TOURNAMENT, ids=[a[0][0] for a in FROZEN_TOURNAMENT])
def test_tournament_theorems_frozen(args, route, counters):
    theorem, v, k, p, r, max_order = args
    rep = verify_tournament_theorem(theorem, v, k, p, route=r, max_order=max_order)
    assert rep.passed and rep.route is route
    for name, value in counters.items():
        assert rep.counters[name] == value


def test_constructed_routes_never_claim_exhaustive():
    for rep in (
        verify_tournament_theorem("thm-tournament-5.3", 8, 4, None),
        verify_tournament_theorem("thm-beta6", max_order=7),
        verify_tournament_theorem("lemma-41", max_order=6),
    ):
        assert rep.route is Route.CONSTRUCTED


def test_circular_profiles_count():
    # n splits into an odd number of parts in 2**(n-2) ways for n >= 2
    profiles = list(circular_profiles(6))
    assert len(profiles) == 1 + sum(2 ** (n - 2) for n in range(2, 7))
    assert all(len(p) % 2 == 1 and sum(p) <= 6 for p in profiles)
    assert len(set(profiles)) == len(profiles)


def test_pair_checks():
    g = Graph.cycle(6)
    assert pair_checks.check_graph_pair("thm-graph-1.4", g, g.complement(), 4, 2).passed
    assert pair_checks.check_graph_pair("claim-clawfree", g, g).counters["hypothesis_holds"] == 1
    t = circular_dilation((3, 3, 2))
    for theorem in ("lemma-hypomorphe", "claim-3hyp4hyp", "lemma-41"):
        rep = pair_checks.check_tournament_pair(theorem, t, dual(t))
        assert rep.passed and rep.counters["hypothesis_holds"] == 1
    with pytest.raises(PreconditionError):
        pair_checks.check_tournament_pair("thm-tournament-5.2", cycle3(), cycle3(), 3)


def test_harness_reports_a_broken_predicate(monkeypatch):
    """Negative control: a wrong claw test must surface as a counterexample."""
    monkeypatch.setattr(pair_checks, "is_claw_free", lambda g: False)
    rep = pair_checks.check_graph_pair("claim-clawfree", Graph.cycle(5), Graph.cycle(5))
    assert not rep.passed
    assert rep.counters["counterexamples_total"] == 1
    assert rep.counterexamples[0]["G"].startswith("v 5")
