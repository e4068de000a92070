from __future__ import annotations

import random

import numpy as np
import pytest

from bookwalk.graph import KnowledgeGraph, NodeRef, Triple
from bookwalk.reasoner import saturate
from bookwalk.walk import (
    RankedResult,
    SeedDistribution,
    WalkParams,
    build_chain,
    lazy_walk,
    seed_from_nodes,
    step_distribution,
    transition,
    typed_query,
)
from conftest import graph_from
from oracles import enumerate_lazy_walk
from randgen import facts_of, random_walk_graph

A = NodeRef.parse("dsc:A")
B = NodeRef.parse("dsc:B")

TOTAL_STOP_MASS = 0.5 * sum(0.5 ** d for d in range(1, 11))  # 0.49951171875


@pytest.fixture
def two_node_chain():
    g = graph_from([("dsc:A", "nextPage", "dsc:B"), ("dsc:B", "prevPage", "dsc:A")])
    return build_chain(g)


# -- chain construction ---------------------------------------------------------


def test_two_node_chain_shape(two_node_chain):
    chain = two_node_chain
    assert chain.size == 2
    assert not chain.dangling.any()
    assert len(chain.adjacency[chain.index[A]]) == 1  # |L(A)| = 1


def test_isolated_node_is_dangling():
    g = KnowledgeGraph()
    g.add_node(A)
    chain = build_chain(g)
    assert chain.dangling[chain.index[A]]


def test_empty_graph_empty_chain():
    chain = build_chain(KnowledgeGraph())
    assert chain.size == 0


def test_chain_covers_saturated_worked_example(worked_graph):
    saturated = saturate(worked_graph)
    chain = build_chain(saturated)
    assert chain.size == saturated.node_count == 11


# -- transition ------------------------------------------------------------------


def test_transition_label_then_target_weights():
    # L(x) = {nextPage, typeOf}; Y(x, nextPage) = {a}; Y(x, typeOf) = {b, c}
    g = graph_from(
        [
            ("dsc:x", "nextPage", "dsc:a"),
            ("dsc:x", "typeOf", "topic:b"),
            ("dsc:x", "typeOf", "topic:c"),
        ]
    )
    chain = build_chain(g)
    t = transition(chain, NodeRef.parse("dsc:x"))
    assert t == {
        NodeRef.parse("dsc:a"): pytest.approx(0.5, abs=1e-15),
        NodeRef.parse("topic:b"): pytest.approx(0.25, abs=1e-15),
        NodeRef.parse("topic:c"): pytest.approx(0.25, abs=1e-15),
    }


def test_transition_single_edge():
    g = graph_from([("dsc:A", "nextPage", "dsc:B")])
    chain = build_chain(g)
    assert transition(chain, A) == {B: 1.0}


def test_transition_dangling_self_retention():
    g = graph_from([("dsc:A", "nextPage", "dsc:B")])
    chain = build_chain(g)
    assert transition(chain, B) == {B: 1.0}


def test_transition_unknown_node_is_an_error(two_node_chain):
    with pytest.raises(ValueError):
        transition(two_node_chain, NodeRef.parse("dsc:ghost"))


def test_transition_rows_are_stochastic():
    rng = random.Random(7)
    for _ in range(25):
        g = random_walk_graph(rng)
        chain = build_chain(g)
        for ref in chain.refs:
            row = transition(chain, ref)
            assert abs(sum(row.values()) - 1.0) <= 1e-12
            assert all(p > 0 for p in row.values())


# -- step propagation --------------------------------------------------------------


def test_step_point_mass_single_edge():
    g = graph_from([("dsc:A", "nextPage", "dsc:B"), ("dsc:B", "prevPage", "dsc:A")])
    chain = build_chain(g)
    v = np.zeros(2)
    v[chain.index[A]] = 1.0
    out = step_distribution(chain, v)
    assert out[chain.index[B]] == 1.0
    assert out[chain.index[A]] == 0.0


def test_step_matches_transition_row():
    g = graph_from(
        [
            ("dsc:x", "nextPage", "dsc:a"),
            ("dsc:x", "typeOf", "topic:b"),
            ("dsc:x", "typeOf", "topic:c"),
        ]
    )
    chain = build_chain(g)
    v = np.zeros(chain.size)
    v[chain.index[NodeRef.parse("dsc:x")]] = 1.0
    out = step_distribution(chain, v)
    expected = transition(chain, NodeRef.parse("dsc:x"))
    for ref, p in expected.items():
        assert out[chain.index[ref]] == pytest.approx(p, abs=1e-15)


def test_step_uniform_on_symmetric_cycle_is_stationary(two_node_chain):
    chain = two_node_chain
    v = np.full(2, 0.5)
    out = step_distribution(chain, v)
    np.testing.assert_allclose(out, v, atol=1e-15)


def test_step_preserves_partial_mass():
    rng = random.Random(11)
    for _ in range(10):
        g = random_walk_graph(rng)
        chain = build_chain(g)
        v = np.zeros(chain.size)
        v[0] = 0.25
        if chain.size > 1:
            v[1] = 0.5
        out = step_distribution(chain, v)
        assert abs(out.sum() - v.sum()) <= 1e-12


def test_step_dimension_mismatch():
    g = graph_from([("dsc:A", "nextPage", "dsc:B")])
    chain = build_chain(g)
    with pytest.raises(ValueError):
        step_distribution(chain, np.zeros(5))


# -- lazy walk ----------------------------------------------------------------------


def test_two_node_alternation_fixture(two_node_chain):
    stop = lazy_walk(two_node_chain, seed_from_nodes([A]))
    assert stop.score(B) == pytest.approx(0.3330078125, abs=1e-12)
    assert stop.score(A) == pytest.approx(0.16650390625, abs=1e-12)


def test_total_stop_mass_closed_form(two_node_chain):
    stop = lazy_walk(two_node_chain, seed_from_nodes([A]))
    assert stop.total_mass() == pytest.approx(TOTAL_STOP_MASS, abs=1e-15)
    assert TOTAL_STOP_MASS == 0.49951171875


def test_stop_mass_invariant_on_random_graphs():
    rng = random.Random(23)
    for _ in range(20):
        g = random_walk_graph(rng)
        chain = build_chain(g)
        seed = seed_from_nodes([chain.refs[0], chain.refs[-1]])
        stop = lazy_walk(chain, seed)
        assert stop.total_mass() == pytest.approx(TOTAL_STOP_MASS, abs=1e-9)


def test_d_max_one_is_single_term(two_node_chain):
    stop = lazy_walk(two_node_chain, seed_from_nodes([A]), WalkParams(d_max=1))
    assert stop.score(B) == pytest.approx(0.5 * 0.5, abs=1e-15)
    assert stop.score(A) == 0.0


def test_linear_in_the_seed():
    rng = random.Random(31)
    for _ in range(10):
        g = random_walk_graph(rng)
        chain = build_chain(g)
        x, y = chain.refs[0], chain.refs[-1]
        if x == y:
            continue
        mixed = lazy_walk(chain, SeedDistribution({x: 0.25, y: 0.75}))
        from_x = lazy_walk(chain, seed_from_nodes([x]))
        from_y = lazy_walk(chain, seed_from_nodes([y]))
        combined = 0.25 * from_x.scores + 0.75 * from_y.scores
        np.testing.assert_allclose(mixed.scores, combined, atol=1e-9)


def test_matches_exhaustive_path_enumeration():
    rng = random.Random(47)
    for _ in range(10):
        g = random_walk_graph(rng)
        chain = build_chain(g)
        seed = seed_from_nodes([chain.refs[0]])
        params = WalkParams(gamma=0.5, d_max=4)
        stop = lazy_walk(chain, seed, params)
        oracle = enumerate_lazy_walk(
            facts_of(g), {str(chain.refs[0]): 1.0}, params.gamma, params.d_max
        )
        for ref in chain.refs:
            assert stop.score(ref) == pytest.approx(oracle.get(str(ref), 0.0), abs=1e-9)


def test_unknown_seed_node_rejected(two_node_chain):
    with pytest.raises(ValueError):
        lazy_walk(two_node_chain, seed_from_nodes([NodeRef.parse("dsc:ghost")]))


# -- seeds -----------------------------------------------------------------------------


def test_seed_single():
    assert seed_from_nodes([A]).weights == {A: 1.0}


def test_seed_uniform_pair():
    assert seed_from_nodes([A, B]).weights == {A: 0.5, B: 0.5}


def test_seed_multiplicity():
    weights = seed_from_nodes([A, A, B]).weights
    assert weights[A] == pytest.approx(2 / 3)
    assert weights[B] == pytest.approx(1 / 3)


def test_seed_empty_rejected():
    with pytest.raises(ValueError):
        seed_from_nodes([])


def test_seed_distribution_validation():
    with pytest.raises(ValueError):
        SeedDistribution({A: 0.4, B: 0.4})
    with pytest.raises(ValueError):
        SeedDistribution({A: 1.5, B: -0.5})


# -- typed queries ----------------------------------------------------------------------


@pytest.fixture
def question_chain(worked_graph):
    g = worked_graph.copy()
    g.add(Triple(NodeRef.parse("q:Q1"), "isQuestionOf", NodeRef.parse("dsc:Turing_model")))
    g.add(Triple(NodeRef.parse("q:Q2"), "isQuestionOf", NodeRef.parse("dsc:Data_processors")))
    return build_chain(saturate(g))


def test_typed_query_filters_kind(question_chain):
    seed = seed_from_nodes([NodeRef.parse("dsc:Turing_model")])
    result = typed_query(question_chain, seed, "QuestionContainer", k=10)
    assert result.target_kind == "QuestionContainer"
    assert 1 <= len(result) <= 10
    assert all(ref.namespace == "q" for ref, _ in result.entries)


def test_typed_query_scores_non_increasing(question_chain):
    seed = seed_from_nodes([NodeRef.parse("dsc:Turing_model")])
    result = typed_query(question_chain, seed, "BookContainer", k=10)
    scores = [s for _, s in result.entries]
    assert scores == sorted(scores, reverse=True)
    assert all(s > 0 for s in scores)


def test_typed_query_k_truncates(question_chain):
    seed = seed_from_nodes([NodeRef.parse("dsc:Turing_model")])
    assert len(typed_query(question_chain, seed, "BookContainer", k=1)) == 1


def test_typed_query_empty_result():
    g = graph_from([("dsc:A", "nextPage", "dsc:B"), ("dsc:B", "prevPage", "dsc:A")])
    chain = build_chain(g)
    result = typed_query(chain, seed_from_nodes([A]), "TermContainer", k=10)
    assert result.entries == []


def test_typed_query_deterministic_tie_break():
    # b and c tie exactly; canonical order decides
    g = graph_from(
        [
            ("dsc:x", "typeOf", "topic:c"),
            ("dsc:x", "typeOf", "topic:b"),
        ]
    )
    chain = build_chain(g)
    result = typed_query(chain, seed_from_nodes([NodeRef.parse("dsc:x")]), "BookContainer")
    assert [str(r) for r in result.refs()] == ["topic:b", "topic:c"]
    again = typed_query(chain, seed_from_nodes([NodeRef.parse("dsc:x")]), "BookContainer")
    assert again.entries == result.entries


def test_rank_order_invariant_under_score_scaling(question_chain):
    seed = seed_from_nodes([NodeRef.parse("dsc:Turing_model")])
    result = typed_query(question_chain, seed, "BookContainer", k=10)
    scaled = sorted(
        ((ref, s * 7.0) for ref, s in result.entries),
        key=lambda item: (-item[1], item[0]),
    )
    assert [r for r, _ in scaled] == result.refs()
