"""LabeledGraph construction, canonicalization, and the opinion census."""

from __future__ import annotations

import math
import random

import pytest

from polarimeter import LabeledGraph, census


def test_merges_duplicate_and_reversed_edges():
    g = LabeledGraph([("a", "b", 1.0), ("b", "a", 2.0)], {"a": 0, "b": 1})
    assert g.edge_count == 1
    assert g.edges == (("a", "b", 3.0),)


def test_rejects_self_loops():
    with pytest.raises(ValueError, match="self-loop"):
        LabeledGraph([("a", "a", 1.0)], {"a": 0, "b": 1})


def test_rejects_nonpositive_weights():
    with pytest.raises(ValueError, match="weight"):
        LabeledGraph([("a", "b", 0.0)], {"a": 0, "b": 1})
    with pytest.raises(ValueError, match="weight"):
        LabeledGraph([("a", "b", -1.0)], {"a": 0, "b": 1})


def test_rejects_empty_edge_set():
    with pytest.raises(ValueError):
        LabeledGraph([], {"a": 0})


def test_rejects_missing_label_naming_the_node():
    with pytest.raises(ValueError, match="b"):
        LabeledGraph([("a", "b", 1.0)], {"a": 0})


def test_rejects_opinion_out_of_range():
    with pytest.raises(ValueError):
        LabeledGraph([("a", "b", 1.0)], {"a": 0, "b": 2}, num_opinions=2)
    with pytest.raises(ValueError):
        LabeledGraph([("a", "b", 1.0)], {"a": -1, "b": 0})


def test_rejects_fewer_than_two_opinion_slots():
    with pytest.raises(ValueError):
        LabeledGraph([("a", "b", 1.0)], {"a": 0, "b": 0}, num_opinions=1)


def test_num_opinions_defaults_to_max_label_plus_one():
    g = LabeledGraph([("a", "b", 1.0)], {"a": 0, "b": 4})
    assert g.num_opinions == 5
    g2 = LabeledGraph([("a", "b", 1.0)], {"a": 0, "b": 0})
    assert g2.num_opinions == 2


def test_nodes_are_sorted_ints_before_strings():
    g = LabeledGraph(
        [("x", 2, 1.0), (10, 2, 1.0)], {"x": 0, 2: 1, 10: 0}
    )
    assert g.nodes == (2, 10, "x")


def test_label_only_nodes_become_isolated():
    g = LabeledGraph([("a", "b", 1.0)], {"a": 0, "b": 1, "c": 1})
    assert g.nodes == ("a", "b", "c")
    assert g.node_count == 3
    assert g.edge_count == 1


def test_edges_sorted_by_node_order():
    g = LabeledGraph(
        [("c", "d", 1.0), ("a", "d", 1.0), ("a", "b", 1.0)],
        {"a": 0, "b": 0, "c": 1, "d": 1},
    )
    assert [(u, v) for u, v, _ in g.edges] == [("a", "b"), ("a", "d"), ("c", "d")]


def test_total_weight_sums_merged_edges():
    g = LabeledGraph(
        [("a", "b", 1.5), ("b", "a", 0.5), ("b", "c", 2.0)],
        {"a": 0, "b": 0, "c": 1},
    )
    assert g.total_weight == pytest.approx(4.0)


def test_adjacency_is_symmetric_and_weighted():
    g = LabeledGraph([("a", "b", 2.0), ("b", "c", 3.0)], {"a": 0, "b": 0, "c": 1})
    adj = g.adjacency()
    ia, ib, ic = (g.index_of(x) for x in "abc")
    assert adj[ia] == [(ib, 2.0)]
    assert sorted(adj[ib]) == [(ia, 2.0), (ic, 3.0)]
    assert adj[ic] == [(ib, 3.0)]


def test_replace_labels_keeps_structure():
    g = LabeledGraph([("a", "b", 1.0)], {"a": 0, "b": 1})
    g2 = g.replace_labels({"a": 2, "b": 2}, num_opinions=3)
    assert g2.edges == g.edges
    assert g2.opinions == {"a": 2, "b": 2}
    assert g2.num_opinions == 3
    assert g.opinions == {"a": 0, "b": 1}


def test_census_counts_include_isolated_nodes():
    g = LabeledGraph([("a", "b", 1.0)], {"a": 0, "b": 1, "c": 1, "d": 1})
    c = census(g)
    assert c.counts == (1, 3)
    assert c.total == 4
    assert c.fraction(1) == pytest.approx(0.75)


def test_census_degenerate_single_opinion():
    g = LabeledGraph([("a", "b", 1.0), ("b", "c", 1.0)], {"a": 0, "b": 0, "c": 0},
                     num_opinions=3)
    c = census(g)
    assert c.counts == (3, 0, 0)
    assert c.fractions == (1.0, 0.0, 0.0)


def test_census_fractions_sum_to_one_on_random_graphs():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(2, 30)
        k = rng.randint(2, 5)
        opinions = {i: rng.randrange(k) for i in range(n)}
        edges = [(i, (i + 1) % n, 1.0) for i in range(n - 1)]
        g = LabeledGraph(edges, opinions, num_opinions=k)
        assert math.fsum(census(g).fractions) == pytest.approx(1.0, abs=1e-12)


def test_example_fractions_thirteen_and_nine_of_twenty_two():
    opinions = {i: (0 if i < 13 else 1) for i in range(22)}
    edges = [(i, i + 1, 1.0) for i in range(21)]
    g = LabeledGraph(edges, opinions)
    c = census(g)
    assert c.fraction(0) == pytest.approx(13 / 22)
    assert c.fraction(1) == pytest.approx(9 / 22)


def test_edge_input_order_never_matters():
    rng = random.Random(3)
    edges = [("a", "b", 1.0), ("b", "c", 2.0), ("c", "d", 0.5), ("a", "d", 1.5)]
    labels = {"a": 0, "b": 1, "c": 0, "d": 1}
    ref = LabeledGraph(edges, labels)
    for _ in range(10):
        shuffled = edges[:]
        rng.shuffle(shuffled)
        flipped = [
            (v, u, w) if rng.random() < 0.5 else (u, v, w) for u, v, w in shuffled
        ]
        assert LabeledGraph(flipped, labels).edges == ref.edges
