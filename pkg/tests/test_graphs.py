import json
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relpoly.complete import reliability_complete, spanning_counts_complete
from relpoly.graphs import (
    SimpleGraph,
    bridge_pair_counts,
    bridges,
    brute_force_spanning_counts,
    complete_graph,
    connected_graphs,
    cycle_graph,
    is_connected,
    load_graph,
    monte_carlo_reliability,
    one_point_union,
    path_graph,
)
from relpoly.polycore import evaluate_exact, from_spanning_form, spanning_derivative

PAW = SimpleGraph(4, ((0, 1), (1, 2), (0, 2), (2, 3)))


def rel(g):
    return from_spanning_form(brute_force_spanning_counts(g))


class TestStructure:
    def test_validation(self):
        with pytest.raises(ValueError):
            SimpleGraph(2, ((0, 0),))
        with pytest.raises(ValueError):
            SimpleGraph(2, ((0, 1), (1, 0)))
        with pytest.raises(ValueError):
            SimpleGraph(2, ((0, 2),))
        with pytest.raises(ValueError):
            SimpleGraph(0, ())

    def test_connectivity(self):
        assert is_connected(SimpleGraph(1, ()))
        assert is_connected(path_graph(5))
        assert not is_connected(SimpleGraph(3, ((0, 1),)))

    def test_bridges(self):
        assert bridges(complete_graph(3)) == []
        assert bridges(path_graph(4)) == [(0, 1), (1, 2), (2, 3)]
        assert bridges(PAW) == [(2, 3)]
        assert bridges(cycle_graph(5)) == []

    def test_one_point_union(self):
        g = one_point_union([complete_graph(3), complete_graph(2)], [2, 1])
        assert g.vertex_count == 4
        assert sorted(g.edges) == [(0, 1), (0, 2), (0, 3), (1, 2)]
        assert bridges(g) == [(0, 3)]

    def test_union_arguments(self):
        with pytest.raises(ValueError):
            one_point_union([complete_graph(3)], [])
        with pytest.raises(ValueError):
            one_point_union([complete_graph(3)], [3])

    def test_enumeration_sizes(self):
        graphs = list(connected_graphs(4))
        # labelled connected graphs on 1..4 vertices: 1 + 1 + 4 + 38
        assert len(graphs) == 44
        assert all(is_connected(g) for g in graphs)
        assert all(g.m <= 4 for g in connected_graphs(4, 4))


class TestBruteForce:
    @pytest.mark.parametrize("n", range(2, 7))
    def test_matches_recurrence(self, n):
        assert brute_force_spanning_counts(complete_graph(n)) == spanning_counts_complete(n)

    def test_path_and_cycle(self):
        q = F(1, 3)
        assert evaluate_exact(rel(path_graph(4)), q) == (1 - q) ** 3
        assert evaluate_exact(rel(cycle_graph(4)), q) == (1 - q) ** 4 + 4 * q * (1 - q) ** 3

    def test_disconnected_graph_has_zero_reliability(self):
        assert rel(SimpleGraph(3, ((0, 1),))).is_zero()

    def test_bridge_pairs(self):
        assert bridge_pair_counts(complete_graph(3)) == [0, 6, 0]
        assert bridge_pair_counts(complete_graph(2)) == [1]

    @pytest.mark.parametrize("g", list(connected_graphs(4)), ids=lambda g: str(g.edges))
    def test_bridge_pair_identity(self, g):
        if g.m == 0:
            return
        deriv = spanning_derivative(brute_force_spanning_counts(g)).counts
        assert bridge_pair_counts(g) == [-c for c in deriv]

    def test_product_law_example(self):
        g = one_point_union([PAW, cycle_graph(4)], [3, 0])
        assert rel(g) == rel(PAW) * rel(cycle_graph(4))

    def test_too_many_edges(self):
        with pytest.raises(ValueError):
            brute_force_spanning_counts(complete_graph(9))


class TestMonteCarlo:
    def test_extremes(self):
        g = complete_graph(4)
        assert monte_carlo_reliability(g, 0, 1000, 1).successes == 1000
        assert monte_carlo_reliability(g, 1, 1000, 1).successes == 0

    def test_deterministic(self):
        g = complete_graph(4)
        a = monte_carlo_reliability(g, F(1, 2), 50_000, 11)
        b = monte_carlo_reliability(g, F(1, 2), 50_000, 11)
        assert a == b
        assert a.to_json()["algorithm"] == b.algorithm

    def test_close_to_exact(self):
        g = complete_graph(4)
        est = monte_carlo_reliability(g, F(1, 2), 200_000, 3)
        exact = evaluate_exact(reliability_complete(4), F(1, 2))
        assert abs(float(est.estimate - exact)) <= 4 * float(est.std_error)

    def test_coverage_over_a_seed_set(self):
        g = complete_graph(4)
        q = F(1, 4)
        exact = evaluate_exact(reliability_complete(4), q)
        inside = 0
        for seed in range(200):
            est = monte_carlo_reliability(g, q, 4000, seed)
            inside += abs(float(est.estimate - exact)) <= 4 * float(est.std_error)
        assert inside >= 198

    def test_invalid(self):
        with pytest.raises(ValueError):
            monte_carlo_reliability(complete_graph(3), F(3, 2), 10, 0)
        with pytest.raises(ValueError):
            monte_carlo_reliability(complete_graph(3), F(1, 2), 0, 0)

    @given(st.integers(0, 2 ** 64 - 1))
    def test_seed_range(self, seed):
        est = monte_carlo_reliability(path_graph(3), F(1, 2), 200, seed)
        assert 0 <= est.successes <= 200


class TestLoadGraph:
    def test_json(self, tmp_path):
        p = tmp_path / "g.json"
        p.write_text(json.dumps({"vertices": 3, "edges": [[0, 1], [1, 2]]}))
        assert load_graph(p) == path_graph(3)

    def test_edge_list(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("# triangle\n0 1\n1 2\n\n2 0\n")
        g = load_graph(p)
        assert g.vertex_count == 3 and sorted(g.edges) == sorted(complete_graph(3).edges)

    def test_bad_line(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("0 1 2\n")
        with pytest.raises(ValueError, match=":1:"):
            load_graph(p)
