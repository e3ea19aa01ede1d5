import random

import pytest

from hamdiff.core import ValidationError
from hamdiff.relations import DifferencePredicate, build_compat_graph
from hamdiff.search import (
    BipartiteGraph,
    independent_check,
    max_clique,
    max_matching,
)

from oracles import brute_clique_number, brute_matching_size


def compat(n, text):
    return build_compat_graph(n, DifferencePredicate.parse(text))


class TestMaxClique:
    def test_complete_graph_n4(self):
        result = max_clique(compat(4, "cycle:all"))
        assert result.size == 12 and result.optimal
        assert result.members == tuple(range(12))

    def test_complete_graph_n5(self):
        result = max_clique(compat(5, "cycle:all"))
        assert result.size == 60 and result.optimal

    def test_triangle_value_n5(self):
        result = max_clique(compat(5, "cycle:in=3"))
        assert result.size == 10 and result.optimal

    def test_odd_value_n5(self):
        assert max_clique(compat(5, "cycle:odd")).size == 10

    def test_matches_subset_oracle_n4(self):
        for text in ("cycle:in=3", "cycle:odd", "cycle:even", "k4"):
            g = compat(4, text)
            assert max_clique(g).size == brute_clique_number(g.adjacency)

    def test_members_form_verified_clique(self):
        g = compat(5, "cycle:even")
        result = max_clique(g)
        assert result.optimal
        assert independent_check(g, result.members)
        assert len(result.members) == result.size

    def test_initial_incumbent_cannot_improve(self):
        g = compat(5, "cycle:even")
        result = max_clique(g)
        again = max_clique(g, initial_members=result.members)
        assert again.size == result.size

    def test_initial_incumbent_must_be_clique(self):
        g = compat(4, "cycle:even")
        with pytest.raises(ValidationError):
            max_clique(g, initial_members=(0, 1, 0))

    def test_schedule_independent_size(self):
        for text in ("cycle:in=3", "cycle:even"):
            g = compat(5, text)
            serial = max_clique(g, workers=1)
            parallel = max_clique(g, workers=4)
            assert serial.size == parallel.size
            assert independent_check(g, parallel.members)

    def test_budget_exhaustion_flags_lower_bound(self):
        g = compat(6, "cycle:even")  # dense 360-vertex graph, hard to prove
        result = max_clique(g, budget_seconds=1)
        assert not result.optimal
        assert independent_check(g, result.members)
        assert result.size >= 1

    def test_monotone_in_the_length_set(self):
        # {3} within odd within all; even within all
        triangle = max_clique(compat(5, "cycle:in=3")).size
        odd = max_clique(compat(5, "cycle:odd")).size
        even = max_clique(compat(5, "cycle:even")).size
        everything = max_clique(compat(5, "cycle:all")).size
        assert triangle <= odd <= everything
        assert even <= everything
        assert triangle == odd == 10

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_odd_value_matches_closed_form(self, n):
        from hamdiff.bounds import eval_formula

        result = max_clique(compat(n, "cycle:odd"), budget_seconds=120)
        assert result.optimal
        assert result.size == eval_formula("odd", n).lower

    def test_solved_values_sit_inside_their_bound_windows(self):
        from hamdiff.bounds import eval_formula

        # every instance the solver completes at n=5 must respect the
        # closed-form window for its regime
        for name, text in [("odd", "cycle:odd"), ("even", "cycle:even"),
                           ("all", "cycle:all"), ("m53", "cycle:in=3")]:
            result = max_clique(compat(5, text))
            assert result.optimal
            row = eval_formula(name, 5)
            if row.lower is not None:
                assert result.size >= row.lower
            if row.upper is not None:
                assert result.size <= row.upper

    def test_bad_budget(self):
        with pytest.raises(ValidationError):
            max_clique(compat(4, "cycle:all"), budget_seconds=0)


class TestIndependentCheck:
    def test_duplicates_fail(self):
        g = compat(4, "cycle:all")
        assert not independent_check(g, (1, 1))

    def test_out_of_range_raises(self):
        g = compat(4, "cycle:all")
        with pytest.raises(IndexError):
            independent_check(g, (0, 99))

    def test_non_clique(self):
        g = compat(4, "cycle:odd")
        result = max_clique(g)
        assert independent_check(g, result.members)
        outside = next(
            i for i in range(g.num_vertices) if i not in result.members
        )
        assert not independent_check(g, result.members + (outside,))


class TestMaxMatching:
    def test_empty_graph(self):
        g = BipartiteGraph(3, 3, frozenset())
        assert max_matching(g) == []

    def test_complete_3x3(self):
        edges = frozenset((l, r) for l in range(3) for r in range(3))
        assert len(max_matching(BipartiteGraph(3, 3, edges))) == 3

    def test_cycle_bipartite_incidence(self):
        from hamdiff.constructions import k5_incidence_graph

        graph, _ = k5_incidence_graph()
        matching = max_matching(graph)
        assert len(matching) == 10
        assert len({l for l, _ in matching}) == 10
        assert len({r for _, r in matching}) == 10
        # independent exhaustive check on the full 12-left-vertex instance
        assert brute_matching_size(
            graph.left_count, graph.right_count, graph.edges
        ) == 10

    def test_matching_is_a_matching(self):
        rng = random.Random(4321)
        for _ in range(30):
            left, right = rng.randrange(1, 9), rng.randrange(1, 9)
            edges = frozenset(
                (l, r)
                for l in range(left)
                for r in range(right)
                if rng.random() < 0.4
            )
            g = BipartiteGraph(left, right, edges)
            matching = max_matching(g)
            assert all(e in edges for e in matching)
            assert len({l for l, _ in matching}) == len(matching)
            assert len({r for _, r in matching}) == len(matching)

    def test_matches_exhaustive_oracle(self):
        rng = random.Random(98)
        for _ in range(40):
            left, right = rng.randrange(1, 11), rng.randrange(1, 9)
            edges = frozenset(
                (l, r)
                for l in range(left)
                for r in range(right)
                if rng.random() < 0.35
            )
            g = BipartiteGraph(left, right, edges)
            assert len(max_matching(g)) == brute_matching_size(left, right, edges)

    def test_edge_validation(self):
        with pytest.raises(ValidationError):
            BipartiteGraph(2, 2, frozenset({(2, 0)}))

    def test_deterministic(self):
        edges = frozenset({(0, 1), (0, 0), (1, 0), (2, 1), (2, 0)})
        g = BipartiteGraph(3, 2, edges)
        assert max_matching(g) == max_matching(g)
