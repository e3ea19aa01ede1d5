import itertools

import pytest

from hamdiff.core import (
    CapacityError,
    DSpec,
    DSpecParseError,
    HamPath,
    UnionGraph,
    ValidationError,
    canonical_cycle,
    canonicalize,
    cycle_lengths,
    enumerate_paths,
    iter_simple_cycles,
    parse_dspec,
    union_of,
)

from oracles import subset_cycle_lengths


class TestCanonicalize:
    def test_reversal_identification(self):
        assert canonicalize((3, 2, 1)).seq == (1, 2, 3)

    def test_already_canonical(self):
        assert canonicalize((1, 2, 3)).seq == (1, 2, 3)

    def test_lexicographic_comparison(self):
        # reversal of (2,4,1,3) is (3,1,4,2), which is larger
        assert canonicalize((2, 4, 1, 3)).seq == (2, 4, 1, 3)

    def test_rejects_non_permutation(self):
        with pytest.raises(ValidationError):
            canonicalize((1, 2, 2))
        with pytest.raises(ValidationError):
            canonicalize((1, 3))
        with pytest.raises(ValidationError):
            HamPath((3, 2, 1))  # not canonical

    def test_too_short(self):
        with pytest.raises(ValidationError):
            canonicalize((1,))


class TestEnumeratePaths:
    def test_n3_exhaustive(self):
        # dedup of all 3! sequences by reversal
        expected = sorted(
            {min(s, s[::-1]) for s in itertools.permutations((1, 2, 3))}
        )
        assert [p.seq for p in enumerate_paths(3)] == expected
        assert expected == [(1, 2, 3), (1, 3, 2), (2, 1, 3)]

    @pytest.mark.parametrize("n,count", [(4, 12), (5, 60), (6, 360)])
    def test_counts_are_half_factorials(self, n, count):
        assert len(enumerate_paths(n)) == count

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_sorted_canonical_unique(self, n):
        paths = enumerate_paths(n)
        assert paths == sorted(paths)
        assert len(set(paths)) == len(paths)
        for p in paths:
            assert canonicalize(p.seq) == p

    def test_capacity(self):
        with pytest.raises(CapacityError):
            enumerate_paths(1)
        with pytest.raises(CapacityError):
            enumerate_paths(10)


class TestUnionOf:
    def test_triangle_union(self):
        g = union_of(canonicalize((1, 2, 3)), canonicalize((1, 3, 2)))
        assert g.edges == frozenset({(1, 2), (2, 3), (1, 3)})

    def test_k4_union(self):
        g = union_of(canonicalize((1, 2, 3, 4)), canonicalize((2, 4, 1, 3)))
        assert len(g.edges) == 6  # complete graph on 4 vertices

    def test_self_union_is_the_path(self):
        h = canonicalize((1, 2, 3, 4))
        g = union_of(h, h)
        assert g.edges == h.edges()
        assert len(g.edges) == h.n - 1
        assert all(tag == "both" for tag in g.origin.values())

    def test_origin_tags(self):
        a, b = canonicalize((1, 2, 3)), canonicalize((1, 3, 2))
        g = union_of(a, b)
        assert g.origin[(1, 2)] == "first-only"
        assert g.origin[(1, 3)] == "second-only"
        assert g.origin[(2, 3)] == "both"

    def test_mismatched_orders(self):
        with pytest.raises(ValidationError):
            union_of(canonicalize((1, 2, 3)), canonicalize((1, 2, 3, 4)))

    def test_degree_bound_enforced(self):
        star = [(1, v) for v in range(2, 7)]
        with pytest.raises(ValidationError):
            UnionGraph.from_edges(6, star)


class TestCycleLengths:
    def test_k4(self):
        g = union_of(canonicalize((1, 2, 3, 4)), canonicalize((2, 4, 1, 3)))
        assert cycle_lengths(g) == {3, 4}

    def test_single_path_is_acyclic(self):
        h = canonicalize((1, 2, 3, 4, 5))
        assert cycle_lengths(union_of(h, h)) == set()

    def test_four_cycle_only(self):
        g = UnionGraph.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
        assert cycle_lengths(g) == {4}

    @pytest.mark.parametrize("n", [4, 5])
    def test_matches_subset_oracle_over_all_pairs(self, n):
        paths = enumerate_paths(n)
        for a, b in itertools.combinations(paths, 2):
            g = union_of(a, b)
            assert cycle_lengths(g) == subset_cycle_lengths(n, g.edges)

    @pytest.mark.parametrize("n", [4, 5])
    def test_distinct_pairs_always_cycle(self, n):
        # two distinct canonical paths give >= n edges, hence a cycle
        paths = enumerate_paths(n)
        for a, b in itertools.combinations(paths, 2):
            lengths = cycle_lengths(union_of(a, b))
            assert lengths
            assert all(3 <= length <= n for length in lengths)

    def test_symmetric(self):
        paths = enumerate_paths(5)
        for a, b in itertools.combinations(paths[:12], 2):
            assert cycle_lengths(union_of(a, b)) == cycle_lengths(union_of(b, a))

    def test_iter_simple_cycles_agrees(self):
        paths = enumerate_paths(5)
        for a, b in itertools.combinations(paths[::7], 2):
            g = union_of(a, b)
            listed = list(iter_simple_cycles(g))
            assert len(set(listed)) == len(listed)
            assert {c.length for c in listed} == cycle_lengths(g)
            for c in listed:
                assert c.edges() <= g.edges


class TestCanonicalCycle:
    def test_rotation_and_reflection(self):
        assert canonical_cycle((2, 3, 1)).verts == (1, 2, 3)
        assert canonical_cycle((3, 2, 1)).verts == (1, 2, 3)
        assert canonical_cycle((4, 1, 5, 2)).verts == (1, 4, 2, 5)

    def test_rejects_short_or_repeated(self):
        with pytest.raises(ValidationError):
            canonical_cycle((1, 2))
        with pytest.raises(ValidationError):
            canonical_cycle((1, 2, 2))


class TestDSpec:
    def test_explicit_singleton(self):
        d = parse_dspec("in=3")
        assert d == DSpec("in", lengths=frozenset({3}))
        assert d.contains(3) and not d.contains(4)

    def test_odd_equals_ndiv2(self):
        odd, ndiv2 = parse_dspec("odd"), parse_dspec("ndiv=2")
        assert all(odd.contains(v) == ndiv2.contains(v) for v in range(3, 101))

    def test_even_equals_div2(self):
        even, div2 = parse_dspec("even"), parse_dspec("div=2")
        assert all(even.contains(v) == div2.contains(v) for v in range(3, 101))

    def test_divisible_membership(self):
        d = parse_dspec("div=3")
        assert d.contains(6) and not d.contains(7)

    def test_lengths_below_three_excluded(self):
        for text in ("all", "odd", "even", "div=2", "ndiv=2", "in=3,4"):
            d = parse_dspec(text)
            assert not any(d.contains(v) for v in (0, 1, 2))

    @pytest.mark.parametrize(
        "text", ["all", "odd", "even", "div=3", "ndiv=5", "in=3,5,7"]
    )
    def test_render_round_trip(self, text):
        d = parse_dspec(text)
        assert parse_dspec(d.render()) == d
        assert d.render() == text

    @pytest.mark.parametrize(
        "text,pos",
        [
            ("div=1", 4),      # modulus below 2
            ("in=2", 3),       # length below 3
            ("frobnicate", 0),
            ("div=x", 4),
            ("in=3,,5", 5),
            ("div=", 4),
            ("in=", 3),
            ("ODD", 0),        # grammar is exact lowercase strings
            ("in=3, 5", 5),    # no spaces
        ],
    )
    def test_parse_errors_carry_position(self, text, pos):
        with pytest.raises(DSpecParseError) as err:
            parse_dspec(text)
        assert err.value.position == pos

    def test_length_mask(self):
        d = parse_dspec("odd")
        mask = d.length_mask(6)
        assert mask == (1 << 3) | (1 << 5)
