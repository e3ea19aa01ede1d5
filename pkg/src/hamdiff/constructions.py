"""Explicit families of pairwise-different Hamiltonian paths.

Each construction returns a :class:`ConstructedFamily`: canonical,
deduplicated, lexicographically sorted paths together with the difference
predicate the family claims to satisfy.  Verification lives in
:mod:`hamdiff.certify`; constructions only build.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .core import (
    DSpec,
    HamPath,
    ValidationError,
    canonicalize,
    enumerate_paths,
)
from .relations import (
    DifferencePredicate,
    are_different,
    paths_matrix,
)
from .search import BipartiteGraph, max_matching
from . import _kernels


@dataclass(frozen=True)
class ConstructedFamily:
    """A family of canonical paths plus the predicate it claims to satisfy
    pairwise.  ``provenance`` records the construction and its parameters."""

    paths: tuple[HamPath, ...]
    claim: DifferencePredicate
    provenance: str

    def __post_init__(self):
        if not self.paths:
            raise ValidationError("a family needs at least one path")
        orders = {p.n for p in self.paths}
        if len(orders) != 1:
            raise ValidationError("family paths must share one order")
        if len(set(self.paths)) != len(self.paths):
            raise ValidationError("family paths must be distinct")

    @property
    def n(self) -> int:
        return self.paths[0].n

    @property
    def size(self) -> int:
        return len(self.paths)


def _family(paths, claim: DifferencePredicate, provenance: str) -> ConstructedFamily:
    # canonical dedup; sizes are always post-dedup counts
    return ConstructedFamily(
        paths=tuple(sorted(set(paths))), claim=claim, provenance=provenance
    )


def greedy_family(n: int, predicate: DifferencePredicate,
                  seed: int | None = None) -> ConstructedFamily:
    """Scan all canonical paths and keep each one that is different from
    everything kept so far.

    The scan order is lexicographic (deterministic); a seed shuffles it for
    experimentation.  Equivalent to repeatedly selecting a path and deleting
    the set of paths not different from it, so the family size is at least
    (number of paths) / (largest such blocked set).
    """
    candidates = enumerate_paths(n)
    if seed is not None:
        random.Random(seed).shuffle(candidates)
    kept: list[HamPath] = []
    for path in candidates:
        if all(are_different(path, other, predicate) for other in kept):
            kept.append(path)
    return _family(
        kept, predicate,
        f"greedy(n={n}, predicate={predicate.render()}, seed={seed})",
    )


def count_no_even_neighbors(h: HamPath) -> int:
    """Number of canonical paths (including ``h`` itself) whose union with
    ``h`` contains no even cycle, by brute force over all paths."""
    paths = enumerate_paths(h.n)
    idx = paths.index(h)
    even_mask = DSpec("even").length_mask(h.n)
    masks = _kernels.row_union_cycle_masks(paths_matrix(paths), idx, 0, even_mask)
    return sum(1 for m in masks.tolist() if m & even_mask == 0)


def bipartite_family(n: int) -> ConstructedFamily:
    """All canonical paths alternating between the odd and the even labels.

    The union of any two is a subgraph of the complete bipartite graph on
    those parts, so every cycle in it is even.
    """
    if n < 4:
        raise ValidationError("alternating families need n >= 4")
    odds = [v for v in range(1, n + 1) if v % 2 == 1]
    evens = [v for v in range(1, n + 1) if v % 2 == 0]
    seqs = []
    starts = [(odds, evens)] if n % 2 == 1 else [(odds, evens), (evens, odds)]
    for first, second in starts:
        for pa in itertools.permutations(first):
            for pb in itertools.permutations(second):
                seq = [None] * n
                seq[0::2] = pa
                seq[1::2] = pb
                seqs.append(canonicalize(seq))
    return _family(
        seqs, DifferencePredicate.cycle_in(DSpec("even")), f"bipartite(n={n})"
    )


@dataclass(frozen=True)
class BlockSystem:
    """Partition of 1..n into consecutive blocks of size c, each traversed
    as the fixed increasing path."""

    n: int
    block_size: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.block_size < 2 or self.n % self.block_size:
            raise ValidationError("block size must be >= 2 and divide n")
        flat = [v for block in self.blocks for v in block]
        if sorted(flat) != list(range(1, self.n + 1)):
            raise ValidationError("blocks must partition 1..n")

    @classmethod
    def consecutive(cls, n: int, c: int) -> "BlockSystem":
        if c < 2 or n % c:
            raise ValidationError(f"block size {c} must be >= 2 and divide {n}")
        blocks = tuple(
            tuple(range(c * k + 1, c * k + c + 1)) for k in range(n // c)
        )
        return cls(n=n, block_size=c, blocks=blocks)

    def path_for_order(self, order: tuple[int, ...]) -> HamPath:
        """Concatenate the blocks in the given order, linking the last
        vertex of each block to the first vertex of the next."""
        seq = [v for k in order for v in self.blocks[k]]
        return canonicalize(seq)


def block_family(n: int, c: int) -> ConstructedFamily:
    """One path per permutation of the n/c consecutive blocks.

    Any two distinct members disagree on the block order, which forces a
    cycle traversing k whole blocks and k linking edges, of length ck.
    """
    system = BlockSystem.consecutive(n, c)
    count = n // c
    paths = [
        system.path_for_order(order)
        for order in itertools.permutations(range(count))
    ]
    return _family(
        paths,
        DifferencePredicate.cycle_in(DSpec("div", c=c)),
        f"block(n={n}, c={c})",
    )


def shifted_block_family(n: int, c: int) -> ConstructedFamily:
    """Block permutations with the first block pinned in first position.

    Pinning the first block makes every pairwise union contain a cycle with
    two extra linking edges, of length ck + 2, hence of length 2 mod c.
    Requires c >= 3 (for c = 2 such lengths are even and the claim would be
    empty under not-divisible-by-2).
    """
    if c < 3:
        raise ValidationError("shifted block families need c >= 3")
    system = BlockSystem.consecutive(n, c)
    count = n // c
    paths = [
        system.path_for_order((0,) + order)
        for order in itertools.permutations(range(1, count))
    ]
    return _family(
        paths,
        DifferencePredicate.cycle_in(DSpec("ndiv", c=c)),
        f"shifted-block(n={n}, c={c})",
    )


def fixed_endpoint_family(n: int, c: int) -> ConstructedFamily:
    """All (n-2)! canonical paths with endpoints 1 and n.

    Two paths with equal endpoints yield two cycles sharing a common
    subpath; if every cycle length were divisible by c, the combined cycle
    would force c to divide 2 or 4.  Hence the claim holds for any c > 1
    other than 2 and 4.  The endpoint choice {1, n} is arbitrary; all
    choices are isomorphic.
    """
    if n < 4:
        raise ValidationError("fixed-endpoint families need n >= 4")
    if c in (1, 2, 4) or c < 1:
        raise ValidationError("modulus must be > 1 and different from 2 and 4")
    paths = [
        canonicalize((1,) + middle + (n,))
        for middle in itertools.permutations(range(2, n))
    ]
    return _family(
        paths,
        DifferencePredicate.cycle_in(DSpec("ndiv", c=c)),
        f"fixed-endpoint(n={n}, c={c})",
    )


_QUAD_STRAIGHT = (1, 2, 3, 4)
_QUAD_CROSSED = (2, 4, 1, 3)


def k4_family(n: int) -> ConstructedFamily:
    """2^(n/4) paths whose pairwise unions contain a 4-clique.

    Vertices are split into consecutive 4-tuples; each tuple is traversed
    either in increasing order or in the unique crossing order whose union
    with it spans all 6 edges of the tuple.  Two members differing in some
    tuple therefore overlay a complete graph on those 4 vertices.
    """
    if n % 4:
        raise ValidationError("4-clique families need 4 | n")
    tuples = [tuple(range(4 * k + 1, 4 * k + 5)) for k in range(n // 4)]
    paths = []
    for choice in itertools.product((_QUAD_STRAIGHT, _QUAD_CROSSED),
                                    repeat=len(tuples)):
        seq = [
            block[pos - 1]
            for block, pattern in zip(tuples, choice)
            for pos in pattern
        ]
        paths.append(canonicalize(seq))
    return _family(
        paths, DifferencePredicate.contains_k4(), f"k4(n={n})"
    )


def endpoint_swap_quadruple(h: HamPath) -> list[HamPath]:
    """The four paths obtained from ``h`` by swapping its first two
    vertices, its last two, or both; pairwise unions contain only odd
    cycles (three-cycles at the touched ends).

    Only defined for even n >= 6: at n = 4 the both-ends swap closes a
    4-cycle with the original path.
    """
    n = h.n
    if n % 2 or n < 6:
        raise ValidationError("endpoint swaps need even n >= 6")
    base = list(range(1, n + 1))
    swap_l = [2, 1] + base[2:]
    swap_r = base[:-2] + [n, n - 1]
    swap_both = [2, 1] + base[2:-2] + [n, n - 1]
    relabel = h.seq
    return [
        canonicalize(relabel[pos - 1] for pos in template)
        for template in (base, swap_l, swap_r, swap_both)
    ]


def _k5_cycles() -> list[frozenset[tuple[int, int]]]:
    """Edge sets of the 12 Hamiltonian cycles of K_5, in a fixed order."""
    cycles = {}
    for rest in itertools.permutations(range(2, 6)):
        if rest[0] > rest[-1]:
            continue  # each cycle once: start at 1, fix the orientation
        verts = (1,) + rest
        cycles[verts] = frozenset(
            tuple(sorted((verts[i], verts[(i + 1) % 5]))) for i in range(5)
        )
    return [cycles[key] for key in sorted(cycles)]


def _k5_bipartite_subgraphs() -> list[frozenset[tuple[int, int]]]:
    """Edge sets of the 10 complete bipartite K_{2,3} subgraphs of K_5,
    ordered by their 2-element part."""
    out = []
    for pair in itertools.combinations(range(1, 6), 2):
        others = [v for v in range(1, 6) if v not in pair]
        out.append(frozenset(
            tuple(sorted((u, v))) for u in pair for v in others
        ))
    return out


def _edges_to_path(n: int, edges: frozenset[tuple[int, int]]) -> HamPath | None:
    """Decode an edge set into the canonical spanning path it forms, if any."""
    if len(edges) != n - 1:
        return None
    adj = {v: [] for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    ends = [v for v, nbrs in adj.items() if len(nbrs) == 1]
    if len(ends) != 2 or any(len(nbrs) > 2 for nbrs in adj.values()):
        return None
    seq = [min(ends)]
    prev = None
    while len(seq) < n:
        step = [w for w in adj[seq[-1]] if w != prev]
        if not step:
            return None
        prev = seq[-1]
        seq.append(step[0])
    if len(set(seq)) != n:
        return None
    return canonicalize(seq)


def k5_incidence_graph() -> tuple[BipartiteGraph, list[HamPath | None]]:
    """Incidence between the 5-cycles and the K_{2,3} subgraphs of K_5.

    A cycle and a bipartite subgraph are adjacent exactly when their edge
    intersection is a Hamiltonian path; that shared path decodes each edge.
    Returns the bipartite graph and, per edge of ``sorted(edges)``, the
    decoded path.
    """
    cycles = _k5_cycles()
    bipartites = _k5_bipartite_subgraphs()
    edges = []
    decoded = {}
    for i, cyc in enumerate(cycles):
        for j, bip in enumerate(bipartites):
            shared = _edges_to_path(5, cyc & bip)
            if shared is not None:
                edges.append((i, j))
                decoded[(i, j)] = shared
    graph = BipartiteGraph(
        left_count=len(cycles), right_count=len(bipartites),
        edges=frozenset(edges),
    )
    return graph, [decoded[e] for e in sorted(edges)]


def triangle_matching_family() -> ConstructedFamily:
    """Ten triangle-different paths in K_5 via maximum matching.

    Every path of K_5 lies in exactly one 5-cycle (close its endpoints) and
    one K_{2,3} (its alternation bipartition); two paths sharing either
    container cannot have a triangle in their union.  A maximum matching of
    the biregular cycle/bipartite incidence graph is therefore decoded,
    edge by edge, into paths with pairwise distinct containers.
    """
    graph, _ = k5_incidence_graph()
    matching = max_matching(graph)
    cycles = _k5_cycles()
    bipartites = _k5_bipartite_subgraphs()
    paths = []
    for i, j in matching:
        shared = _edges_to_path(5, cycles[i] & bipartites[j])
        assert shared is not None
        paths.append(shared)
    return _family(
        paths,
        DifferencePredicate.cycle_in(DSpec("in", lengths=frozenset({3}))),
        "m53()",
    )
