"""Pairwise difference predicates over Hamiltonian paths, concrete
witnesses, and the compatibility graph whose cliques are valid families.

Two predicates are supported: the union of the two paths contains a cycle
whose length lies in a DSpec, or the union contains a 4-clique.  Both are
irreflexive (a path unioned with itself is a tree) and symmetric.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import (
    CapacityError,
    Cycle,
    DSpec,
    HamPath,
    UnionGraph,
    ValidationError,
    enumerate_paths,
    iter_simple_cycles,
    parse_dspec,
    union_of,
)
from . import _kernels

# Building the n!/2 x n!/2 pairwise relation is routine through n = 7
# (2520 paths); n = 8 (20160 paths) is accepted but takes a while.
MAX_COMPAT_N = 8

PREDICATE_CYCLE = "cycle"
PREDICATE_K4 = "k4"


@dataclass(frozen=True)
class DifferencePredicate:
    """Diversity relation on same-order Hamiltonian paths."""

    kind: str
    dspec: DSpec | None = None

    def __post_init__(self):
        if self.kind == PREDICATE_CYCLE:
            if self.dspec is None:
                raise ValidationError("cycle predicates need a DSpec")
        elif self.kind == PREDICATE_K4:
            if self.dspec is not None:
                raise ValidationError("the 4-clique predicate takes no DSpec")
        else:
            raise ValidationError(f"unknown predicate kind {self.kind!r}")

    @classmethod
    def cycle_in(cls, dspec: DSpec) -> "DifferencePredicate":
        return cls(PREDICATE_CYCLE, dspec)

    @classmethod
    def contains_k4(cls) -> "DifferencePredicate":
        return cls(PREDICATE_K4)

    @classmethod
    def parse(cls, text: str) -> "DifferencePredicate":
        if text == PREDICATE_K4:
            return cls.contains_k4()
        if text.startswith("cycle:"):
            return cls.cycle_in(parse_dspec(text[len("cycle:"):]))
        raise ValidationError(f"unknown predicate text {text!r}")

    def render(self) -> str:
        if self.kind == PREDICATE_K4:
            return PREDICATE_K4
        return f"cycle:{self.dspec.render()}"

    def __str__(self) -> str:
        return self.render()


WITNESS_CYCLE = "cycle"
WITNESS_CLIQUE4 = "clique4"


@dataclass(frozen=True)
class Witness:
    """Concrete certificate that a pair of paths satisfies a predicate:
    either a cycle (in canonical rotation) or the 4 vertices of a clique."""

    kind: str
    verts: tuple[int, ...]

    def __post_init__(self):
        if self.kind == WITNESS_CYCLE:
            Cycle(self.verts)  # reuse the canonical-rotation validation
        elif self.kind == WITNESS_CLIQUE4:
            if len(self.verts) != 4 or len(set(self.verts)) != 4:
                raise ValidationError("a clique witness lists 4 distinct vertices")
            if tuple(sorted(self.verts)) != self.verts:
                raise ValidationError("clique witness vertices must be sorted")
        else:
            raise ValidationError(f"unknown witness kind {self.kind!r}")

    @property
    def length(self) -> int:
        return len(self.verts)

    def is_valid_for(self, g: UnionGraph, predicate: DifferencePredicate) -> bool:
        """Recheck this witness against a union graph, from scratch."""
        if self.kind == WITNESS_CYCLE:
            if predicate.kind != PREDICATE_CYCLE:
                return False
            cycle = Cycle(self.verts)
            return predicate.dspec.contains(cycle.length) and cycle.edges() <= g.edges
        if predicate.kind != PREDICATE_K4:
            return False
        return all(
            g.has_edge(u, v) for u, v in itertools.combinations(self.verts, 2)
        )


def _check_same_order(a: HamPath, b: HamPath) -> None:
    if a.n != b.n:
        raise ValidationError(f"paths have different orders: {a.n} vs {b.n}")


def contains_k4(g: UnionGraph) -> bool:
    """True iff some 4 vertices of ``g`` span all 6 edges (brute force
    over 4-subsets; cheap at desk scale)."""
    return first_k4(g) is not None


def first_k4(g: UnionGraph) -> tuple[int, ...] | None:
    """Lexicographically first 4-clique of ``g``, or None."""
    edges = g.edges
    for quad in itertools.combinations(range(1, g.n + 1), 4):
        if all(
            (u, v) in edges for u, v in itertools.combinations(quad, 2)
        ):
            return quad
    return None


def are_different(a: HamPath, b: HamPath, predicate: DifferencePredicate) -> bool:
    """Does the pair satisfy the predicate?  Symmetric, false for a == b."""
    _check_same_order(a, b)
    if a == b:
        return False
    if predicate.kind == PREDICATE_K4:
        return contains_k4(union_of(a, b))
    dmask = predicate.dspec.length_mask(a.n)
    if dmask == 0:
        return False
    return bool(_kernels.union_cycle_mask(a.seq, b.seq, dmask) & dmask)


def find_witness(a: HamPath, b: HamPath,
                 predicate: DifferencePredicate) -> Witness | None:
    """A concrete, re-validated witness for the pair, or None.

    Cycle witnesses are tie-broken by lowest length, then lexicographically
    smallest vertex set, then canonical rotation, so certificates are
    byte-stable across runs.
    """
    _check_same_order(a, b)
    if a == b:
        return None
    g = union_of(a, b)
    if predicate.kind == PREDICATE_K4:
        quad = first_k4(g)
        if quad is None:
            return None
        witness = Witness(WITNESS_CLIQUE4, quad)
    else:
        best = None
        for cycle in iter_simple_cycles(g):
            if not predicate.dspec.contains(cycle.length):
                continue
            key = (cycle.length, tuple(sorted(cycle.verts)), cycle.verts)
            if best is None or key < best[0]:
                best = (key, cycle)
        if best is None:
            return None
        witness = Witness(WITNESS_CYCLE, best[1].verts)
    assert witness.is_valid_for(g, predicate)
    return witness


def witness_cycle_of_length(a: HamPath, b: HamPath, length: int) -> Cycle | None:
    """One concrete cycle of the requested length from the pair's union,
    smallest vertex set first, or None if no such cycle exists."""
    _check_same_order(a, b)
    best = None
    for cycle in iter_simple_cycles(union_of(a, b)):
        if cycle.length != length:
            continue
        key = (tuple(sorted(cycle.verts)), cycle.verts)
        if best is None or key < best[0]:
            best = (key, cycle)
    return best[1] if best else None


@dataclass(frozen=True)
class CompatibilityGraph:
    """Graph on all canonical paths of K_n; edges join pairs satisfying the
    predicate.  Paths are indexed lexicographically, adjacency rows are
    integer bitsets."""

    n: int
    predicate: DifferencePredicate
    paths: tuple[HamPath, ...]
    adjacency: tuple[int, ...]

    @property
    def num_vertices(self) -> int:
        return len(self.paths)

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def degree(self, i: int) -> int:
        return self.adjacency[i].bit_count()


def paths_matrix(paths: list[HamPath]) -> np.ndarray:
    """Pack path sequences into the (P, n) uint8 0-based matrix the batch
    kernel consumes."""
    return np.array([p.seq for p in paths], dtype=np.uint8) - 1


def build_compat_graph(n: int, predicate: DifferencePredicate) -> CompatibilityGraph:
    """Evaluate the predicate over all path pairs of K_n."""
    if n > MAX_COMPAT_N:
        raise CapacityError(
            f"compatibility graphs support n <= {MAX_COMPAT_N}, got {n}"
        )
    paths = enumerate_paths(n)
    count = len(paths)
    if predicate.kind == PREDICATE_CYCLE:
        dmask = predicate.dspec.length_mask(n)
        rows = []
        if dmask == 0:
            rows = [0] * count
        else:
            mat = paths_matrix(paths)
            for i in range(count):
                masks = _kernels.row_union_cycle_masks(mat, i, 0, dmask)
                hits = (masks & np.uint64(dmask)) != 0
                hits[i] = False
                row = int.from_bytes(
                    np.packbits(hits, bitorder="little").tobytes(), "little"
                )
                rows.append(row)
    else:
        rows = [0] * count
        edge_sets = [p.edges() for p in paths]
        for i, j in itertools.combinations(range(count), 2):
            g = UnionGraph.from_edges(n, edge_sets[i] | edge_sets[j])
            if contains_k4(g):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return CompatibilityGraph(
        n=n, predicate=predicate, paths=tuple(paths), adjacency=tuple(rows)
    )
