"""Core model: canonical Hamiltonian paths, path unions, simple-cycle
lengths, and the cycle-length specification language.

Vertices are integers 1..n.  An undirected Hamiltonian path is stored as the
lexicographic minimum of its vertex sequence and that sequence's reversal, so
the n!/2 undirected paths of the complete graph K_n have unique
representatives with a reproducible order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from . import _kernels

# enumerate_paths() refuses larger n: 9!/2 = 181440 canonical paths is the
# largest set the downstream pairwise machinery can digest on a desktop.
MAX_ENUM_N = 9
# The cycle kernels index vertices in a 32-bit mask.
MAX_GRAPH_N = 32

EDGE_FIRST_ONLY = "first-only"
EDGE_SECOND_ONLY = "second-only"
EDGE_BOTH = "both"


class ValidationError(ValueError):
    """Malformed input: not a permutation, mismatched orders, bad cycle."""


class CapacityError(ValidationError):
    """Instance size exceeds a documented limit."""


class DSpecParseError(ValidationError):
    """Syntax or range error in a cycle-length specification string."""

    def __init__(self, text: str, position: int, message: str):
        self.text = text
        self.position = position
        super().__init__(f"{message} (position {position} in {text!r})")


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, order=True)
class HamPath:
    """Undirected Hamiltonian path on 1..n in canonical orientation."""

    seq: tuple[int, ...]

    def __post_init__(self):
        n = len(self.seq)
        if n < 2:
            raise ValidationError("a Hamiltonian path needs at least 2 vertices")
        if sorted(self.seq) != list(range(1, n + 1)):
            raise ValidationError(f"{self.seq} is not a permutation of 1..{n}")
        if self.seq > self.seq[::-1]:
            raise ValidationError(
                f"{self.seq} is not canonical; use canonicalize()"
            )

    @property
    def n(self) -> int:
        return len(self.seq)

    def endpoints(self) -> tuple[int, int]:
        return _edge(self.seq[0], self.seq[-1])

    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(_edge(u, v) for u, v in zip(self.seq, self.seq[1:]))

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.seq)


def canonicalize(seq: Iterable[int]) -> HamPath:
    """Build the canonical undirected path for a vertex sequence.

    Returns the lexicographic minimum of the sequence and its reversal.
    """
    s = tuple(seq)
    return HamPath(min(s, s[::-1]))


def enumerate_paths(n: int) -> list[HamPath]:
    """All n!/2 canonical Hamiltonian paths of K_n in lexicographic order."""
    if not 2 <= n <= MAX_ENUM_N:
        raise CapacityError(f"enumerate_paths supports 2 <= n <= {MAX_ENUM_N}, got {n}")
    return [
        HamPath(seq)
        for seq in itertools.permutations(range(1, n + 1))
        if seq < seq[::-1]
    ]


@dataclass(frozen=True)
class UnionGraph:
    """Simple-graph union of two Hamiltonian paths.

    ``origin`` tags each edge with the path(s) it came from.  Arbitrary
    degree-bounded edge sets can also be wrapped (``from_edges``) so the
    cycle machinery can run on synthetic graphs.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    origin: Mapping[tuple[int, int], str]

    def __post_init__(self):
        if not 2 <= self.n <= MAX_GRAPH_N:
            raise CapacityError(f"union graphs support 2 <= n <= {MAX_GRAPH_N}")
        degree = [0] * (self.n + 1)
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise ValidationError(f"edge {(u, v)} out of range for n={self.n}")
            degree[u] += 1
            degree[v] += 1
        if any(d > 4 for d in degree):
            raise ValidationError("a union of two paths has maximum degree 4")
        if len(self.edges) > 2 * (self.n - 1):
            raise ValidationError("a union of two paths has at most 2(n-1) edges")
        object.__setattr__(self, "origin", MappingProxyType(dict(self.origin)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "UnionGraph":
        es = frozenset(_edge(u, v) for u, v in edges)
        return cls(n=n, edges=es, origin={e: EDGE_BOTH for e in es})

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edges

    def adjacency_masks(self) -> list[int]:
        """Per-vertex neighbor bitmasks, 0-based, as the kernels expect."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u - 1] |= 1 << (v - 1)
            adj[v - 1] |= 1 << (u - 1)
        return adj


def union_of(a: HamPath, b: HamPath) -> UnionGraph:
    """Simple-graph union of two paths with per-edge origin tags."""
    if a.n != b.n:
        raise ValidationError(f"paths have different orders: {a.n} vs {b.n}")
    ea, eb = a.edges(), b.edges()
    origin = {}
    for e in ea | eb:
        if e in ea and e in eb:
            origin[e] = EDGE_BOTH
        elif e in ea:
            origin[e] = EDGE_FIRST_ONLY
        else:
            origin[e] = EDGE_SECOND_ONLY
    return UnionGraph(n=a.n, edges=ea | eb, origin=origin)


@dataclass(frozen=True)
class Cycle:
    """Simple cycle, stored in canonical rotation: smallest vertex first,
    oriented toward its smaller neighbor."""

    verts: tuple[int, ...]

    def __post_init__(self):
        k = len(self.verts)
        if k < 3:
            raise ValidationError("a cycle has at least 3 vertices")
        if len(set(self.verts)) != k:
            raise ValidationError("cycle vertices must be distinct")
        if self.verts[0] != min(self.verts) or self.verts[1] > self.verts[-1]:
            raise ValidationError("cycle is not in canonical rotation")

    @property
    def length(self) -> int:
        return len(self.verts)

    def edges(self) -> frozenset[tuple[int, int]]:
        k = len(self.verts)
        return frozenset(
            _edge(self.verts[i], self.verts[(i + 1) % k]) for i in range(k)
        )

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.verts)


def canonical_cycle(verts: Iterable[int]) -> Cycle:
    """Normalize a cyclic vertex order into the canonical rotation."""
    vs = list(verts)
    if len(vs) < 3 or len(set(vs)) != len(vs):
        raise ValidationError(f"{vs} is not a simple cycle order")
    pivot = vs.index(min(vs))
    vs = vs[pivot:] + vs[:pivot]
    if vs[1] > vs[-1]:
        vs = [vs[0]] + vs[:0:-1]
    return Cycle(tuple(vs))


def cycle_in_graph(cycle: Cycle, g: UnionGraph) -> bool:
    return cycle.edges() <= g.edges


def cycle_lengths(g: UnionGraph) -> set[int]:
    """Set of lengths of all simple cycles of ``g``, by exhaustive
    enumeration (degree <= 4 keeps this cheap at desk scale)."""
    mask = _kernels.cycle_length_mask(g.n, g.adjacency_masks())
    return {length for length in range(3, g.n + 1) if mask >> length & 1}


def iter_simple_cycles(g: UnionGraph) -> Iterator[Cycle]:
    """Yield every simple cycle of ``g`` exactly once, in a deterministic
    order (by smallest vertex, then by the depth-first branch taken).

    Pure-Python companion of :func:`cycle_lengths`; used wherever a concrete
    cycle is needed as a witness.
    """
    adj: dict[int, list[int]] = {v: [] for v in range(1, g.n + 1)}
    for u, v in sorted(g.edges):
        adj[u].append(v)
        adj[v].append(u)
    for nbrs in adj.values():
        nbrs.sort()

    def extend(start: int, path: list[int], on_path: set[int]) -> Iterator[Cycle]:
        for w in adj[path[-1]]:
            if w == start and len(path) >= 3:
                # one orientation only: second vertex below last vertex
                if path[1] < path[-1]:
                    yield canonical_cycle(path)
            elif w > start and w not in on_path:
                path.append(w)
                on_path.add(w)
                yield from extend(start, path, on_path)
                on_path.discard(w)
                path.pop()

    for s in range(1, g.n + 1):
        yield from extend(s, [s], {s})


_DSPEC_KINDS = ("all", "odd", "even", "div", "ndiv", "in")


@dataclass(frozen=True)
class DSpec:
    """Decidable predicate on cycle lengths.

    ``kind`` is one of ``all``, ``odd``, ``even``, ``div`` (divisible by
    ``c``), ``ndiv`` (not divisible by ``c``), ``in`` (explicit length set).
    Lengths below 3 never belong: simple graphs have no shorter cycles.
    """

    kind: str
    c: int | None = None
    lengths: frozenset[int] | None = None

    def __post_init__(self):
        if self.kind not in _DSPEC_KINDS:
            raise ValidationError(f"unknown DSpec kind {self.kind!r}")
        if self.kind in ("div", "ndiv"):
            if self.c is None or self.c < 2:
                raise ValidationError("divisibility specs need an integer c >= 2")
            if self.lengths is not None:
                raise ValidationError("divisibility specs carry no length set")
        elif self.kind == "in":
            if not self.lengths:
                raise ValidationError("explicit specs need a nonempty length set")
            if any(length < 3 for length in self.lengths):
                raise ValidationError("cycle lengths below 3 are impossible")
            if self.c is not None:
                raise ValidationError("explicit specs carry no modulus")
        elif self.c is not None or self.lengths is not None:
            raise ValidationError(f"{self.kind!r} takes no parameters")

    def contains(self, length: int) -> bool:
        if length < 3:
            return False
        if self.kind == "all":
            return True
        if self.kind == "odd":
            return length % 2 == 1
        if self.kind == "even":
            return length % 2 == 0
        if self.kind == "div":
            return length % self.c == 0
        if self.kind == "ndiv":
            return length % self.c != 0
        return length in self.lengths

    def length_mask(self, n: int) -> int:
        """Bitmask over 3..n of member lengths, aligned with the kernels."""
        mask = 0
        for length in range(3, n + 1):
            if self.contains(length):
                mask |= 1 << length
        return mask

    def render(self) -> str:
        if self.kind in ("all", "odd", "even"):
            return self.kind
        if self.kind == "div":
            return f"div={self.c}"
        if self.kind == "ndiv":
            return f"ndiv={self.c}"
        return "in=" + ",".join(str(v) for v in sorted(self.lengths))

    def __str__(self) -> str:
        return self.render()


def _parse_int(text: str, start: int, end: int) -> int:
    token = text[start:end]
    if not token:
        raise DSpecParseError(text, start, "expected an integer")
    for i, ch in enumerate(token):
        if not ch.isdigit():
            raise DSpecParseError(text, start + i, f"invalid character {ch!r}")
    return int(token)


def parse_dspec(text: str) -> DSpec:
    """Parse the textual cycle-length grammar.

    Accepted forms (no spaces): ``all``, ``odd``, ``even``, ``div=<c>``,
    ``ndiv=<c>``, ``in=<l1,l2,...>`` with c >= 2 and every li >= 3.
    """
    if text in ("all", "odd", "even"):
        return DSpec(text)
    for prefix in ("div=", "ndiv="):
        if text.startswith(prefix):
            c = _parse_int(text, len(prefix), len(text))
            if c < 2:
                raise DSpecParseError(text, len(prefix), "modulus must be >= 2")
            return DSpec(prefix[:-1], c=c)
    if text.startswith("in="):
        lengths = []
        pos = 3
        while True:
            comma = text.find(",", pos)
            end = comma if comma != -1 else len(text)
            value = _parse_int(text, pos, end)
            if value < 3:
                raise DSpecParseError(text, pos, "cycle lengths start at 3")
            lengths.append(value)
            if comma == -1:
                break
            pos = comma + 1
        return DSpec("in", lengths=frozenset(lengths))
    raise DSpecParseError(text, 0, "unknown cycle-length specification")
