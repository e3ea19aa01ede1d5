"""Exact maximization: branch-and-bound maximum clique over the
compatibility graph, and bipartite maximum matching.

The clique solver is a Tomita-style search: candidates are greedily colored
and scanned highest color first, pruning a branch whenever the clique built
so far plus the color index cannot beat the incumbent.  All sets are integer
bitsets.  Single-worker runs are fully deterministic; with several workers
the root branches are farmed out to threads sharing a monotone incumbent,
which can change which optimum is reported but never its size.
"""

from __future__ import annotations

import sys
import threading
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .core import ValidationError
from .relations import CompatibilityGraph

DEFAULT_BUDGET_SECONDS = 300.0


@dataclass(frozen=True)
class CliqueResult:
    """Outcome of a clique search.  ``optimal`` is False when the time
    budget ran out, in which case ``size`` is only a lower bound."""

    size: int
    members: tuple[int, ...]
    nodes_explored: int
    elapsed_seconds: float
    optimal: bool


def independent_check(g: CompatibilityGraph, members: list[int] | tuple[int, ...]) -> bool:
    """Re-validate that ``members`` is a clique (duplicates fail, indices
    out of range raise)."""
    for i in members:
        if not 0 <= i < g.num_vertices:
            raise IndexError(f"path index {i} out of range")
    if len(set(members)) != len(members):
        return False
    return all(
        g.adjacent(i, j)
        for k, i in enumerate(members)
        for j in members[k + 1:]
    )


def _color_order(cand: int, adjacency: tuple[int, ...]) -> list[tuple[int, int]]:
    """Greedy coloring of the candidate set; returns (vertex, color) pairs
    in nondecreasing color order."""
    order = []
    color = 0
    while cand:
        color += 1
        avail = cand
        while avail:
            bit = avail & -avail
            v = bit.bit_length() - 1
            order.append((v, color))
            cand ^= bit
            avail &= ~adjacency[v]
            avail ^= bit
    return order


def _degeneracy_order(adjacency: tuple[int, ...]) -> list[int]:
    """Vertices in reverse smallest-last removal order (ties to the lowest
    index), so greedy coloring along the new index order stays within
    degeneracy + 1 colors."""
    count = len(adjacency)
    degrees = [row.bit_count() for row in adjacency]
    removed = 0
    removal = []
    for _ in range(count):
        v = min(
            (u for u in range(count) if not removed >> u & 1),
            key=lambda u: degrees[u],
        )
        removal.append(v)
        removed |= 1 << v
        nbrs = adjacency[v] & ~removed
        while nbrs:
            bit = nbrs & -nbrs
            nbrs ^= bit
            degrees[bit.bit_length() - 1] -= 1
    return removal[::-1]


def _relabel(adjacency: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    """Adjacency rows in the permuted index space (order[new] = old)."""
    position = {old: new for new, old in enumerate(order)}
    rows = []
    for old in order:
        row = adjacency[old]
        new_row = 0
        while row:
            bit = row & -row
            row ^= bit
            new_row |= 1 << position[bit.bit_length() - 1]
        rows.append(new_row)
    return tuple(rows)


class _Incumbent:
    def __init__(self, size: int, members: tuple[int, ...]):
        self.size = size
        self.members = members
        self.lock = threading.Lock()

    def offer(self, size: int, members: list[int]) -> None:
        with self.lock:
            if size > self.size:
                self.size = size
                self.members = tuple(sorted(members))


class _BudgetExhausted(Exception):
    pass


class _Searcher:
    def __init__(self, adjacency: tuple[int, ...], incumbent: _Incumbent,
                 deadline: float):
        self.adjacency = adjacency
        self.incumbent = incumbent
        self.deadline = deadline
        self.nodes = 0

    def expand(self, stack: list[int], cand: int) -> None:
        self.nodes += 1
        if self.nodes % 1024 == 0 and time.monotonic() > self.deadline:
            raise _BudgetExhausted
        if cand == 0:
            self.incumbent.offer(len(stack), stack)
            return
        order = _color_order(cand, self.adjacency)
        if order[-1][1] == len(order):
            # one color per candidate: cand is a clique, take all of it
            self.incumbent.offer(
                len(stack) + len(order), stack + [v for v, _ in order]
            )
            return
        for v, color in reversed(order):
            if len(stack) + color <= self.incumbent.size:
                return
            stack.append(v)
            self.expand(stack, cand & self.adjacency[v])
            stack.pop()
            cand &= ~(1 << v)


def max_clique(g: CompatibilityGraph,
               budget_seconds: float = DEFAULT_BUDGET_SECONDS,
               workers: int = 1,
               initial_members: tuple[int, ...] = ()) -> CliqueResult:
    """Exact clique number of the compatibility graph, within a time budget.

    Single-worker search visits branches in a fixed order and reports the
    first optimum it proves.  ``initial_members`` seeds the incumbent (it
    must itself be a clique).  On budget exhaustion the best clique found so
    far is returned with ``optimal=False``.
    """
    if budget_seconds <= 0:
        raise ValidationError("time budget must be positive")
    if workers < 1:
        raise ValidationError("worker count must be >= 1")
    members = tuple(sorted(initial_members))
    if members and not independent_check(g, members):
        raise ValidationError("initial members do not form a clique")

    start = time.monotonic()
    deadline = start + budget_seconds
    count = g.num_vertices
    full = (1 << count) - 1
    exhausted = False
    # expansion recurses once per clique member; a complete graph on all
    # n!/2 paths would otherwise blow the default limit
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * count + 1000))

    # search in degeneracy-permuted index space for tighter colorings
    label = _degeneracy_order(g.adjacency)
    position = {old: new for new, old in enumerate(label)}
    adjacency = _relabel(g.adjacency, label)
    incumbent = _Incumbent(len(members), tuple(position[v] for v in members))

    # root branches, in the exact order the serial loop would take them
    root_order = _color_order(full, adjacency)
    branches = []
    cand = full
    for v, color in reversed(root_order):
        branches.append((v, color, cand & adjacency[v]))
        cand &= ~(1 << v)

    def run_branch(searcher: _Searcher, v: int, color: int, sub: int) -> bool:
        if color <= incumbent.size:
            return False
        try:
            searcher.expand([v], sub)
        except _BudgetExhausted:
            return True
        return False

    if workers == 1:
        searcher = _Searcher(adjacency, incumbent, deadline)
        for v, color, sub in branches:
            if run_branch(searcher, v, color, sub):
                exhausted = True
                break
        total_nodes = searcher.nodes
    else:
        # one searcher per root branch so node counters never race
        searchers = [_Searcher(adjacency, incumbent, deadline)
                     for _ in branches]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(run_branch, searchers[k], v, color, sub)
                for k, (v, color, sub) in enumerate(branches)
            ]
            exhausted = any(f.result() for f in futures)
        total_nodes = sum(s.nodes for s in searchers)

    elapsed = time.monotonic() - start
    return CliqueResult(
        size=incumbent.size,
        members=tuple(sorted(label[v] for v in incumbent.members)),
        nodes_explored=total_nodes,
        elapsed_seconds=elapsed,
        optimal=not exhausted,
    )


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph on index sets 0..left_count-1 and 0..right_count-1."""

    left_count: int
    right_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for l, r in self.edges:
            if not (0 <= l < self.left_count and 0 <= r < self.right_count):
                raise ValidationError(f"edge {(l, r)} out of range")

    def left_degree(self, l: int) -> int:
        return sum(1 for e in self.edges if e[0] == l)

    def right_degree(self, r: int) -> int:
        return sum(1 for e in self.edges if e[1] == r)


_UNMATCHED = -1


def max_matching(g: BipartiteGraph) -> list[tuple[int, int]]:
    """Maximum-cardinality matching via Hopcroft-Karp.

    Deterministic: neighbors are scanned in ascending index order.  On
    return no augmenting path remains, which is the optimality certificate.
    """
    adj: list[list[int]] = [[] for _ in range(g.left_count)]
    for l, r in sorted(g.edges):
        adj[l].append(r)
    match_l = [_UNMATCHED] * g.left_count
    match_r = [_UNMATCHED] * g.right_count
    inf = g.left_count + 1
    dist = [0] * g.left_count

    def bfs() -> bool:
        queue = deque()
        for l in range(g.left_count):
            if match_l[l] == _UNMATCHED:
                dist[l] = 0
                queue.append(l)
            else:
                dist[l] = inf
        found_free = inf
        while queue:
            l = queue.popleft()
            if dist[l] >= found_free:
                continue
            for r in adj[l]:
                nxt = match_r[r]
                if nxt == _UNMATCHED:
                    found_free = min(found_free, dist[l] + 1)
                elif dist[nxt] == inf:
                    dist[nxt] = dist[l] + 1
                    queue.append(nxt)
        return found_free != inf

    def dfs(l: int) -> bool:
        for r in adj[l]:
            nxt = match_r[r]
            if nxt == _UNMATCHED or (dist[nxt] == dist[l] + 1 and dfs(nxt)):
                match_l[l] = r
                match_r[r] = l
                return True
        dist[l] = inf
        return False

    while bfs():
        for l in range(g.left_count):
            if match_l[l] == _UNMATCHED:
                dfs(l)
    return sorted(
        (l, r) for l, r in enumerate(match_l) if r != _UNMATCHED
    )
