"""Closed-form bounds on maximum family sizes, and the structural maps the
bound arguments rest on (alternation bipartition, Hamiltonian-cycle closure,
the combined third cycle, multipartite path counts).

All formulas are evaluated in exact rational arithmetic so that comparisons
like 15/2 versus 8 are decisive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .core import (
    CapacityError,
    Cycle,
    HamPath,
    MAX_ENUM_N,
    UnionGraph,
    ValidationError,
    canonical_cycle,
    cycle_in_graph,
)


@dataclass(frozen=True)
class FormulaTable:
    """One evaluated bound row: exact rational lower/upper limits for the
    maximum family size under the named regime (None = no bound given)."""

    name: str
    n: int
    c: int | None
    lower: Fraction | None
    upper: Fraction | None


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValidationError(message)


def _eval_all(n: int, c: int | None) -> tuple[Fraction, Fraction]:
    value = Fraction(factorial(n), 2)
    return value, value


def _eval_odd(n: int, c: int | None) -> tuple[Fraction, Fraction]:
    if n % 2:
        value = Fraction(comb(n, n // 2))
    else:
        value = Fraction(comb(n, n // 2), 2)
    return value, value


def _eval_m53(n: int, c: int | None) -> tuple[Fraction, Fraction]:
    _require(n == 5, "the triangle value is known only at n = 5")
    return Fraction(10), Fraction(10)


def _eval_even(n: int, c: int | None) -> tuple[Fraction, Fraction]:
    if n % 2:
        _require(n >= 3, "even-cycle bounds need n >= 3")
        blocked = n - 3 + comb((n + 1) // 2 + 1, 2)
        return (
            Fraction(factorial(n), 2 * blocked),
            Fraction(factorial(n), 2 * n),
        )
    # below n = 6 the two even-n displays cross; the window starts where
    # the quadruple construction behind the upper bound exists
    _require(n >= 6, "even-cycle bounds for even n need n >= 6")
    return (
        Fraction(factorial(n), 2 * comb(n // 2 + 1, 2)),
        Fraction(factorial(n), 8),
    )


def _eval_divisible(n: int, c: int | None) -> tuple[Fraction, None]:
    _require(c is not None and c >= 2, "divisibility bounds need c >= 2")
    _require(n % c == 0, f"divisibility bounds need c | n, got n={n}, c={c}")
    return Fraction(factorial(n // c)), None


def _eval_not_divisible(n: int, c: int | None) -> tuple[Fraction, None]:
    _require(c is not None and c >= 3, "shifted-block bounds need c >= 3")
    _require(n % c == 0, f"shifted-block bounds need c | n, got n={n}, c={c}")
    return Fraction(factorial(n // c - 1)), None


def _eval_fixed_endpoint(n: int, c: int | None) -> tuple[Fraction, None]:
    _require(n >= 4, "fixed-endpoint bounds need n >= 4")
    if c is not None:
        _require(c > 1 and c not in (2, 4),
                 "fixed-endpoint bounds need c > 1 other than 2 and 4")
    return Fraction(factorial(n), 2 * comb(n, 2)), None


def _eval_k4(n: int, c: int | None) -> tuple[Fraction | None, Fraction]:
    lower = Fraction(2) ** (n // 4) if n % 4 == 0 else None
    upper = Fraction(n + 1) ** 2 * Fraction(3, 2) ** (n - 1)
    return lower, upper


_FORMULAS = {
    "all": _eval_all,
    "odd": _eval_odd,
    "m53": _eval_m53,
    "even": _eval_even,
    "divisible": _eval_divisible,
    "not_divisible": _eval_not_divisible,
    "fixed_endpoint": _eval_fixed_endpoint,
    "k4": _eval_k4,
}


def eval_formula(name: str, n: int, c: int | None = None) -> FormulaTable:
    """Evaluate a named bound at n (and modulus c where applicable)."""
    if name not in _FORMULAS:
        raise ValidationError(f"unknown formula {name!r}")
    _require(n >= 2, "bounds need n >= 2")
    lower, upper = _FORMULAS[name](n, c)
    if lower is not None and upper is not None and lower > upper:
        raise ValidationError(f"formula {name} is inconsistent at n={n}")
    return FormulaTable(name=name, n=n, c=c, lower=lower, upper=upper)


def applicable_formulas(n: int, c: int | None = None) -> list[FormulaTable]:
    """Every bound row that is defined at the given parameters."""
    rows = []
    for name in _FORMULAS:
        takes_c = name in ("divisible", "not_divisible", "fixed_endpoint")
        try:
            rows.append(eval_formula(name, n, c if takes_c else None))
        except ValidationError:
            continue
    return rows


def bipartition_of_path(h: HamPath) -> tuple[frozenset[int], frozenset[int]]:
    """The alternation bipartition: vertices at odd versus even positions.

    Part sizes differ by at most one, and the path lies inside the complete
    bipartite graph on these parts; the pair is returned with the part
    containing the smaller label first so equal bipartitions compare equal.
    """
    a = frozenset(h.seq[0::2])
    b = frozenset(h.seq[1::2])
    return (a, b) if min(a) < min(b) else (b, a)


def ham_cycle_closure(h: HamPath) -> frozenset[tuple[int, int]]:
    """Edge set of the Hamiltonian cycle obtained by joining the path's
    endpoints; each path lies in exactly one such cycle."""
    return h.edges() | {h.endpoints()}


def third_cycle(c1: Cycle, c2: Cycle, g: UnionGraph) -> Cycle:
    """The cycle left after removing the shared-path interior of two cycles
    that intersect in a single nonempty path.

    Its length is len(c1) + len(c2) - 2s for a shared path of s edges, so
    two odd cycles always combine into an even one.
    """
    for cyc in (c1, c2):
        if not cycle_in_graph(cyc, g):
            raise ValidationError(f"cycle {cyc} is not contained in the graph")
    shared = c1.edges() & c2.edges()
    if not shared:
        raise ValidationError("the two cycles share no edge")
    _require_single_path(shared)
    combined = c1.edges() ^ c2.edges()
    seq = _walk_single_cycle(combined)
    if seq is None:
        raise ValidationError("the two cycles overlap beyond the shared path")
    result = canonical_cycle(seq)
    assert result.length == c1.length + c2.length - 2 * len(shared)
    return result


def _require_single_path(edges: frozenset[tuple[int, int]]) -> None:
    degree: dict[int, int] = {}
    for u, v in edges:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    ends = [v for v, d in degree.items() if d == 1]
    if len(ends) != 2 or any(d > 2 for d in degree.values()):
        raise ValidationError("shared edges must form a single path")
    # connectivity: walk from one end and count reached edges
    adj: dict[int, list[int]] = {v: [] for v in degree}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {ends[0]}
    frontier = [ends[0]]
    while frontier:
        v = frontier.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    if len(seen) != len(degree):
        raise ValidationError("shared edges must form a single path")


def _walk_single_cycle(edges: frozenset[tuple[int, int]]) -> list[int] | None:
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if any(len(nbrs) != 2 for nbrs in adj.values()):
        return None
    start = min(adj)
    seq = [start]
    prev = None
    while True:
        nxt = [w for w in adj[seq[-1]] if w != prev]
        prev = seq[-1]
        if nxt[0] == start:
            break
        seq.append(nxt[0])
        if len(seq) > len(adj):
            return None
    return seq if len(seq) == len(adj) else None


@lru_cache(maxsize=None)
def _type_string_count(counts: tuple[int, ...], last: int) -> int:
    """Number of strings with the given residual symbol counts, no two
    adjacent symbols equal, starting after symbol ``last``."""
    if sum(counts) == 0:
        return 1
    total = 0
    for sym, remaining in enumerate(counts):
        if sym == last or remaining == 0:
            continue
        rest = list(counts)
        rest[sym] -= 1
        total += _type_string_count(tuple(rest), sym)
    return total


def count_multipartite_ham_paths(part_sizes: list[int]) -> int:
    """Exact count of canonical Hamiltonian paths of the complete
    multipartite graph with the given part sizes.

    Enumerates the part-id strings (no two adjacent symbols equal, symbol
    counts matching the part sizes) and multiplies by the orderings within
    each part; undirected identification halves the directed count.
    """
    if any(size < 1 for size in part_sizes):
        raise ValidationError("part sizes must be positive")
    n = sum(part_sizes)
    if n > MAX_ENUM_N:
        raise CapacityError(f"multipartite counts support n <= {MAX_ENUM_N}")
    if n < 2:
        return 0
    strings = _type_string_count(tuple(part_sizes), -1)
    directed = strings
    for size in part_sizes:
        directed *= factorial(size)
    return directed // 2


def string_type_count(n: int) -> int:
    """Number of types (per-symbol occurrence counts) of ternary strings of
    length n: the compositions of n into 3 nonnegative parts."""
    _require(n >= 1, "string types need n >= 1")
    return comb(n + 2, 2)


def balanced_tripartite_path_bound(n: int) -> Fraction:
    """Lower bound on the Hamiltonian-path count of the balanced complete
    tripartite graph on n vertices: [(n/3)!]^3 * 3 * 2^(n-1) / (n+1)^2."""
    _require(n % 3 == 0 and n >= 3, "the tripartite bound needs 3 | n")
    return (
        Fraction(factorial(n // 3)) ** 3
        * Fraction(3 * 2 ** (n - 1), (n + 1) ** 2)
    )
