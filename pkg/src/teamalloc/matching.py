"""Perfect matchings on complete (optionally masked) bipartite graphs.

Left vertices are "slots" ``q`` and right vertices are players ``p``; the
weight of edge ``(q, p)`` is ``weights[q][p]``.  Everything is exact integer
arithmetic; forbidden edges are never relaxed by the solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


class InfeasibleMatchingError(ValueError):
    """No perfect matching exists inside the admissible edge set."""


@dataclass(frozen=True)
class WeightedBipartite:
    weights: tuple[tuple[int, ...], ...]
    mask: tuple[tuple[bool, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(tuple(r) for r in self.weights))
        k = len(self.weights)
        if any(len(r) != k for r in self.weights):
            raise ValueError("weight matrix must be square")
        if self.mask is not None:
            object.__setattr__(self, "mask", tuple(tuple(bool(x) for x in r) for r in self.mask))
            if len(self.mask) != k or any(len(r) != k for r in self.mask):
                raise ValueError("mask must match the weight matrix shape")

    @property
    def size(self) -> int:
        return len(self.weights)

    def admissible(self, q: int, p: int) -> bool:
        return self.mask is None or self.mask[q][p]


@dataclass(frozen=True)
class MatchingResult:
    pairs: tuple[int, ...]
    total_weight: int
    per_vertex_weights: tuple[int, ...]

    @classmethod
    def from_pairs(cls, graph: WeightedBipartite, pairs: Sequence[int]) -> "MatchingResult":
        profile = tuple(graph.weights[q][p] for q, p in enumerate(pairs))
        return cls(tuple(pairs), sum(profile), profile)


def _min_cost_assignment(cost: Sequence[Sequence[int | None]]) -> list[int]:
    """Shortest augmenting path Hungarian method with potentials, O(k^3).

    ``cost[q][p] is None`` marks a forbidden edge.  Returns ``pairs`` with
    ``pairs[q] = p``.
    """
    k = len(cost)
    inf = math.inf
    u = [0] * (k + 1)
    v = [0] * (k + 1)
    match = [0] * (k + 1)  # match[col] = row, 1-based, 0 = free
    way = [0] * (k + 1)
    for row in range(1, k + 1):
        match[0] = row
        j0 = 0
        minv = [inf] * (k + 1)
        used = [False] * (k + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            crow = cost[i0 - 1]
            ui0 = u[i0]
            delta = inf
            j1 = -1
            for j in range(1, k + 1):
                if used[j]:
                    continue
                c = crow[j - 1]
                if c is not None:
                    cur = c - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            if j1 < 0 or delta == inf:
                raise InfeasibleMatchingError(f"slot {row - 1} cannot be matched inside the mask")
            for j in range(k + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    pairs = [0] * k
    for j in range(1, k + 1):
        pairs[match[j] - 1] = j - 1
    return pairs


def min_cost_perfect_matching(graph: WeightedBipartite) -> MatchingResult:
    """Perfect matching of minimum total weight among admissible edges.

    >>> min_cost_perfect_matching(WeightedBipartite(((1, 2), (2, 1)))).pairs
    (0, 1)
    """
    cost = [
        [w if graph.admissible(q, p) else None for p, w in enumerate(row)]
        for q, row in enumerate(graph.weights)
    ]
    return MatchingResult.from_pairs(graph, _min_cost_assignment(cost))


def max_weight_perfect_matching(graph: WeightedBipartite) -> MatchingResult:
    """Perfect matching of maximum total weight among admissible edges.

    >>> r = max_weight_perfect_matching(WeightedBipartite(((1, 0), (0, 1))))
    >>> r.pairs, r.total_weight
    ((0, 1), 2)
    """
    cost = [
        [-w if graph.admissible(q, p) else None for p, w in enumerate(row)]
        for q, row in enumerate(graph.weights)
    ]
    return MatchingResult.from_pairs(graph, _min_cost_assignment(cost))


def _lexicographic_sequential(graph: WeightedBipartite) -> MatchingResult:
    # One max-weight solve per slot: earlier slots pinned to their recorded
    # weights, later slots zeroed.
    k = graph.size
    w = graph.weights
    recorded: list[int] = []
    result = None
    for i in range(k):
        weights = [[w[q][p] if q <= i else 0 for p in range(k)] for q in range(k)]
        mask = [[q >= i or w[q][p] == recorded[q] for p in range(k)] for q in range(k)]
        result = max_weight_perfect_matching(WeightedBipartite(weights, mask))
        recorded.append(w[i][result.pairs[i]])
    if result is None:
        return MatchingResult((), 0, ())
    return MatchingResult.from_pairs(graph, result.pairs)


def _lexicographic_scaled(graph: WeightedBipartite) -> MatchingResult:
    # Lex order of profiles only depends on the per-slot order of weights, so
    # each slot's weights are replaced by dense ranks and slot q is scaled by
    # base**(k-1-q); one max-weight solve then yields the lex-max profile.
    k = graph.size
    dense = []
    base = 1
    for row in graph.weights:
        levels = {w: r for r, w in enumerate(sorted(set(row)))}
        dense.append([levels[w] for w in row])
        base = max(base, len(levels))
    scaled = [[r * base ** (k - 1 - q) for r in row] for q, row in enumerate(dense)]
    pairs = max_weight_perfect_matching(WeightedBipartite(scaled)).pairs
    return MatchingResult.from_pairs(graph, pairs)


def lexicographic_matching(graph: WeightedBipartite, method: str = "scaled") -> MatchingResult:
    """Perfect matching whose per-slot weight profile is lexicographically maximal.

    Slot 0's weight is as large as possible, then slot 1's subject to that,
    and so on.  The profile is unique; the matching itself need not be.
    ``method="sequential"`` runs one pinned max-weight solve per slot,
    ``"scaled"`` (default) folds the whole order into a single solve.

    >>> lexicographic_matching(WeightedBipartite(((1, -1), (1, -1)))).per_vertex_weights
    (1, -1)
    """
    if graph.mask is not None:
        raise ValueError("lexicographic matching expects a complete graph")
    if method == "scaled":
        return _lexicographic_scaled(graph)
    if method == "sequential":
        return _lexicographic_sequential(graph)
    raise ValueError(f"unknown method {method!r}")
