"""Definition-level reference implementations used only by the tests.

These are deliberately naive: every quantifier in a definition becomes a
loop, and nothing is shared with the library's fast paths.
"""

from __future__ import annotations

from itertools import permutations, product
from math import prod


def utility(values, assignment, team):
    return sum(values[team][p] for p, t in enumerate(assignment) if t == team)


def bundle(assignment, team):
    return [p for p, t in enumerate(assignment) if t == team]


def ef1(values, assignment, n):
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            own = [values[i][p] for p in bundle(assignment, i)]
            other = [values[i][p] for p in bundle(assignment, j)]
            ok = sum(own) >= sum(other)
            ok = ok or any(sum(own) - x >= sum(other) for x in own)
            ok = ok or any(sum(own) >= sum(other) - y for y in other)
            if not ok:
                return False
    return True


def ef11(values, assignment, n):
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            own = [values[i][p] for p in bundle(assignment, i)]
            other = [values[i][p] for p in bundle(assignment, j)]
            if not any(sum(own) - x >= sum(other) - y for x in own + [0] for y in other + [0]):
                return False
    return True


def balanced(assignment, n):
    sizes = [len(bundle(assignment, t)) for t in range(n)]
    return max(sizes) - min(sizes) <= 1


def _weakly_better_somewhere_strict(before, after, lower_is_better):
    diffs = [(b - a) if lower_is_better else (a - b) for b, a in zip(before, after)]
    return min(diffs) >= 0 and max(diffs) > 0


def swap_stable(values, ranks, assignment, n):
    m = len(assignment)
    for p in range(m):
        for q in range(m):
            i, j = assignment[p], assignment[q]
            if i == j:
                continue
            new = list(assignment)
            new[p], new[q] = j, i
            teams_before = [utility(values, assignment, t) for t in (i, j)]
            teams_after = [utility(values, new, t) for t in (i, j)]
            ranks_before = [ranks[p][i], ranks[q][j]]
            ranks_after = [ranks[p][j], ranks[q][i]]
            gains = [a - b for a, b in zip(teams_after, teams_before)]
            gains += [b - a for a, b in zip(ranks_after, ranks_before)]
            if min(gains) >= 0 and max(gains) > 0:
                return False
    return True


def individually_stable(values, ranks, assignment, n):
    for p, i in enumerate(assignment):
        for j in range(n):
            if j == i:
                continue
            new = list(assignment)
            new[p] = j
            if (ranks[p][j] < ranks[p][i]
                    and utility(values, new, i) >= utility(values, assignment, i)
                    and utility(values, new, j) >= utility(values, assignment, j)):
                return False
    return True


def justified_ef(values, ranks, assignment):
    for p, i in enumerate(assignment):
        for q, j in enumerate(assignment):
            if ranks[p][j] < ranks[p][i] and values[j][p] > values[j][q]:
                return False
    return True


def dominates(values, ranks, a, b, n, teams=True, players=True):
    gains = []
    if teams:
        gains += [utility(values, a, t) - utility(values, b, t) for t in range(n)]
    if players:
        gains += [ranks[p][b[p]] - ranks[p][a[p]] for p in range(len(a))]
    return bool(gains) and min(gains) >= 0 and max(gains) > 0


def pareto_optimal(values, ranks, assignment, n, teams=True, players=True):
    return not any(
        dominates(values, ranks, other, assignment, n, teams, players)
        for other in product(range(n), repeat=len(assignment))
    )


def max_nash(values, n, m):
    """Best (nonzero count, product) over all allocations."""
    best = None
    for a in product(range(n), repeat=m):
        us = [utility(values, a, t) for t in range(n)]
        nz = [u for u in us if u]
        key = (len(nz), prod(nz))
        best = key if best is None or key > best else best
    return best


def lexicographic_profile(weights):
    """Lexicographically greatest (w[0][pi0], w[1][pi1], ...) over all permutations."""
    k = len(weights)
    return max(tuple(weights[q][p] for q, p in enumerate(perm)) for perm in permutations(range(k)))


def best_total(weights, sign=1):
    k = len(weights)
    return sign * max(sign * sum(weights[q][perm[q]] for q in range(k)) for perm in permutations(range(k)))
