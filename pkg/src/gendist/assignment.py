"""Exact minimum-cost assignment on small integer matrices."""

from __future__ import annotations

from itertools import permutations
from typing import Sequence

from .errors import ContractViolation

BRUTE_FORCE_LIMIT = 8


def _check(cost: Sequence[Sequence[int]]) -> int:
    m = len(cost)
    for row in cost:
        if len(row) != m:
            raise ContractViolation("cost matrix must be square")
        for x in row:
            if x < 0:
                raise ContractViolation(f"negative cost {x}")
    return m


def assignment_min(cost: Sequence[Sequence[int]], brute_force: bool = False) -> tuple[int, tuple[int, ...]]:
    """Minimum total cost of a perfect matching rows -> columns.

    Returns ``(value, match)`` with ``match[i]`` the column of row ``i``.  The
    default solver is the O(m^3) shortest-augmenting-path Hungarian method with
    row/column potentials; ``brute_force=True`` enumerates all permutations
    instead (only for ``m <= 8``).
    """
    m = _check(cost)
    if m == 0:
        return 0, ()
    if brute_force:
        return _brute(cost, m)

    inf = float("inf")
    u = [0] * (m + 1)
    v = [0] * (m + 1)
    owner = [0] * (m + 1)  # owner[j]: row matched to column j, 1-based; 0 = free
    way = [0] * (m + 1)
    for i in range(1, m + 1):
        owner[0] = i
        j0 = 0
        minv = [inf] * (m + 1)
        used = [False] * (m + 1)
        while True:
            used[j0] = True
            i0 = owner[j0]
            row = cost[i0 - 1]
            delta = inf
            j1 = 0
            for j in range(1, m + 1):
                if used[j]:
                    continue
                cur = row[j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(m + 1):
                if used[j]:
                    u[owner[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if owner[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            owner[j0] = owner[j1]
            j0 = j1

    match = [0] * m
    for j in range(1, m + 1):
        match[owner[j] - 1] = j - 1
    value = sum(cost[i][match[i]] for i in range(m))
    return value, tuple(match)


def _brute(cost: Sequence[Sequence[int]], m: int) -> tuple[int, tuple[int, ...]]:
    if m > BRUTE_FORCE_LIMIT:
        raise ContractViolation(f"brute-force assignment limited to {BRUTE_FORCE_LIMIT} rows")
    best = None
    for perm in permutations(range(m)):
        total = sum(cost[i][perm[i]] for i in range(m))
        if best is None or total < best[0]:
            best = (total, perm)
    return best
