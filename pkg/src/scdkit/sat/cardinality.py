"""Cardinality constraints over CNF literals.

Literal lists may contain repeats (a variable shared by two coupled SCDs is
counted once per occurrence), so nothing is deduplicated here.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable


def at_most_one(lits: list[int]) -> list[list[int]]:
    return [[-a, -b] if a != b else [-a] for a, b in combinations(lits, 2)]


def at_most_k(lits: list[int], k: int, new_var: Callable[[], int]) -> list[list[int]]:
    """Sequential counter: at most ``k`` of ``lits`` are true."""
    m = len(lits)
    if k >= m:
        return []
    if k == 0:
        return [[-x] for x in lits]
    if k == 1:
        return at_most_one(lits)
    # s[i][t] <=> at least t+1 of lits[0..i] are true (only the -> direction is encoded)
    s = [[new_var() for _ in range(k)] for _ in range(m - 1)]
    out = [[-lits[0], s[0][0]]]
    out += [[-s[0][t]] for t in range(1, k)]
    for i in range(1, m - 1):
        x = lits[i]
        out.append([-x, s[i][0]])
        out.append([-s[i - 1][0], s[i][0]])
        for t in range(1, k):
            out.append([-x, -s[i - 1][t - 1], s[i][t]])
            out.append([-s[i - 1][t], s[i][t]])
        out.append([-x, -s[i - 1][k - 1]])
    out.append([-lits[m - 1], -s[m - 2][k - 1]])
    return out
