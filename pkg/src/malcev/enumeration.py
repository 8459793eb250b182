"""Exhaustive enumeration of small semigroups up to isomorphism.

Tables are generated by backtracking over cells in row-major order; every
associativity triple is re-checked as soon as the last table cell it touches
is filled, so the leaves are exactly the associative tables.  Deduplication
uses invariant bucketing plus the isomorphism backtracker; an independent
canonical form (minimum over all relabelings) is provided for cross-checks.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .core import from_table
from .division import are_isomorphic


def associative_tables(n):
    """All labeled associative tables on 0..n-1, as tuples of row tuples."""
    cells = [(a, b) for a in range(n) for b in range(n)]
    T = [[-1] * n for _ in range(n)]
    occurrences = {v: [] for v in range(n)}
    out = []

    def consistent(r, s):
        v = T[r][s]
        for z in range(n):
            w = T[s][z]
            if w >= 0 and T[v][z] >= 0 and T[r][w] >= 0 and T[v][z] != T[r][w]:
                return False
        for x in range(n):
            u = T[x][r]
            if u >= 0 and T[u][s] >= 0 and T[x][v] >= 0 and T[u][s] != T[x][v]:
                return False
        for (x, y) in occurrences[r]:
            w = T[y][s]
            if w >= 0 and T[x][w] >= 0 and T[x][w] != v:
                return False
        for (y, z) in occurrences[s]:
            u = T[r][y]
            if u >= 0 and T[u][z] >= 0 and T[u][z] != v:
                return False
        return True

    def fill(k):
        if k == len(cells):
            out.append(tuple(tuple(row) for row in T))
            return
        r, s = cells[k]
        for v in range(n):
            T[r][s] = v
            occurrences[v].append((r, s))
            if consistent(r, s):
                fill(k + 1)
            occurrences[v].pop()
        T[r][s] = -1

    fill(0)
    return out


def canonical_form(table):
    """Lexicographically least relabeling of the table (isomorphism only)."""
    n = len(table)
    best = None
    for g in permutations(range(n)):
        ginv = [0] * n
        for i, v in enumerate(g):
            ginv[v] = i
        cand = tuple(
            tuple(ginv[table[g[i]][g[j]]] for j in range(n)) for i in range(n)
        )
        if best is None or cand < best:
            best = cand
    return best


def _invariant_key(S):
    from .division import _element_signatures

    return (S.order, tuple(sorted(_element_signatures(S))))


@lru_cache(maxsize=None)
def semigroups_up_to_iso(max_order):
    """All semigroups of order <= max_order, one per isomorphism class."""
    reps = []
    for n in range(1, max_order + 1):
        buckets = {}
        for table in associative_tables(n):
            S = from_table(table)
            key = _invariant_key(S)
            bucket = buckets.setdefault(key, [])
            if not any(are_isomorphic(S, R) for R in bucket):
                bucket.append(S)
        for bucket in buckets.values():
            reps.extend(bucket)
    return tuple(reps)
