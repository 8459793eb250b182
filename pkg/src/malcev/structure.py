"""Green's relations, principal series, Rees coordinatization of simple
factors, and the classical structural predicates (aperiodic, inverse, block
group, nilpotent subgroups, commuting idempotents)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    FiniteSemigroup,
    ReesMatrixSpec,
    group_inverses,
    is_group_table,
)
from .errors import NotAGroup, NotSimpleFactor

NULL = "null"
COMPLETELY_SIMPLE = "completely-simple"
COMPLETELY_ZERO_SIMPLE = "completely-0-simple"


@dataclass(frozen=True)
class GreenData:
    r_classes: tuple
    l_classes: tuple
    j_classes: tuple
    h_classes: tuple
    j_leq: frozenset  # (a, b) with class a <=_J class b, reflexive
    j_class_of: tuple  # element id -> index into j_classes


def green(S):
    got = S._cache.get("green")
    if got is not None:
        return got
    n = S.order
    t1 = S.monoid_table()
    rows = t1[:n, :]  # x * S^1
    cols = t1[:, :n].T  # S^1 * x, as rows
    r_fp = [rows[x].tobytes() for x in range(n)]
    # the fingerprint must be of the *set*; sort copies first
    r_fp = [np.unique(rows[x]).tobytes() for x in range(n)]
    l_fp = [np.unique(cols[x]).tobytes() for x in range(n)]
    jmask = np.zeros((n, n), dtype=bool)
    for x in range(n):
        lx = np.unique(cols[x])
        jmask[x, t1[lx, :n].ravel()] = True
        jmask[x, t1[lx, n]] = True

    def group_by(fps):
        buckets = {}
        for x, fp in enumerate(fps):
            buckets.setdefault(fp, []).append(x)
        classes = sorted(buckets.values(), key=lambda c: c[0])
        return tuple(tuple(c) for c in classes)

    r_classes = group_by(r_fp)
    l_classes = group_by(l_fp)
    j_classes = group_by([jmask[x].tobytes() for x in range(n)])
    h_classes = group_by([r_fp[x] + l_fp[x] for x in range(n)])
    j_class_of = [0] * n
    for k, c in enumerate(j_classes):
        for x in c:
            j_class_of[x] = k
    leq = set()
    for a, ca in enumerate(j_classes):
        for b, cb in enumerate(j_classes):
            if jmask[cb[0], ca[0]]:
                leq.add((a, b))
    got = GreenData(
        r_classes, l_classes, j_classes, h_classes,
        frozenset(leq), tuple(j_class_of),
    )
    S._cache["green"] = got
    return got


@dataclass(frozen=True)
class FactorInfo:
    kind: str
    j_class: tuple
    rees: ReesMatrixSpec | None = None
    rees_coords: dict | None = None
    is_inverse_factor: bool = False
    maximal_subgroup: FiniteSemigroup | None = None


@dataclass(frozen=True)
class PrincipalSeries:
    chain: tuple  # descending ideals, starting with all of S; empty set omitted
    factors: tuple  # FactorInfo per consecutive difference


def principal_series(S):
    """Maximal strictly descending chain of ideals with classified factors.

    Among incomparable maximal J-classes the one with the lowest minimal
    element id is removed first, so the output is deterministic.
    """
    got = S._cache.get("principal_series")
    if got is not None:
        return got
    g = green(S)
    leq = g.j_leq
    remaining_classes = set(range(len(g.j_classes)))
    remaining = frozenset(range(S.order))
    chain = [tuple(sorted(remaining))]
    factors = []
    while remaining_classes:
        maximal = [
            a for a in remaining_classes
            if not any((a, b) in leq and a != b for b in remaining_classes)
        ]
        pick = min(maximal, key=lambda a: g.j_classes[a][0])
        jcls = g.j_classes[pick]
        remaining_classes.remove(pick)
        remaining = remaining - set(jcls)
        if remaining:
            chain.append(tuple(sorted(remaining)))
        factors.append(_classify_factor(S, jcls))
    got = PrincipalSeries(tuple(chain), tuple(factors))
    S._cache["principal_series"] = got
    return got


def _classify_factor(S, jcls):
    jset = set(jcls)
    T = S.table
    prods = {int(T[a, b]) for a in jcls for b in jcls}
    stays = prods & jset
    if not stays:
        return FactorInfo(NULL, tuple(jcls))
    if len(jcls) == 1 and S.zero == jcls[0] and S.order > 1:
        # the zero J-class: a one-element null semigroup
        return FactorInfo(NULL, tuple(jcls))
    kind = COMPLETELY_SIMPLE if prods <= jset else COMPLETELY_ZERO_SIMPLE
    spec, coords = rees_coordinatize(S, jcls)
    inverse_factor = (
        spec.n == spec.m
        and all(
            (spec.P[j][i] is None) == (i != j)
            for j in range(spec.m) for i in range(spec.n)
        )
        and all(spec.P[j][j] == spec.group.identity for j in range(spec.n))
    )
    return FactorInfo(kind, tuple(jcls), spec, coords, inverse_factor, spec.group)


def rees_coordinatize(S, jcls):
    """Rees matrix form of the (0-)simple principal factor on the J-class.

    Returns (spec, coords) where coords maps each element of the class to its
    (group id, row, column) coordinates; the element then equals
    r_row * g * q_col for the chosen class representatives.
    """
    jset = set(jcls)
    g = green(S)
    T = S.table
    idems = [e for e in S.idempotents() if e in jset]
    if not idems:
        raise NotSimpleFactor("factor has no idempotent (null class)")
    prods = {int(T[a, b]) for a in jcls for b in jcls}
    with_zero = not (prods <= jset)

    def rc_of(x):
        return next(c for c in g.r_classes if x in c)

    def lc_of(x):
        return next(c for c in g.l_classes if x in c)

    e = min(idems)
    r1, l1 = set(rc_of(e)), set(lc_of(e))
    r_list = [rc_of(e)] + sorted(
        {rc_of(x) for x in jcls if x not in r1}, key=lambda c: c[0]
    )
    l_rest = sorted({lc_of(x) for x in jcls if x not in l1}, key=lambda c: c[0])
    l_list = [lc_of(e)] + l_rest
    # pair L-classes with R-classes through idempotents when the factor is
    # inverse-like; this makes P the identity matrix.
    if len(idems) == len(r_list) == len(l_list):
        by_r = {}
        ok = True
        for f in idems:
            rc = r_list.index(rc_of(f)) if rc_of(f) in r_list else None
            if rc is None or rc in by_r:
                ok = False
                break
            by_r[rc] = lc_of(f)
        if ok and len(by_r) == len(r_list):
            l_list = [by_r[i] for i in range(len(r_list))]

    n, m = len(r_list), len(l_list)
    group_ids = sorted(r1 & l1)
    gpos = {x: k for k, x in enumerate(group_ids)}
    gt = [[gpos[int(T[a, b])] for b in group_ids] for a in group_ids]
    G = FiniteSemigroup(np.array(gt, dtype=np.int32), identity=gpos[e],
                        _trusted=True)
    if not is_group_table(G):
        raise NotSimpleFactor("group H-class is not a group")

    r_reps = []
    for rc in r_list:
        cand = sorted(set(rc) & l1)
        if not cand:
            raise NotSimpleFactor("missing H-class in factor")
        r_reps.append(cand[0])
    q_reps = []
    for lc in l_list:
        cand = sorted(set(lc) & r1)
        if not cand:
            raise NotSimpleFactor("missing H-class in factor")
        q_reps.append(cand[0])
    # normalize representatives so that r_i * e = r_i and e * q_j = q_j
    r_reps = [int(T[x, e]) for x in r_reps]
    q_reps = [int(T[e, x]) for x in q_reps]
    r_reps[0] = e
    q_reps[0] = e

    P = []
    for j in range(m):
        row = []
        for i in range(n):
            v = int(T[q_reps[j], r_reps[i]])
            row.append(gpos[v] if v in gpos else None)
        P.append(tuple(row))
    spec = ReesMatrixSpec(G, n, m, tuple(P), with_zero=with_zero)
    spec.validate()

    coords = {}
    ridx = {x: i for i, rc in enumerate(r_list) for x in rc}
    lidx = {x: j for j, lc in enumerate(l_list) for x in lc}
    for x in jcls:
        i, j = ridx[x], lidx[x]
        gx = next(
            (k for k in range(G.order)
             if S.word([r_reps[i], group_ids[k], q_reps[j]]) == x),
            None,
        )
        if gx is None:
            raise NotSimpleFactor(f"element {x} has no Rees coordinates")
        coords[x] = (gx, i, j)
    if len(coords) != n * m * G.order:
        raise NotSimpleFactor("factor is not rectangular over its group")
    return spec, coords


# -- predicates ---------------------------------------------------------------


def is_aperiodic(S):
    return bool(np.all(S._power_data()[1] == 1))


def _inverse_counts(S):
    got = S._cache.get("inverse_counts")
    if got is None:
        n = S.order
        T = S.table
        ar = np.arange(n)
        xyx = T[T, ar[:, None]]
        yxy = T[T.T, ar[None, :]]
        isinv = (xyx == ar[:, None]) & (yxy == ar[None, :])
        got = isinv.sum(axis=1)
        S._cache["inverse_counts"] = got
    return got


def inverses_of(S, x):
    n = S.order
    T = S.table
    return [y for y in range(n)
            if T[T[x, y], x] == x and T[T[y, x], y] == y]


def is_block_group(S):
    return bool(_inverse_counts(S).max() <= 1)


def is_inverse(S):
    counts = _inverse_counts(S)
    return bool(counts.min() == 1 and counts.max() == 1)


def idempotents_commute(S):
    idem = S.idempotents()
    T = S.table
    for a in idem:
        for b in idem:
            if T[a, b] != T[b, a]:
                return False
    return True


def noncommuting_idempotents(S):
    idem = S.idempotents()
    T = S.table
    for a in idem:
        for b in idem:
            if T[a, b] != T[b, a]:
                return (a, b)
    return None


def maximal_subgroups(S, dedup=True):
    """Group H-classes of the idempotents, optionally up to isomorphism."""
    from .division import are_isomorphic

    g = green(S)
    groups = []
    for e in S.idempotents():
        rc = next(c for c in g.r_classes if e in c)
        lc = next(c for c in g.l_classes if e in c)
        ids = sorted(set(rc) & set(lc))
        pos = {x: k for k, x in enumerate(ids)}
        gt = [[pos[int(S.table[a, b])] for b in ids] for a in ids]
        H = FiniteSemigroup(np.array(gt, dtype=np.int32), identity=pos[e],
                            _trusted=True)
        if not is_group_table(H):
            continue  # non-group H-class of a non-regular idempotent cannot occur
        groups.append(H)
    if not dedup:
        return groups
    distinct = []
    for H in groups:
        if not any(are_isomorphic(H, K) for K in distinct):
            distinct.append(H)
    return distinct


def is_nilpotent_group(G):
    """Lower central series of a group reaches the trivial subgroup."""
    if not is_group_table(G):
        raise NotAGroup("argument is not a group")
    e, inv = group_inverses(G)
    n = G.order
    current = frozenset(range(n))
    while True:
        comms = {
            G.word([inv[x], inv[h], x, h]) for x in range(n) for h in current
        }
        nxt = frozenset(int(v) for v in G.closure_of(comms))
        if nxt == {e}:
            return True
        if nxt == current:
            return False
        current = nxt


def is_bg_nil(S):
    got = S._cache.get("is_bg_nil")
    if got is None:
        got = is_block_group(S) and all(
            is_nilpotent_group(H) for H in maximal_subgroups(S)
        )
        S._cache["is_bg_nil"] = got
    return got
