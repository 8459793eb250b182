"""Orbit notation, the L-class action of a semigroup on an inverse ideal,
and the theta-disjoint glued union built from such an action.

Orbit strings follow the classical cycle/tail convention: cycles are written
``(a,b,c)``, tails ``(a,b,θ)`` (the last point maps to theta), length-one
tails ``(j,θ)`` are omitted, singleton cycles ``(j)`` are written explicitly,
and the all-to-theta map prints as ``θ̄``.  ASCII mode spells theta as ``0``
and the all-to-theta map as ``O``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FiniteSemigroup, Transformation
from .errors import (
    DeltaNotHomomorphism,
    DeltaNotPartialInjective,
    IdealNotInverseForm,
    NotPartialInjective,
    SemigroupError,
    ThetaPreimageWrong,
)

THETA = "θ"
THETA_BAR = "θ̄"


@dataclass(frozen=True)
class OrbitDecomposition:
    """Cycles and length->=2 tails (1-based points) of a partial-injective map.

    Length-one tails (j, theta) are omitted by convention, so a decomposition
    with no cycles and no tails is the all-to-theta map.
    """

    degree: int
    cycles: tuple
    tails: tuple

    @property
    def is_theta_bar(self):
        return not self.cycles and not self.tails


def orbits(t):
    """Orbit decomposition of a transformation injective off its theta part.

    Cycles are rotated to start at their least point and sorted by first
    point; tails are sorted by their final point (the one mapping to theta).
    """
    d = t.degree
    preimg = {}
    for p, v in enumerate(t.images):
        if v != d:
            if v in preimg:
                raise NotPartialInjective(
                    f"points {preimg[v] + 1} and {p + 1} share image {v + 1}"
                )
            preimg[v] = p
    seen = [False] * d
    tails = []
    for h in range(d):
        if h in preimg:
            continue
        chain = [h]
        seen[h] = True
        p = h
        while t.images[p] != d:
            p = t.images[p]
            chain.append(p)
            seen[p] = True
        if len(chain) >= 2:
            tails.append(tuple(x + 1 for x in chain))
    cycles = []
    for s in range(d):
        if seen[s]:
            continue
        chain = [s]
        seen[s] = True
        p = t.images[s]
        while p != s:
            chain.append(p)
            seen[p] = True
            p = t.images[p]
        k = chain.index(min(chain))
        cycles.append(tuple(x + 1 for x in chain[k:] + chain[:k]))
    cycles.sort(key=lambda c: c[0])
    tails.sort(key=lambda c: (c[-1], c[0]))
    return OrbitDecomposition(d, tuple(cycles), tuple(tails))


def format_orbits(dec, ascii_mode=False):
    theta = "0" if ascii_mode else THETA
    tbar = "O" if ascii_mode else THETA_BAR
    parts = []
    for c in dec.cycles:
        parts.append("(" + ",".join(str(x) for x in c) + ")")
    for c in dec.tails:
        parts.append("(" + ",".join(str(x) for x in c) + "," + theta + ")")
    if not parts:
        return tbar
    return "".join(parts)


def parse_orbits(s, degree):
    """Parse an orbit string back into a Transformation on 1..degree.

    Points not mentioned map to theta (the omitted (j, theta) orbits).
    """
    s = s.strip()
    if s in (THETA_BAR, "O"):
        return Transformation.theta_bar(degree)
    if not (s.startswith("(") and s.endswith(")")):
        raise SemigroupError(f"bad orbit string: {s!r}")
    images = [degree] * degree
    assigned = [False] * degree
    for group in s[1:-1].split(")("):
        toks = [tok.strip() for tok in group.split(",")]
        pts = []
        tail = False
        for k, tok in enumerate(toks):
            if tok in (THETA, "0"):
                if k != len(toks) - 1:
                    raise SemigroupError(f"theta not in final position: {s!r}")
                tail = True
            else:
                pts.append(int(tok) - 1)
        if not pts:
            raise SemigroupError(f"empty orbit in {s!r}")
        for p in pts:
            if not 0 <= p < degree:
                raise SemigroupError(f"point {p + 1} out of range in {s!r}")
            if assigned[p]:
                raise SemigroupError(f"point {p + 1} repeated in {s!r}")
            assigned[p] = True
        for a, b in zip(pts, pts[1:]):
            images[a] = b
        images[pts[-1]] = degree if tail else pts[0]
    return Transformation(degree, images)


def transformation_from_orbits(s, degree):
    return parse_orbits(s, degree)


# -- the L-class action ------------------------------------------------------


@dataclass(frozen=True)
class GammaRepresentation:
    """Action of a semigroup on the L-class indices of an inverse-form ideal."""

    host: FiniteSemigroup
    n: int
    maps: tuple  # element id -> Transformation on n points

    def transformation(self, s):
        return self.maps[s]

    def orbit_string(self, s, ascii_mode=False):
        return format_orbits(orbits(self.maps[s]), ascii_mode=ascii_mode)


def gamma(S, ideal_class):
    """L-class action for a designated ideal J-class of the form M0(G,n,n;I_n).

    ``ideal_class`` is the set of nonzero elements of the ideal (a single
    J-class); the caller designates it, typically via a principal-series
    factor.  The action of s sends L-class index j to j' when right
    multiplication by s carries L-class j into L-class j', and to theta when
    the product leaves the class.
    """
    from .structure import rees_coordinatize

    spec, coords = rees_coordinatize(S, ideal_class)
    if spec.n != spec.m or not spec.with_zero or not _is_identity_matrix(spec):
        raise IdealNotInverseForm("designated ideal is not of the form M0(G,n,n;I_n)")
    n = spec.n
    e_g = spec.group.identity
    reps = {}
    for elem, (g, i, j) in coords.items():
        if i == 0 and g == e_g:
            reps[j] = elem
    T = S.table
    maps = []
    for s in range(S.order):
        images = [n] * n
        for j in range(n):
            prod = int(T[reps[j], s])
            if prod in coords:
                images[j] = coords[prod][2]
        maps.append(Transformation(n, images))
    rep = GammaRepresentation(S, n, tuple(maps))
    _validate_gamma(rep)
    return rep


def _is_identity_matrix(spec):
    e = spec.group.identity
    if e is None:
        return False
    for j in range(spec.m):
        for i in range(spec.n):
            want = e if i == j else None
            if spec.P[j][i] != want:
                return False
    return True


def _validate_gamma(rep):
    S = rep.host
    for s in range(S.order):
        off_theta = [v for v in rep.maps[s].images if v != rep.n]
        if len(off_theta) != len(set(off_theta)):
            raise NotPartialInjective(f"action of element {s} is not injective")
    for a in range(S.order):
        ta = rep.maps[a]
        for b in range(S.order):
            if rep.maps[int(S.table[a, b])] != ta.then(rep.maps[b]):
                raise DeltaNotHomomorphism(
                    f"action is not a homomorphism at ({a}, {b})"
                )


def epsilon_iota(rep, w):
    """Defined-point set, image set, and their sizes, for the action of w."""
    t = rep.maps[w]
    eps1 = {i + 1 for i in range(rep.n) if t.images[i] != rep.n}
    eps2 = {v + 1 for v in t.images if v != rep.n}
    return eps1, eps2, len(eps1), len(eps2)


# -- glued union -------------------------------------------------------------


def glue(n, T, delta, names_m=None):
    """Theta-disjoint union of M0({1},n,n;I_n) with T along the action delta.

    ``delta`` maps each element id of T to a Transformation on n points.  T
    must have a zero; delta must be a homomorphism sending exactly the zero
    to the all-to-theta map, with every delta(t) injective off its theta part.
    The ideal acts as rank-one maps, and the two mixed products are
      (1;i,j) t = (1;i, delta(t)(j))          (theta when undefined)
      t (1;i,j) = (1;i',j) with delta(t)(i') = i   (theta when no such i').
    Element ids: the n*n ideal elements (i,j) (id i*n+j), then the nonzero
    elements of T in their own order, then the shared zero.
    """
    if T.zero is None:
        raise SemigroupError("top semigroup must have a zero")
    for t in range(T.order):
        tr = delta[t]
        if tr.degree != n:
            raise SemigroupError("delta degree mismatch")
        off_theta = [v for v in tr.images if v != n]
        if len(off_theta) != len(set(off_theta)):
            raise DeltaNotPartialInjective(f"delta({t}) is not injective off theta")
        if tr.is_theta_bar() != (t == T.zero):
            raise ThetaPreimageWrong(
                "delta must send the zero and only the zero to theta-bar"
            )
    for a in range(T.order):
        for b in range(T.order):
            if delta[int(T.table[a, b])] != delta[a].then(delta[b]):
                raise DeltaNotHomomorphism(f"delta is not a homomorphism at ({a},{b})")

    top = [t for t in range(T.order) if t != T.zero]
    top_pos = {t: n * n + k for k, t in enumerate(top)}
    order = n * n + len(top) + 1
    theta = order - 1

    def mid(i, j):
        return i * n + j

    table = np.full((order, order), theta, dtype=np.int32)
    for i in range(n):
        for j in range(n):
            for l in range(n):
                table[mid(i, j), mid(j, l)] = mid(i, l)
    for t in top:
        tr = delta[t]
        pre = {v: p for p, v in enumerate(tr.images) if v != n}
        for i in range(n):
            for j in range(n):
                v = tr.images[j]
                if v != n:
                    table[mid(i, j), top_pos[t]] = mid(i, v)
                if i in pre:
                    table[top_pos[t], mid(i, j)] = mid(pre[i], j)
    for a in top:
        for b in top:
            ab = int(T.table[a, b])
            table[top_pos[a], top_pos[b]] = theta if ab == T.zero else top_pos[ab]

    if names_m is None:
        names = [f"(1;{i + 1},{j + 1})" for i in range(n) for j in range(n)]
    else:
        names = list(names_m)
    names += [T.name_of(t) for t in top]
    names.append("0")
    glued = FiniteSemigroup(table, zero=theta, names=names)
    glued._cache["glue_parts"] = (n, tuple(top_pos.items()))
    return glued
