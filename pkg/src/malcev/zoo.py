"""Builders for the bundled collection of named semigroups, plus the
alternating-boxes combinatorial search used by the product-primality
machinery.  Entries are cached, so repeated lookups share decided caches.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .action import glue, parse_orbits
from .core import (
    FiniteSemigroup,
    Transformation,
    from_table,
    from_transformations,
)
from .errors import NoPairFound, SemigroupError, SizeBudgetExceeded


@dataclass(frozen=True)
class ZooEntry:
    name: str
    params: tuple
    semigroup: FiniteSemigroup
    note: str


def trivial():
    return from_table([[0]], identity=0, names=["e"])


def lz2():
    return from_table([[0, 0], [1, 1]], names=["a", "b"])


def rz2():
    return from_table([[0, 1], [0, 1]], names=["a", "b"])


def c2():
    return from_table([[0, 1], [1, 0]], identity=0, names=["1", "u"])


def cyclic_group(k):
    table = [[(i + j) % k for j in range(k)] for i in range(k)]
    return from_table(table, identity=0)


def s3():
    perms = sorted(permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(q[p[i]] for i in range(3))] for q in perms] for p in perms]
    return from_table(table, identity=idx[(0, 1, 2)])


def c7c3():
    """The nonabelian group of order 21 (2 has multiplicative order 3 mod 7)."""
    elems = [(i, j) for i in range(7) for j in range(3)]
    idx = {e: k for k, e in enumerate(elems)}
    table = [
        [idx[((i + i2 * pow(2, j, 7)) % 7, (j + j2) % 3)] for (i2, j2) in elems]
        for (i, j) in elems
    ]
    return from_table(table, identity=idx[(0, 0)])


def null_top(names):
    """Null semigroup on the given names plus a zero named '0'."""
    k = len(names) + 1
    table = [[k - 1] * k for _ in range(k)]
    return from_table(table, zero=k - 1, names=list(names) + ["0"])


def f7():
    """Order-7 union of a 2x2 inverse ideal with the order-2 group and zero."""
    top = from_table(
        [[0, 1, 2], [1, 0, 2], [2, 2, 2]], zero=2, identity=0, names=["1", "u", "0"]
    )
    delta = {
        0: Transformation.identity(2),
        1: parse_orbits("(1,2)", 2),
        2: Transformation.theta_bar(2),
    }
    return glue(2, top, delta)


def n1():
    """Order-19 union of a 4x4 inverse ideal with a two-element null top."""
    top = null_top(["w", "v"])
    delta = {
        0: parse_orbits("(2,3,0)(1,4,0)", 4),
        1: parse_orbits("(1,3,0)(2,4,0)", 4),
        2: Transformation.theta_bar(4),
    }
    return glue(4, top, delta)


def _rank_one_seeds(degree):
    return [
        Transformation.rank_one(degree, i, j)
        for i in range(degree)
        for j in range(degree)
    ]


def f12():
    """Order-12 transformation semigroup on 3 points plus theta."""
    gens = [
        parse_orbits("(1)(3,2,0)", 3),
        parse_orbits("(3,1,2,0)", 3),
    ]
    return from_transformations(3, gens + _rank_one_seeds(3))


def n3():
    """Order-20 transformation semigroup on 4 points plus theta."""
    gens = [
        parse_orbits("(2,3,0)(1,4,0)", 4),
        parse_orbits("(1,3,0)(2,4,0)", 4),
        parse_orbits("(2,1,0)(4,3,0)", 4),
    ]
    return from_transformations(4, gens + _rank_one_seeds(4))


def n2():
    """The 127-element closure of two transformations on 10 points."""
    gens = [
        parse_orbits("(8,2,6,1,5,0)(3,7,0)(9,4,0)", 10),
        parse_orbits("(1,8,0)(7,2,0)(5,4,10,3,9,0)", 10),
    ]
    return from_transformations(10, gens)


# Non-ideal part of n2: the 26 elements outside the rank-one ideal, in the
# canonical orbit notation the printer produces.
N2_TOP_ORBITS = (
    "(1)(7,5,0)",
    "(1,2,0)(3,4,0)(10,7,6,0)",
    "(1,2,0)(9,10,0)",
    "(10)(4,2,0)",
    "(10,4,7,0)",
    "(2,1,0)(8,6,5,0)",
    "(3,10,2,0)",
    "(3,2,0)(1,4,0)(6,8,0)(9,10,0)",
    "(3,4,0)(6,8,0)",
    "(3,6,2,0)",
    "(4)(5,7,0)",
    "(4,3,0)(5,10,9,0)",
    "(5,2,0)(4,10,0)",
    "(5,3,0)(4,9,0)",
    "(6)(3,1,0)",
    "(6,1,0)(3,5,0)",
    "(6,4,0)(2,8,0)",
    "(7,1,6,0)",
    "(7,2,0)(1,8,0)(5,4,10,3,9,0)",
    "(7,4,0)(1,8,0)",
    "(8)(2,4,0)",
    "(8,1,0)(2,5,0)",
    "(9)(1,3,0)",
    "(9,3,0)(1,10,0)",
    "(9,4,0)(1,7,0)",
    "(9,4,0)(8,2,6,1,5,0)(3,7,0)",
)


def n4():
    """The 13-element table completed from the matrix-unit and null relations.

    Top part: four elements (a,b) over {1,2} multiplying as 2x2 matrix units
    when inner coordinates match; mismatched products land on eight distinct
    null elements; a triple of top elements vanishes exactly when both inner
    coordinates mismatch, which forces the mixed products by associativity
    under the left-bracketed reading.
    """
    tops = [(1, 1), (1, 2), (2, 1), (2, 2)]
    tid = {t: k for k, t in enumerate(tops)}
    null_id = {}
    k = 4
    for (a, b) in tops:
        for (c, d) in tops:
            if b != c:
                null_id[((a, b), (c, d))] = k
                k += 1
    theta = 12
    table = [[theta] * 13 for _ in range(13)]
    for s in tops:
        for t in tops:
            if s[1] == t[0]:
                table[tid[s]][tid[t]] = tid[(s[0], t[1])]
            else:
                table[tid[s]][tid[t]] = null_id[(s, t)]
    for ((s, t), nid) in null_id.items():
        for u in tops:
            # n * u with n = s*t: nonzero iff t ends where u starts
            if t[1] == u[0]:
                table[nid][tid[u]] = null_id[(s, (t[0], u[1]))]
            # u * n: nonzero iff u ends where s starts
            if u[1] == s[0]:
                table[tid[u]][nid] = null_id[((u[0], s[1]), t)]
    names = (
        [f"({a},{b})" for (a, b) in tops]
        + [f"a{j}" for j in range(5, 13)]
        + ["0"]
    )
    return from_table(table, zero=theta, names=names)


def _n2n_generators(n):
    """Tail-map generators on the 6*2^n points a, a', b, b', c, d."""
    m = 2 ** n

    def pt(block, i):  # block in a, a', b, b', c, d; i is 1-based
        return "aAbBcd".index(block) * m + (i - 1)

    deg = 6 * m
    pairs = []

    def tails(ps):
        img = [deg] * deg
        for src, dst in ps:
            img[src] = dst
        return Transformation(deg, img)

    x = tails([(pt("c", i), pt("a", i)) for i in range(1, m + 1)]
              + [(pt("B", i), pt("d", i)) for i in range(1, m + 1)])
    y = tails([(pt("A", i), pt("c", i)) for i in range(1, m + 1)]
              + [(pt("d", i), pt("b", i)) for i in range(1, m + 1)])
    ws = []
    for i in range(1, n + 1):
        lo = 2 ** (n - i) + 1
        hi = 2 ** (n - i + 1)
        tgt0 = sum(2 ** (n - j) for j in range(1, i))
        src = list(range(lo, hi + 1))
        tgt = [tgt0 + t for t in range(1, len(src) + 1)]
        if i % 2 == 1:  # b -> a', a -> b'
            ps = [(pt("b", s), pt("A", t)) for s, t in zip(src, tgt)]
            ps += [(pt("a", s), pt("B", t)) for s, t in zip(src, tgt)]
        else:  # b -> b', a -> a'
            ps = [(pt("b", s), pt("B", t)) for s, t in zip(src, tgt)]
            ps += [(pt("a", s), pt("A", t)) for s, t in zip(src, tgt)]
        ws.append(tails(ps))
    if n % 2 == 1:
        w_next = tails([(pt("a", 1), pt("A", m)), (pt("b", 1), pt("B", m))])
        w_last = tails([(pt("a", 1), pt("B", m)), (pt("b", 1), pt("A", m))])
    else:
        w_next = tails([(pt("a", 1), pt("B", m)), (pt("b", 1), pt("A", m))])
        w_last = tails([(pt("b", 1), pt("B", m)), (pt("a", 1), pt("A", m))])
    ws += [w_next, w_last]
    return deg, [x, y] + ws


def n2n(n, closure_budget=None):
    """Member n of the family witnessing that the unit-then-free condition
    needs ever larger generating sets; 6*2^n points plus theta."""
    if n < 1:
        raise SemigroupError("n must be positive")
    if n > 2 and closure_budget is None:
        raise SizeBudgetExceeded(
            "n2n with n > 2 needs an explicit closure_budget override"
        )
    deg, gens = _n2n_generators(n)
    budget = closure_budget if closure_budget is not None else 100_000
    return from_transformations(deg, gens + _rank_one_seeds(deg),
                                closure_budget=budget)


def sprime():
    """Folded six-point quotient of the n2n family."""
    gens = [
        parse_orbits("(5,1,0)(4,6,0)", 6),   # X: c->a, b'->d
        parse_orbits("(2,5,0)(6,3,0)", 6),   # Y: a'->c, d->b
        parse_orbits("(3,2,0)(1,4,0)", 6),   # W1: b->a', a->b'
        parse_orbits("(1,2,0)(3,4,0)", 6),   # W2: a->a', b->b'
    ]
    return from_transformations(6, gens + _rank_one_seeds(6))


# -- registry -----------------------------------------------------------------


_BUILDERS = {
    "trivial": (trivial, False),
    "lz2": (lz2, False),
    "rz2": (rz2, False),
    "c2": (c2, False),
    "s3": (s3, False),
    "c7c3": (c7c3, False),
    "f7": (f7, False),
    "f12": (f12, False),
    "n1": (n1, False),
    "n2": (n2, False),
    "n3": (n3, False),
    "n4": (n4, False),
    "n2n": (n2n, True),
    "sprime": (sprime, False),
}

_CACHE = {}


def names():
    return sorted(_BUILDERS)


def build(name, param=None):
    """Build (and cache) a zoo entry; param is the family index for n2n."""
    if name not in _BUILDERS:
        raise SemigroupError(f"unknown zoo name {name!r}")
    builder, takes_param = _BUILDERS[name]
    key = (name, param)
    got = _CACHE.get(key)
    if got is None:
        if takes_param:
            got = builder(param if param is not None else 1)
        elif param is not None:
            raise SemigroupError(f"zoo entry {name!r} takes no parameter")
        else:
            got = builder()
        _CACHE[key] = got
    return got


def entry(name, param=None):
    sg = build(name, param)
    notes = {
        "f7": "glued union of the 2x2 trivial-group inverse ideal with C2 plus zero",
        "f12": "closure of two tail maps over the 3x3 rank-one ideal",
        "n1": "glued union of the 4x4 inverse ideal with a null top {w, v}",
        "n2": "closure of two tail maps on 10 points",
        "n3": "closure of three tail maps over the 4x4 rank-one ideal",
        "n4": "explicit 13-element completion of the matrix-unit/null relations",
        "n2n": "tail-map family on 6*2^n points over the rank-one ideal",
        "sprime": "six-point folded quotient of the n2n family",
    }
    return ZooEntry(name, (param,) if param is not None else (), sg,
                    notes.get(name, "classical example"))


# -- alternating boxes ----------------------------------------------------------


def choose_pair(n, coloring):
    """A pair (p, q) with p | n whose arithmetic progression of boxes
    q, q+p, q+2p, ... (mod 2n, 1-based) alternates in color.

    Boxes are labeled 1..2n; box 1 is black and every even box is white.
    ``coloring`` maps odd labels to True (black) / False (white); omitted odd
    boxes default to white; box 1 may only be colored black.  Divisors are
    tried largest first, starts in increasing order, so the returned pair is
    deterministic.
    """
    if n < 1:
        raise SemigroupError("n must be positive")
    boxes = 2 * n
    color = [None] * (boxes + 1)
    for lab in range(1, boxes + 1):
        if lab % 2 == 0:
            color[lab] = False
        else:
            color[lab] = bool(coloring.get(lab, False))
    color[1] = True
    if coloring.get(1, True) is False:
        raise SemigroupError("box 1 must be black")
    for lab in coloring:
        if not (1 <= lab <= boxes) or lab % 2 == 0:
            raise SemigroupError(f"coloring assigns a non-odd or out-of-range box {lab}")
    for p in sorted((d for d in range(1, n + 1) if n % d == 0), reverse=True):
        cycle_len = boxes // math.gcd(boxes, p)
        for q in range(1, boxes + 1):
            seq = [((q - 1 + k * p) % boxes) + 1 for k in range(cycle_len)]
            if all(color[seq[k]] != color[seq[(k + 1) % cycle_len]]
                   for k in range(cycle_len)):
                return (p, q)
    raise NoPairFound(f"no alternating pair for n={n}, coloring={coloring!r}")
