"""Finite semigroups as dense multiplication tables.

Element ids are dense 0-based integers; ``table[a][b]`` is the id of the
product a*b.  A distinguished zero or identity, when present, is an ordinary
id recorded in metadata.  All values are immutable after construction and
every operation here is a pure function, so shared instances are safe to use
concurrently.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadIdentity,
    BadZero,
    DegreeMismatch,
    NotAGroup,
    NotAssociative,
    NotRegular,
    SemigroupError,
    SizeBudgetExceeded,
)

DEFAULT_CLOSURE_BUDGET = 100_000
DEFAULT_PRODUCT_BUDGET = 10_000


class Transformation:
    """A total map on the pointed set {0..degree-1} | {theta}.

    theta is represented by the sentinel value ``degree`` and is always fixed.
    Composition is left-to-right: ``(s.then(t))(p) == t(s(p))``, matching the
    right action on points used throughout the package.
    """

    __slots__ = ("degree", "images")

    def __init__(self, degree, images):
        images = tuple(images)
        if len(images) != degree:
            raise DegreeMismatch(f"expected {degree} images, got {len(images)}")
        for v in images:
            if not 0 <= v <= degree:
                raise DegreeMismatch(f"image {v} out of range for degree {degree}")
        self.degree = degree
        self.images = images

    @property
    def theta(self):
        return self.degree

    @classmethod
    def identity(cls, degree):
        return cls(degree, range(degree))

    @classmethod
    def theta_bar(cls, degree):
        return cls(degree, [degree] * degree)

    @classmethod
    def rank_one(cls, degree, src, dst):
        """The map sending src to dst and every other point to theta."""
        images = [degree] * degree
        images[src] = dst
        return cls(degree, images)

    @classmethod
    def from_one_based(cls, seq):
        """Build from 1-based point images with 0 denoting theta."""
        seq = list(seq)
        degree = len(seq)
        images = []
        for v in seq:
            if not 0 <= v <= degree:
                raise DegreeMismatch(f"1-based image {v} out of range")
            images.append(degree if v == 0 else v - 1)
        return cls(degree, images)

    def one_based(self):
        return [0 if v == self.degree else v + 1 for v in self.images]

    def __call__(self, p):
        if p == self.degree:
            return p
        return self.images[p]

    def then(self, other):
        if other.degree != self.degree:
            raise DegreeMismatch("cannot compose transformations of different degree")
        d = self.degree
        return Transformation(d, [other(v) for v in self.images])

    def is_theta_bar(self):
        return all(v == self.degree for v in self.images)

    def __eq__(self, other):
        return (
            isinstance(other, Transformation)
            and self.degree == other.degree
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.degree, self.images))

    def __repr__(self):
        return f"Transformation({self.degree}, {self.images})"


@dataclass(frozen=True)
class ReesMatrixSpec:
    """Data for M (and M^0) over a group: sandwich matrix P is m x n.

    ``P[j][i]`` is the (j,i)-entry: either None (theta, only if with_zero) or a
    group element id.  Rows of the table group are left factors.
    """

    group: "FiniteSemigroup"
    n: int
    m: int
    P: tuple
    with_zero: bool = True

    def validate(self):
        if not is_group_table(self.group):
            raise NotAGroup("sandwich group is not a group")
        if self.n < 1 or self.m < 1:
            raise SemigroupError("n and m must be positive")
        if len(self.P) != self.m or any(len(row) != self.n for row in self.P):
            raise SemigroupError("P must be an m x n matrix")
        order = self.group.order
        for row in self.P:
            for v in row:
                if v is None:
                    if not self.with_zero:
                        raise NotRegular("theta entry in P but with_zero is false")
                elif not 0 <= v < order:
                    raise SemigroupError(f"P entry {v} is not a group element")
        for j in range(self.m):
            if all(self.P[j][i] is None for i in range(self.n)):
                raise NotRegular(f"row {j} of P is entirely theta")
        for i in range(self.n):
            if all(self.P[j][i] is None for j in range(self.m)):
                raise NotRegular(f"column {i} of P is entirely theta")


def identity_sandwich(n):
    """The n x n identity sandwich matrix over the trivial group."""
    return tuple(
        tuple(0 if i == j else None for i in range(n)) for j in range(n)
    )


class FiniteSemigroup:
    """Immutable finite semigroup over a dense Cayley table."""

    __slots__ = ("table", "zero", "identity", "names", "transformations", "_cache")

    def __init__(self, table, zero=None, identity=None, names=None,
                 transformations=None, _trusted=False):
        table = np.asarray(table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise SemigroupError("table must be square")
        n = table.shape[0]
        if n == 0:
            raise SemigroupError("semigroup must be nonempty")
        if table.min() < 0 or table.max() >= n:
            raise SemigroupError("table entries out of range")
        table.flags.writeable = False
        self.table = table
        self.zero = zero
        self.identity = identity
        self.names = list(names) if names is not None else None
        self.transformations = tuple(transformations) if transformations else None
        self._cache = {}
        if self.names is not None and len(self.names) != n:
            raise SemigroupError("names length must equal order")
        if not _trusted:
            _check_associative(table)
        if zero is not None:
            if not 0 <= zero < n:
                raise BadZero(f"zero id {zero} out of range")
            if not (np.all(table[zero] == zero) and np.all(table[:, zero] == zero)):
                raise BadZero(f"element {zero} is not a two-sided zero")
        if identity is not None:
            if not 0 <= identity < n:
                raise BadIdentity(f"identity id {identity} out of range")
            ok = np.all(table[identity] == np.arange(n)) and np.all(
                table[:, identity] == np.arange(n)
            )
            if not ok:
                raise BadIdentity(f"element {identity} is not a two-sided identity")

    @property
    def order(self):
        return self.table.shape[0]

    def mul(self, a, b):
        return int(self.table[a, b])

    def word(self, ids):
        ids = list(ids)
        acc = ids[0]
        for x in ids[1:]:
            acc = int(self.table[acc, x])
        return acc

    def name_of(self, x):
        if self.names is not None:
            return self.names[x]
        return str(x)

    def elements(self):
        return range(self.order)

    # -- cached derived data ------------------------------------------------

    def monoid_table(self):
        """Table of S^1 with a fresh identity appended as id `order`."""
        t1 = self._cache.get("monoid_table")
        if t1 is None:
            n = self.order
            t1 = np.empty((n + 1, n + 1), dtype=np.int32)
            t1[:n, :n] = self.table
            t1[n, : n + 1] = np.arange(n + 1)
            t1[: n + 1, n] = np.arange(n + 1)
            t1.flags.writeable = False
            self._cache["monoid_table"] = t1
        return t1

    def index_period(self, x):
        """(index, period) of the cyclic subsemigroup generated by x."""
        return (int(self._power_data()[0][x]), int(self._power_data()[1][x]))

    def omega(self, x):
        """The unique idempotent power of x."""
        return int(self._power_data()[2][x])

    def omega_plus(self, x):
        return int(self._power_data()[3][x])

    def omega_minus(self, x):
        return int(self._power_data()[4][x])

    def _power_data(self):
        data = self._cache.get("power_data")
        if data is None:
            n = self.order
            index = np.zeros(n, dtype=np.int64)
            period = np.zeros(n, dtype=np.int64)
            om = np.zeros(n, dtype=np.int32)
            omp = np.zeros(n, dtype=np.int32)
            omm = np.zeros(n, dtype=np.int32)
            T = self.table
            for x in range(n):
                seen = {x: 1}
                powers = [None, x]
                y = x
                while True:
                    y = int(T[y, x])
                    if y in seen:
                        t = seen[y]
                        p = len(powers) - t
                        break
                    seen[y] = len(powers)
                    powers.append(y)
                index[x] = t
                period[x] = p
                # least multiple of p that is >= t
                e = p * ((t + p - 1) // p)
                om[x] = powers[e] if e < len(powers) else _power(T, x, e)
                omp[x] = int(T[om[x], x])
                em1 = e + p - 1
                omm[x] = powers[em1] if em1 < len(powers) else _power(T, x, em1)
            data = (index, period, om, omp, omm)
            self._cache["power_data"] = data
        return data

    def idempotents(self):
        idem = self._cache.get("idempotents")
        if idem is None:
            n = self.order
            diag = self.table[np.arange(n), np.arange(n)]
            idem = tuple(int(x) for x in np.flatnonzero(diag == np.arange(n)))
            self._cache["idempotents"] = idem
        return idem

    def closure_of(self, seed):
        """Sorted array of element ids of the subsemigroup generated by seed."""
        key = ("closure", tuple(sorted(set(seed))))
        got = self._cache.get(key)
        if got is None:
            got = _closure_ids(self.table, key[1])
            self._cache[key] = got
        return got

    def __repr__(self):
        return f"FiniteSemigroup(order={self.order})"


def _power(T, x, e):
    y = x
    for _ in range(e - 1):
        y = int(T[y, x])
    return y


def _check_associative(table):
    n = table.shape[0]
    for a in range(n):
        lhs = table[table[a], :]
        rhs = table[a][table]
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)
            b, c = (int(v) for v in bad[0])
            raise NotAssociative(a, b, c)


def _closure_ids(table, seed):
    cur = np.unique(np.asarray(sorted(seed), dtype=np.int64))
    if cur.size == 0:
        raise SemigroupError("generating set must be nonempty")
    while True:
        prods = table[np.ix_(cur, cur)]
        new = np.union1d(cur, prods.ravel())
        if new.size == cur.size:
            return cur
        cur = new


# -- constructors -----------------------------------------------------------


def from_table(table, zero=None, identity=None, names=None):
    """Build a semigroup from a raw table, verifying all laws exhaustively."""
    return FiniteSemigroup(table, zero=zero, identity=identity, names=names)


def from_transformations(degree, generators, closure_budget=DEFAULT_CLOSURE_BUDGET,
                         names="orbits"):
    """Closure of a generator set inside the full transformation semigroup.

    Products compose left-to-right ((p)(s*t) = ((p)s)t), so the element ids of
    the closure enumerate generators first and then products in BFS order.
    The identity map is not adjoined unless it arises as a product.
    """
    gens = list(generators)
    if not gens:
        raise SemigroupError("need at least one generator")
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"generator degree {g.degree} != {degree}")

    elems = []
    ids = {}
    for g in gens:
        if g not in ids:
            ids[g] = len(elems)
            elems.append(g)
    frontier = list(range(len(elems)))
    while frontier:
        fresh = []
        for i in frontier:
            for j in range(len(elems)):
                for prod in (elems[i].then(elems[j]), elems[j].then(elems[i])):
                    if prod not in ids:
                        ids[prod] = len(elems)
                        elems.append(prod)
                        fresh.append(ids[prod])
                        if len(elems) > closure_budget:
                            raise SizeBudgetExceeded(
                                f"closure exceeded {closure_budget} elements"
                            )
        frontier = fresh

    n = len(elems)
    arr = np.empty((n, degree + 1), dtype=np.int32)
    for i, t in enumerate(elems):
        arr[i, :degree] = t.images
        arr[i, degree] = degree
    by_bytes = {arr[i].tobytes(): i for i in range(n)}
    table = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        # row j of `composed` is the image array of elems[i] followed by elems[j]
        composed = np.ascontiguousarray(arr[:, arr[i, :]])
        for j in range(n):
            table[i, j] = by_bytes[composed[j].tobytes()]

    zero = None
    tb = Transformation.theta_bar(degree)
    if tb in ids:
        zero = ids[tb]
    ident = None
    tid = Transformation.identity(degree)
    if tid in ids:
        ident = ids[tid]
    name_list = None
    if names == "orbits":
        from .action import format_orbits, orbits

        try:
            name_list = [format_orbits(orbits(t), ascii_mode=True) for t in elems]
        except SemigroupError:
            name_list = None
    elif names is not None:
        name_list = list(names)
    return FiniteSemigroup(
        table, zero=zero, identity=ident, names=name_list,
        transformations=elems, _trusted=True,
    )


def from_rees(spec):
    """Rees matrix semigroup from a validated spec.

    Nonzero elements (g;i,j) are numbered with i outermost, then j, then g;
    theta, when present, is the last id.
    """
    spec.validate()
    G = spec.group
    og = G.order
    n, m = spec.n, spec.m
    nz = n * m * og
    order = nz + (1 if spec.with_zero else 0)
    theta = nz if spec.with_zero else None

    def eid(g, i, j):
        return (i * m + j) * og + g

    table = np.empty((order, order), dtype=np.int32)
    if spec.with_zero:
        table[theta, :] = theta
        table[:, theta] = theta
    for i in range(n):
        for j in range(m):
            for g in range(og):
                a = eid(g, i, j)
                for i2 in range(n):
                    p = spec.P[j][i2]
                    for j2 in range(m):
                        for g2 in range(og):
                            b = eid(g2, i2, j2)
                            if p is None:
                                table[a, b] = theta
                            else:
                                table[a, b] = eid(G.word([g, p, g2]), i, j2)
    names = []
    gname = G.name_of
    for i in range(n):
        for j in range(m):
            for g in range(og):
                names.append(f"({gname(g)};{i + 1},{j + 1})")
    if spec.with_zero:
        names.append("0")
    sg = FiniteSemigroup(table, zero=theta, names=names, _trusted=True)
    sg._cache["rees_spec"] = spec
    return sg


def adjoin_identity(S):
    """S^1 with a fresh identity appended (always fresh, even for monoids)."""
    n = S.order
    table = np.empty((n + 1, n + 1), dtype=np.int32)
    table[:n, :n] = S.table
    table[n] = np.arange(n + 1)
    table[:, n] = np.arange(n + 1)
    names = None if S.names is None else S.names + ["1*"]
    return FiniteSemigroup(table, zero=S.zero, identity=n, names=names, _trusted=True)


def adjoin_zero(S):
    n = S.order
    table = np.empty((n + 1, n + 1), dtype=np.int32)
    table[:n, :n] = S.table
    table[n] = n
    table[:, n] = n
    names = None if S.names is None else S.names + ["0*"]
    return FiniteSemigroup(table, zero=n, identity=S.identity, names=names,
                           _trusted=True)


def omega_power(S, x):
    return S.omega(x)


def generated_subsemigroup(S, seed):
    """Subsemigroup generated by the given ids, plus its inclusion map.

    Returns (sub, inclusion) where inclusion[k] is the id in S of element k of
    the subsemigroup.
    """
    ids = S.closure_of(seed)
    pos = {int(x): k for k, x in enumerate(ids)}
    sub_table = S.table[np.ix_(ids, ids)]
    lut = np.full(S.order, -1, dtype=np.int32)
    lut[ids] = np.arange(ids.size, dtype=np.int32)
    sub_table = lut[sub_table]
    zero = pos.get(S.zero) if S.zero is not None else None
    ident = pos.get(S.identity) if S.identity is not None else None
    names = None if S.names is None else [S.names[int(x)] for x in ids]
    sub = FiniteSemigroup(sub_table, zero=zero, identity=ident, names=names,
                          _trusted=True)
    return sub, [int(x) for x in ids]


def direct_product(S, T, budget=DEFAULT_PRODUCT_BUDGET):
    """Componentwise product; element (a,b) has id a*|T| + b."""
    n, m = S.order, T.order
    if n * m > budget:
        raise SizeBudgetExceeded(f"direct product of size {n * m} exceeds {budget}")
    big = (S.table.astype(np.int64)[:, None, :, None] * m
           + T.table.astype(np.int64)[None, :, None, :])
    table = big.reshape(n * m, n * m).astype(np.int32)
    zero = None
    if S.zero is not None and T.zero is not None:
        zero = S.zero * m + T.zero
    ident = None
    if S.identity is not None and T.identity is not None:
        ident = S.identity * m + T.identity
    names = None
    if S.names is not None and T.names is not None:
        names = [f"({S.names[a]},{T.names[b]})" for a in range(n) for b in range(m)]
    sg = FiniteSemigroup(table, zero=zero, identity=ident, names=names, _trusted=True)
    sg._cache["product_factors"] = (S, T)
    return sg


def product_projections(P, S, T):
    """Projection maps of a direct product built by direct_product."""
    m = T.order
    left = [e // m for e in range(P.order)]
    right = [e % m for e in range(P.order)]
    return left, right


def is_group_table(S):
    """True iff S is a group (identity plus two-sided inverses)."""
    got = S._cache.get("is_group")
    if got is None:
        n = S.order
        got = False
        if S.identity is not None:
            e = S.identity
        else:
            e = next((x for x in range(n) if
                      np.all(S.table[x] == np.arange(n))
                      and np.all(S.table[:, x] == np.arange(n))), None)
        if e is not None:
            rows_ok = all(len(set(S.table[x])) == n for x in range(n))
            cols_ok = all(len(set(S.table[:, x])) == n for x in range(n))
            got = rows_ok and cols_ok
        S._cache["is_group"] = got
    return got


def group_inverses(G):
    if not is_group_table(G):
        raise NotAGroup("not a group")
    n = G.order
    e = next(x for x in range(n) if np.all(G.table[x] == np.arange(n)))
    inv = [0] * n
    for x in range(n):
        inv[x] = int(np.flatnonzero(G.table[x] == e)[0])
    return e, inv
