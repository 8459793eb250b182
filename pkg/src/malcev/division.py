"""Division search (S divides T), isomorphism testing, and the product-
primality trial harness.

A division F < T is found by fixing one minimal generating set f_1..f_g of F
and searching tuples (t_1..t_g) of preimage candidates in T: if any division
exists, the preimages of the f_i under a witnessing surjection generate a
subsemigroup that still surjects, so the tuple search is complete.  Candidate
preimages must have compatible power structure (index(f) <= index(t) and
period(f) | period(t)); in particular nothing in an aperiodic semigroup can
map onto a nontrivial group element, which settles most negative queries
immediately.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .core import direct_product
from .errors import SemigroupError

DEFAULT_DIVISION_BUDGET = 2_000_000
DEFAULT_MAX_GEN = 4


class Unknown:
    """Search gave up within the stated budget; never a wrong verdict."""

    def __init__(self, budget, reason="budget exhausted"):
        self.budget = budget
        self.reason = reason

    def __bool__(self):
        raise TypeError("unknown division verdict used as a boolean")

    def __repr__(self):
        return f"Unknown(budget={self.budget}, reason={self.reason!r})"


@dataclass(frozen=True)
class DivisionWitness:
    generators: tuple  # ids in T
    images: tuple  # the fixed minimal generating set of F
    hom: dict  # id in <generators> -> id in F

    def check(self, F, T):
        sub = sorted(self.hom)
        for a in sub:
            for b in sub:
                ab = T.mul(a, b)
                if ab not in self.hom or self.hom[ab] != F.mul(self.hom[a], self.hom[b]):
                    return False
        return set(self.hom.values()) == set(range(F.order))


def minimal_generating_size(F):
    """(g, witness): least size of a generating set, seeded by F minus F*F."""
    n = F.order
    products = set(int(v) for v in F.table.ravel())
    mandatory = tuple(x for x in range(n) if x not in products)
    if mandatory and F.closure_of(mandatory).size == n:
        return len(mandatory), mandatory
    rest = [x for x in range(n) if x not in mandatory]
    for g in range(max(1, len(mandatory)), n + 1):
        for extra in combinations(rest, g - len(mandatory)):
            cand = mandatory + extra
            if F.closure_of(cand).size == n:
                return g, cand
    raise SemigroupError("unreachable: the full set always generates")


def _try_hom(F, T, gens_t, gens_f):
    """Extend t_i -> f_i to a homomorphism on <gens_t>; None on conflict."""
    hom = {}
    for t, f in zip(gens_t, gens_f):
        if hom.get(t, f) != f:
            return None
        hom[t] = f
    elems = list(hom)
    frontier = list(hom)
    TT = T.table
    FT = F.table
    while frontier:
        fresh = []
        for a in frontier:
            fa = hom[a]
            for b in list(elems):
                for (s, fs) in (
                    (int(TT[a, b]), int(FT[fa, hom[b]])),
                    (int(TT[b, a]), int(FT[hom[b], fa])),
                ):
                    known = hom.get(s)
                    if known is None:
                        hom[s] = fs
                        elems.append(s)
                        fresh.append(s)
                    elif known != fs:
                        return None
        frontier = fresh
    return hom


def find_division(F, T, budget=DEFAULT_DIVISION_BUDGET, max_gen=DEFAULT_MAX_GEN):
    """DivisionWitness if F divides T, None if not, Unknown on budget."""
    if F.order > T.order:
        return None
    g, gens_f = minimal_generating_size(F)
    if g > max_gen:
        return Unknown(budget, f"dividend needs {g} generators (cap {max_gen})")
    fidx = [F.index_period(f) for f in gens_f]
    tidx = [T.index_period(t) for t in range(T.order)]
    cands = []
    for (fi, fp) in fidx:
        cand = [t for t in range(T.order)
                if fi <= tidx[t][0] and tidx[t][1] % fp == 0]
        if not cand:
            return None
        cands.append(cand)
    tried = 0
    for tup in product(*cands):
        tried += 1
        if tried > budget:
            return Unknown(budget)
        hom = _try_hom(F, T, tup, gens_f)
        if hom is not None:
            if set(hom.values()) != set(range(F.order)):
                continue  # cannot happen: gens_f generates F
            return DivisionWitness(tup, gens_f, hom)
    return None


def divides(F, T, budget=DEFAULT_DIVISION_BUDGET, max_gen=DEFAULT_MAX_GEN):
    got = find_division(F, T, budget=budget, max_gen=max_gen)
    if isinstance(got, Unknown):
        return got
    return got is not None


def naive_divides(F, T):
    """Exhaustive reference search over all subsets of T and all assignments.

    Exponential in |T|; used to validate the generator-driven search on tiny
    targets.
    """
    n = T.order
    if F.order > n:
        return False
    ids = list(range(n))
    for r in range(1, n + 1):
        for X in combinations(ids, r):
            for fs in product(range(F.order), repeat=r):
                hom = _try_hom(F, T, X, fs)
                if hom is not None and set(hom.values()) == set(range(F.order)):
                    return True
    return False


# -- isomorphism ----------------------------------------------------------------


def _element_signatures(S):
    got = S._cache.get("elem_sigs")
    if got is None:
        n = S.order
        t1 = S.monoid_table()
        sigs = []
        for x in range(n):
            i, p = S.index_period(x)
            row = len(set(t1[x, :].tolist()))
            col = len(set(t1[:, x].tolist()))
            sigs.append((i, p, row, col))
        got = tuple(sigs)
        S._cache["elem_sigs"] = got
    return got


def _greedy_generators(S):
    n = S.order
    products = set(int(v) for v in S.table.ravel())
    gens = [x for x in range(n) if x not in products]
    have = set(int(v) for v in S.closure_of(gens)) if gens else set()
    while len(have) < n:
        nxt = next(x for x in range(n) if x not in have)
        gens.append(nxt)
        have = set(int(v) for v in S.closure_of(gens))
    return gens


def are_isomorphic(S, T):
    """Backtracking on generator images with power/ideal-size pruning."""
    if S is T:
        return True
    if S.order != T.order:
        return False
    sig_s = _element_signatures(S)
    sig_t = _element_signatures(T)
    if sorted(sig_s) != sorted(sig_t):
        return False
    gens = _greedy_generators(S)
    by_sig = {}
    for t in range(T.order):
        by_sig.setdefault(sig_t[t], []).append(t)

    def extend(fmap, inv, a, b):
        """Close fmap with a -> b; None on hom/injectivity conflict."""
        fmap = dict(fmap)
        inv = dict(inv)
        if fmap.get(a, b) != b or inv.get(b, a) != a:
            return None
        fmap[a] = b
        inv[b] = a
        frontier = [a]
        elems = list(fmap)
        while frontier:
            fresh = []
            for u in frontier:
                for v in list(elems):
                    for (s, w) in (
                        (S.mul(u, v), T.mul(fmap[u], fmap[v])),
                        (S.mul(v, u), T.mul(fmap[v], fmap[u])),
                    ):
                        known = fmap.get(s)
                        if known is None:
                            if inv.get(w) is not None:
                                return None
                            if sig_s[s] != sig_t[w]:
                                return None
                            fmap[s] = w
                            inv[w] = s
                            elems.append(s)
                            fresh.append(s)
                        elif known != w:
                            return None
            frontier = fresh
        return fmap, inv

    def search(i, fmap, inv):
        if i == len(gens):
            return len(fmap) == S.order
        a = gens[i]
        if a in fmap:
            return search(i + 1, fmap, inv)
        for b in by_sig.get(sig_s[a], ()):
            if b in inv:
                continue
            got = extend(fmap, inv, a, b)
            if got is not None and search(i + 1, got[0], got[1]):
                return True
        return False

    return search(0, {}, {})


# -- product-primality trials -----------------------------------------------------


@dataclass(frozen=True)
class TrialResult:
    status: str  # confirmed | vacuous | unknown | violation
    via: str | None = None

    @property
    def is_violation(self):
        return self.status == "violation"


def times_prime_trial(F, T, V, budget=DEFAULT_DIVISION_BUDGET,
                      product_budget=100_000):
    """Check one instance of: F < T x V implies F < T or F < V."""
    P = direct_product(T, V, budget=product_budget)
    d = divides(F, P, budget=budget)
    if isinstance(d, Unknown):
        return TrialResult("unknown")
    if not d:
        return TrialResult("vacuous")
    dt = divides(F, T, budget=budget)
    if dt is True:
        return TrialResult("confirmed", "left")
    dv = divides(F, V, budget=budget)
    if dv is True:
        return TrialResult("confirmed", "right")
    if isinstance(dt, Unknown) or isinstance(dv, Unknown):
        return TrialResult("unknown")
    return TrialResult("violation")
