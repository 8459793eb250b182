"""Omega terms and iterated-endomorphism identities evaluated in finite
semigroups.

An omega power x^w is the unique idempotent power of x; x^(w-1) and x^(w+1)
are its neighbours inside the kernel cycle of <x>.  The omega power of an
endomorphism is computed per assignment by cycle detection on the trajectory
of variable values, never through explicit exponents.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .core import generated_subsemigroup
from .errors import SemigroupError


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Cat:
    parts: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    shift: int  # omega + shift, shift in {-1, 0, 1}

    def __post_init__(self):
        if self.shift not in (-1, 0, 1):
            raise SemigroupError("only omega-1, omega, omega+1 powers supported")


def word(letters):
    """Concatenation of single-letter variables, e.g. word('xzytyzx')."""
    parts = tuple(Var(ch) for ch in letters)
    return parts[0] if len(parts) == 1 else Cat(parts)


def variables_of(term):
    if isinstance(term, Var):
        return {term.name}
    if isinstance(term, Cat):
        out = set()
        for p in term.parts:
            out |= variables_of(p)
        return out
    return variables_of(term.base)


def eval_term(S, term, env):
    if isinstance(term, Var):
        return env[term.name]
    if isinstance(term, Cat):
        return S.word([eval_term(S, p, env) for p in term.parts])
    v = eval_term(S, term.base, env)
    if term.shift == 0:
        return S.omega(v)
    if term.shift == 1:
        return S.omega_plus(v)
    return S.omega_minus(v)


def eval_term_vec(S, term, env):
    """Vectorized evaluation; env maps variables to scalars or index arrays."""
    if isinstance(term, Var):
        return env[term.name]
    if isinstance(term, Cat):
        T = S.table
        acc = eval_term_vec(S, term.parts[0], env)
        for p in term.parts[1:]:
            acc = T[acc, eval_term_vec(S, p, env)]
        return acc
    v = eval_term_vec(S, term.base, env)
    data = S._power_data()
    arr = {0: data[2], 1: data[3], -1: data[4]}[term.shift]
    return arr[v]


class Endomorphism:
    """Substitution variable -> term over a fixed finite alphabet."""

    def __init__(self, images):
        self.images = dict(images)
        self.alphabet = tuple(sorted(self.images))
        for t in self.images.values():
            if not variables_of(t) <= set(self.alphabet):
                raise SemigroupError("image uses a variable outside the alphabet")

    def moving(self):
        return tuple(v for v in self.alphabet if self.images[v] != Var(v))


@dataclass(frozen=True)
class IteratedIdentity:
    endo: Endomorphism
    lhs: str
    rhs: str


def iterate_endo_to_omega(S, endo, env):
    """Variable values at the omega power of the induced self-map.

    Follows the tuple trajectory to its cycle (transient t, period p) and
    returns the assignment at the least index m >= t with p | m, which is the
    common value of the iterates at factorial indices.
    """
    names = endo.alphabet
    state = tuple(env[v] for v in names)
    seen = {}
    states = []
    while state not in seen:
        seen[state] = len(states)
        states.append(state)
        cur = dict(zip(names, state))
        state = tuple(eval_term(S, endo.images[v], cur) for v in names)
    t = seen[state]
    p = len(states) - t
    m = p * ((t + p - 1) // p)
    return dict(zip(names, states[m]))


def _func_omega(f):
    """Pointwise omega power of a self-map given as an index array.

    Returns the unique idempotent power of the transformation f: the array E
    with E[s] = f^e(s) for an exponent e that exceeds every transient and is
    divisible by every cycle length.
    """
    N = f.size
    k = 0
    while (1 << k) < N:
        k += 1
    lifts = [f]
    g = f
    for _ in range(k):
        g = g[g]
        lifts.append(g)
    A = g  # f^(2^k)
    C = np.unique(A)
    pos = np.full(N, -1, dtype=np.int64)
    pos[C] = np.arange(C.size)
    visited = np.zeros(C.size, dtype=bool)
    L = 1
    for c0 in C:
        if visited[pos[c0]]:
            continue
        length = 0
        s = int(c0)
        while True:
            visited[pos[s]] = True
            s = int(f[s])
            length += 1
            if s == c0:
                break
        L = _lcm(L, length)
        if L > (1 << 40):
            return _func_omega_scalar(f)
    e = L * (((1 << k) + L - 1) // L)
    delta = e - (1 << k)
    out = A
    j = 0
    while delta:
        if delta & 1:
            out = lifts[j][out]
        delta >>= 1
        j += 1
    return out


def _lcm(a, b):
    import math

    return a * b // math.gcd(a, b)


def _func_omega_scalar(f):
    N = f.size
    out = np.empty(N, dtype=np.int64)
    for s0 in range(N):
        seen = {}
        trail = []
        s = s0
        while s not in seen:
            seen[s] = len(trail)
            trail.append(s)
            s = int(f[s])
        t = seen[s]
        p = len(trail) - t
        m = p * ((t + p - 1) // p)
        out[s0] = trail[m]
    return out


def identity_witness(S, ident):
    """Assignment violating the identity, or None if it holds everywhere.

    Variables range over S.  Assignments are scanned with the moving
    variables vectorized (all current bases move at most two variables).
    """
    endo = ident.endo
    names = endo.alphabet
    moving = endo.moving()
    fixed = tuple(v for v in names if v not in moving)
    n = S.order

    if len(moving) > 2:
        for combo in product(range(n), repeat=len(names)):
            env = dict(zip(names, combo))
            out = iterate_endo_to_omega(S, endo, env)
            if out[ident.lhs] != out[ident.rhs]:
                return env
        return None

    if not moving:
        # the identity endomorphism: the equation is just lhs = rhs
        if ident.lhs == ident.rhs or n == 1:
            return None
        env = {v: 0 for v in names}
        env[ident.rhs] = 1
        return env

    x_of = np.repeat(np.arange(n, dtype=np.int64), n)
    y_of = np.tile(np.arange(n, dtype=np.int64), n)
    for combo in product(range(n), repeat=len(fixed)):
        env = dict(zip(fixed, combo))
        if len(moving) == 1:
            u = moving[0]
            env[u] = np.arange(n, dtype=np.int64)
            f = eval_term_vec(S, endo.images[u], env)
            E = _func_omega(f)
            comp = {u: E}
        else:
            u, v = moving
            env[u] = x_of
            env[v] = y_of
            fu = eval_term_vec(S, endo.images[u], env).astype(np.int64)
            fv = eval_term_vec(S, endo.images[v], env)
            E = _func_omega(fu * n + fv)
            comp = {u: E // n, v: E % n}

        def side(var):
            if var in comp:
                return comp[var]
            return env[var]

        bad = side(ident.lhs) != side(ident.rhs)
        if np.any(bad):
            s = int(np.flatnonzero(bad)[0])
            out = dict(zip(fixed, combo))
            if len(moving) == 1:
                out[moving[0]] = s
            else:
                out[moving[0]], out[moving[1]] = divmod(s, n)
            return out
    return None


def check_identity(S, ident):
    return identity_witness(S, ident) is None


# -- the concrete bases -------------------------------------------------------


def mn_basis():
    endo = Endomorphism({
        "x": word("xzytyzx"),
        "y": word("yzxtxzy"),
        "z": Var("z"),
        "t": Var("t"),
    })
    return IteratedIdentity(endo, "x", "y")


def tm_basis():
    endo = Endomorphism({"x": word("xy"), "y": word("yx")})
    return IteratedIdentity(endo, "x", "y")


def bg_basis_holds(S):
    """(ef)^w = (fe)^w over all omega powers e, f."""
    T = S.table
    idem = S.idempotents()
    for e in idem:
        for f in idem:
            if S.omega(int(T[e, f])) != S.omega(int(T[f, e])):
                return False
    return True


def group_nilpotency_basis_holds(G):
    """The iterated-commutator basis for nilpotency of groups.

    Checks phi^w(x) = x^w for phi(x) = x^(w-1) y^(w-1) x y, phi(y) = y,
    together with the unit laws x^w y = y x^w = y.
    """
    n = G.order
    endo = Endomorphism({
        "x": Cat((Pow(Var("x"), -1), Pow(Var("y"), -1), Var("x"), Var("y"))),
        "y": Var("y"),
    })
    om = G._power_data()[2]
    T = G.table
    ar = np.arange(n, dtype=np.int64)
    for y in range(n):
        env = {"x": ar, "y": y}
        f = eval_term_vec(G, endo.images["x"], env)
        E = _func_omega(f)
        if not np.array_equal(E, om[ar].astype(np.int64)):
            return False
    for x in range(n):
        e = G.omega(x)
        if not (np.array_equal(T[e], ar) and np.array_equal(T[:, e], ar)):
            return False
    return True


def eunng_basis_witness(S):
    """Pair (a, b) whose generated subsemigroup violates the mn basis."""
    ident = mn_basis()
    memo = {}
    for a in range(S.order):
        for b in range(a, S.order):
            ids = S.closure_of((a, b))
            fp = ids.tobytes()
            got = memo.get(fp)
            if got is None:
                sub, _ = generated_subsemigroup(S, ids)
                got = check_identity(sub, ident)
                memo[fp] = got
            if not got:
                return (a, b)
    return None


def eunng_basis_holds(S):
    return eunng_basis_witness(S) is None


def pe_basis_witness(S):
    """Assignment (x, z) violating the positive-Engel limit identity.

    The identity substitutes x -> xzzx, y -> zxxz into the limit of the pair
    sequence with multiplier schedule z, z^2, z^3, ... and asks the two limit
    components to agree.  Substitution eliminates y, so assignments range
    over (x, z).  A limit component pair is equal iff the sampled orbit of
    the one-period map reaches the diagonal, which doubling decides.
    """
    from .nilpotency import _diag_mask, _iterate_to_power, _pow2_at_least, _step_array

    n = S.order
    T = S.table.astype(np.int64)
    ar = np.arange(n, dtype=np.int64)
    diag = _diag_mask(n)
    k = _pow2_at_least(n * n)
    for z in range(n):
        xz = T[:, z]
        u = T[T[xz, z], ar]  # x z z x
        zx = T[z, :]
        v = T[T[zx, ar], z]  # z x x z
        cur = u * n + v
        idx, per = S.index_period(z)
        power = z
        for _ in range(idx - 1):
            cur = _step_array(S, power)[cur]
            power = S.mul(power, z)
        phi = _step_array(S, power)
        for _ in range(per - 1):
            power = S.mul(power, z)
            phi = _step_array(S, power)[phi]
        final = _iterate_to_power(phi, k)[cur]
        bad = ~diag[final]
        if bad.any():
            return (int(np.flatnonzero(bad)[0]), z)
    return None


def pe_basis_holds(S):
    return pe_basis_witness(S) is None
