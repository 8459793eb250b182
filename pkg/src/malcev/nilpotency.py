"""Deciders built on the two-sided pair dynamics.

A pair state (x, y) over S steps under a multiplier z in S^1 to
(x*z*y, y*z*x).  A semigroup satisfies the unrestricted nilpotency condition
iff no non-diagonal pair can recur under any multiplier word; the named
variants restrict the multiplier schedule:

  unrestricted      any z_1, z_2, ... in S^1          (is_mn)
  alternating       c1, c2, c1, c2, ...               (is_wmn)
  unit-then-free    1, c2, c3, ...                    (is_nt)
  unit-unit-powers  1, 1, c, c^2, ...                 (is_pe)
  all units         1, 1, 1, ...                      (is_tm)

States are encoded as x*n + y, with the adjoined identity multiplier encoded
as z = n.  Diagonal states are absorbing under every multiplier, so a
deterministic schedule eventually reaches the diagonal iff a sampled orbit of
its one-period map hits the diagonal, and the free-schedule conditions reduce
to cycle searches over the nondeterministic pair graph.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import _closure_ids, generated_subsemigroup
from .errors import SemigroupError, SizeBudgetExceeded


def pair_step(S, pair, z):
    """One step (x, y) -> (x z y, y z x); z may be S.order for the identity."""
    t1 = S.monoid_table()
    x, y = pair
    return int(t1[t1[x, z], y]), int(t1[t1[y, z], x])


def _state_parts(n):
    x_of = np.repeat(np.arange(n, dtype=np.int64), n)
    y_of = np.tile(np.arange(n, dtype=np.int64), n)
    return x_of, y_of


def _step_array(S, z):
    """The pair-step map for multiplier z as an array over all n*n states."""
    n = S.order
    t1 = S.monoid_table().astype(np.int64)
    x_of, y_of = _state_parts(n)
    return t1[t1[x_of, z], y_of] * n + t1[t1[y_of, z], x_of]


def _diag_mask(n):
    x_of, y_of = _state_parts(n)
    return x_of == y_of


def _pow2_at_least(m):
    k = 0
    while (1 << k) < m:
        k += 1
    return k


def _iterate_to_power(f, k):
    g = f
    for _ in range(k):
        g = g[g]
    return g


# -- recurrent-pair core -------------------------------------------------------


def _alive_states(S):
    """Non-diagonal states with arbitrarily long non-diagonal forward paths.

    This set is nonempty iff some non-diagonal pair lies on a cycle of the
    pair graph: a finite set in which every state keeps a successor inside
    the set contains a cycle, and cycle states survive every pruning round.
    """
    got = S._cache.get("alive_states")
    if got is not None:
        return got
    n = S.order
    t1 = S.monoid_table()
    x_of, y_of = _state_parts(n)
    alive = x_of != y_of
    while True:
        idx = np.flatnonzero(alive)
        if idx.size == 0:
            break
        xs = x_of[idx]
        ys = y_of[idx]
        rem = np.arange(idx.size)
        for z in range(n + 1):
            if rem.size == 0:
                break
            xr = xs[rem]
            yr = ys[rem]
            nxt = t1[t1[xr, z], yr].astype(np.int64) * n + t1[t1[yr, z], xr]
            keep = alive[nxt]
            rem = rem[~keep]
        if rem.size == 0:
            break
        alive[idx[rem]] = False
    S._cache["alive_states"] = alive
    return alive


def _alive_successor(S, s, alive):
    n = S.order
    t1 = S.monoid_table()
    x, y = divmod(s, n)
    for z in range(n + 1):
        ns = int(t1[t1[x, z], y]) * n + int(t1[t1[y, z], x])
        if alive[ns]:
            return z, ns
    raise SemigroupError("alive state without alive successor")


def _walk_to_cycle(S, start):
    """Follow alive successors from an alive state until a state repeats.

    Returns (labels_to_entry, entry_state, cycle_labels): the first word leads
    from `start` to the cycle entry, the second traces the cycle back to it.
    """
    alive = _alive_states(S)
    pos = {start: 0}
    labels = []
    s = start
    while True:
        z, s = _alive_successor(S, s, alive)
        labels.append(z)
        if s in pos:
            k = pos[s]
            return labels[:k], s, tuple(labels[k:])
        pos[s] = len(labels)


def is_mn(S):
    got = S._cache.get("is_mn")
    if got is None:
        got = not bool(_alive_states(S).any())
        S._cache["is_mn"] = got
    return got


def mn_witness(S):
    """A recurrent non-diagonal pair: (x, y, word) with the trajectory from
    (x, y) through the multiplier word returning to (x, y)."""
    alive = _alive_states(S)
    idx = np.flatnonzero(alive)
    if idx.size == 0:
        return None
    _, entry, cycle = _walk_to_cycle(S, int(idx[0]))
    x, y = divmod(entry, S.order)
    return x, y, cycle


def verify_mn_witness(S, x, y, word):
    if x == y or not word:
        return False
    pair = (x, y)
    for z in word:
        pair = pair_step(S, pair, z)
    return pair == (x, y)


def nilpotency_class(S):
    """Least n with all length-n trajectories diagonal, or None if not MN."""
    if not is_mn(S):
        return None
    n = S.order
    t1 = S.monoid_table().astype(np.int64)
    x_of, y_of = _state_parts(n)
    nondiag = x_of != y_of
    rank = np.zeros(n * n, dtype=np.int64)
    while True:
        best = np.zeros(n * n, dtype=np.int64)
        for z in range(n + 1):
            nxt = t1[t1[x_of, z], y_of] * n + t1[t1[y_of, z], x_of]
            np.maximum(best, rank[nxt], out=best)
        new = np.where(nondiag, best + 1, 0)
        if np.array_equal(new, rank):
            break
        rank = new
    return max(1, int(rank.max()))


def is_nt(S):
    got = S._cache.get("is_nt")
    if got is None:
        got = nt_witness(S) is None
        S._cache["is_nt"] = got
    return got


def nt_witness(S):
    """(a, b, prefix, cycle): from (ab, ba) the prefix word reaches a
    non-diagonal state which the cycle word returns to."""
    got = S._cache.get("nt_witness")
    if got is not None:
        return got if got is not False else None
    n = S.order
    t1 = S.monoid_table().astype(np.int64)
    alive = _alive_states(S)
    T = S.table.astype(np.int64)
    init = np.unique(T * n + T.T)
    reach = np.zeros(n * n, dtype=bool)
    parent = np.full(n * n, -1, dtype=np.int64)
    parent_label = np.full(n * n, -1, dtype=np.int64)
    reach[init] = True
    frontier = init
    hit = None
    if alive[init].any():
        hit = int(init[alive[init]][0])
    while frontier.size and hit is None:
        xs, ys = np.divmod(frontier, n)
        batches = []
        for z in range(n + 1):
            nxt = t1[t1[xs, z], ys] * n + t1[t1[ys, z], xs]
            fresh = ~reach[nxt]
            if not fresh.any():
                continue
            dst = nxt[fresh]
            src = frontier[fresh]
            dst, first = np.unique(dst, return_index=True)
            src = src[first]
            reach[dst] = True
            parent[dst] = src
            parent_label[dst] = z
            batches.append(dst)
        if not batches:
            break
        frontier = np.concatenate(batches)
        on = alive[frontier]
        if on.any():
            hit = int(frontier[on][0])
    if hit is None:
        S._cache["nt_witness"] = False
        return None
    back = []
    s = hit
    while parent[s] != -1:
        back.append(int(parent_label[s]))
        s = int(parent[s])
    back.reverse()
    a0, b0 = divmod(s, n)
    origin = next(
        (p, q) for p in range(n) for q in range(n)
        if int(T[p, q]) == a0 and int(T[q, p]) == b0
    )
    tail, _entry, cycle = _walk_to_cycle(S, hit)
    got = (origin[0], origin[1], tuple(back) + tuple(tail), cycle)
    S._cache["nt_witness"] = got
    return got


def verify_nt_witness(S, a, b, prefix, cycle):
    if not cycle:
        return False
    pair = (S.mul(a, b), S.mul(b, a))
    for z in prefix:
        pair = pair_step(S, pair, z)
    if pair[0] == pair[1]:
        return False
    probe = pair
    for z in cycle:
        probe = pair_step(S, probe, z)
    return probe == pair


# -- deterministic schedules ---------------------------------------------------


def _first_nondiagonal_limit(S, f, starts=None):
    """First state whose f-orbit misses the (f-closed) diagonal, or None."""
    n = S.order
    g = _iterate_to_power(f, _pow2_at_least(n * n))
    diag = _diag_mask(n)
    final = g if starts is None else g[starts]
    bad = ~diag[final]
    if not bad.any():
        return None
    return int(np.flatnonzero(bad)[0])


def is_tm(S):
    got = S._cache.get("is_tm")
    if got is None:
        got = tm_witness(S) is None
        S._cache["is_tm"] = got
    return got


def tm_witness(S):
    got = S._cache.get("tm_witness")
    if got is not None:
        return got if got is not False else None
    n = S.order
    bad = _first_nondiagonal_limit(S, _step_array(S, n))
    got = False if bad is None else (bad // n, bad % n)
    S._cache["tm_witness"] = got
    return None if got is False else got


def verify_tm_witness(S, a, b):
    state = (a, b)
    seen = set()
    while state not in seen:
        if state[0] == state[1]:
            return False
        seen.add(state)
        state = pair_step(S, state, S.order)
    return True


def is_wmn(S):
    got = S._cache.get("is_wmn")
    if got is None:
        got = wmn_witness(S) is None
        S._cache["is_wmn"] = got
    return got


def wmn_witness(S):
    """(a, b, c1, c2) whose alternating trajectory never becomes diagonal."""
    got = S._cache.get("wmn_witness")
    if got is not None:
        return got if got is not False else None
    n = S.order
    for c1 in range(n + 1):
        f1 = _step_array(S, c1)
        for c2 in range(n + 1):
            f2 = _step_array(S, c2)
            bad = _first_nondiagonal_limit(S, f2[f1])
            if bad is not None:
                got = (bad // n, bad % n, c1, c2)
                S._cache["wmn_witness"] = got
                return got
    S._cache["wmn_witness"] = False
    return None


def verify_wmn_witness(S, a, b, c1, c2):
    state = (a, b, 0)
    seen = set()
    while state not in seen:
        if state[0] == state[1]:
            return False
        seen.add(state)
        pair = pair_step(S, state[:2], c1 if state[2] == 0 else c2)
        state = (pair[0], pair[1], 1 - state[2])
    return True


def is_pe(S):
    got = S._cache.get("is_pe")
    if got is None:
        got = pe_witness(S) is None
        S._cache["is_pe"] = got
    return got


def pe_witness(S):
    """(a, b, c) whose 1, 1, c, c^2, ... trajectory never becomes diagonal."""
    got = S._cache.get("pe_witness")
    if got is not None:
        return got if got is not False else None
    n = S.order
    unit = _step_array(S, n)
    for c in range(n + 1):
        prefix = unit[unit]
        if c == n:
            phi = unit
        else:
            idx, per = S.index_period(c)
            power = c
            for _ in range(idx - 1):  # burn in until the power sequence cycles
                prefix = _step_array(S, power)[prefix]
                power = S.mul(power, c)
            phi = _step_array(S, power)
            for _ in range(per - 1):
                power = S.mul(power, c)
                phi = _step_array(S, power)[phi]
        bad = _first_nondiagonal_limit(S, phi, starts=prefix)
        if bad is not None:
            got = (bad // n, bad % n, c)
            S._cache["pe_witness"] = got
            return got
    S._cache["pe_witness"] = False
    return None


def verify_pe_witness(S, a, b, c):
    n = S.order
    pair, tag = (a, b), 0
    seen = set()
    while (pair, tag) not in seen:
        if pair[0] == pair[1]:
            return False
        seen.add((pair, tag))
        if tag == 0:
            pair, tag = pair_step(S, pair, n), 1
        elif tag == 1:
            pair, tag = pair_step(S, pair, n), ("p", c)
        else:
            power = tag[1]
            pair = pair_step(S, pair, power)
            tag = ("p", n if c == n else S.mul(power, c))
    return True


# -- limit pairs ---------------------------------------------------------------


@dataclass(frozen=True)
class Alternating:
    w1: int
    w2: int


@dataclass(frozen=True)
class PowerSchedule:
    c: int
    unit_prefix: int = 2


@dataclass(frozen=True)
class LimitPair:
    lam: int
    rho: int
    transient: int
    period: int

    @property
    def diagonal(self):
        return self.lam == self.rho


def limit_pair(S, x, y, schedule):
    """Value of the pair sequence along factorial indices.

    Simulates the deterministic full state (pair plus schedule phase), finds
    its transient t and period p, and returns the pair at the least index m
    with m >= t and p | m.  Every index n! with large n satisfies both
    constraints, so this is the limit of the subsequence at factorial indices.
    """
    n = S.order
    if isinstance(schedule, Alternating):
        def advance(pair, phase):
            z = schedule.w1 if phase == 0 else schedule.w2
            return pair_step(S, pair, z), 1 - phase

        phase0 = 0
    elif isinstance(schedule, PowerSchedule):
        c = schedule.c

        def advance(pair, phase):
            left, power = phase
            if left > 0:
                return pair_step(S, pair, n), (left - 1, power)
            nxt = c if power is None else (n if c == n else S.mul(power, c))
            return pair_step(S, pair, nxt), (0, nxt)

        phase0 = (schedule.unit_prefix, None)
    else:
        raise SemigroupError(f"unknown schedule {schedule!r}")

    seen = {}
    states = []
    pair, phase = (x, y), phase0
    while (pair, phase) not in seen:
        seen[(pair, phase)] = len(states)
        states.append((pair, phase))
        pair, phase = advance(pair, phase)
    t = seen[(pair, phase)]
    p = len(states) - t
    m = p * ((t + p - 1) // p)
    lam, rho = states[m][0]
    return LimitPair(lam, rho, t, p)


def _group_like(S):
    """Mask of elements t with t^(omega+1) = t (group H-class members)."""
    got = S._cache.get("group_like")
    if got is None:
        got = S._power_data()[3] == np.arange(S.order)
        S._cache["group_like"] = got
    return got


def is_ndf12(S):
    got = S._cache.get("is_ndf12")
    if got is None:
        got = ndf12_witness(S) is None
        S._cache["is_ndf12"] = got
    return got


def ndf12_witness(S, quantify_s1=False):
    """A triple (a, w1, w2) violating the limit-pair implication, or None.

    A violating triple has a non-diagonal alternating limit (lam, rho) from
    (a*w2, w2*a) while rho*w1*lam is a group element.  A semigroup that is
    not a block group with nilpotent subgroups fails with the empty witness.
    """
    from .structure import is_bg_nil

    key = ("ndf12_witness", quantify_s1)
    got = S._cache.get(key)
    if got is not None:
        return got if got is not False else None
    if not is_bg_nil(S):
        S._cache[key] = ()
        return ()
    n = S.order
    t1 = S.monoid_table().astype(np.int64)
    group_like = _group_like(S)
    diag = _diag_mask(n)
    rng = n + 1 if quantify_s1 else n
    a_ids = np.arange(n, dtype=np.int64)
    warmup = 64
    for w1 in range(rng):
        f1 = _step_array(S, w1)
        for w2 in range(rng):
            phi = _step_array(S, w2)[f1]
            cur = t1[a_ids, w2] * n + t1[w2, a_ids]
            for _ in range(warmup):
                if diag[cur].all():
                    break
                cur = phi[cur]
            for a in np.flatnonzero(~diag[cur]):
                lam, rho = _exact_limit(phi, int(cur[a]), warmup, n)
                if lam == rho:
                    continue
                t = int(t1[t1[rho, w1], lam])
                if group_like[t]:
                    got = (int(a), w1, w2)
                    S._cache[key] = got
                    return got
    S._cache[key] = False
    return None


def _exact_limit(phi, cur, offset, n):
    """Pair at the factorial-limit index of the sampled orbit through `cur`.

    `cur` sits at sampled index `offset`; walking on finds the cycle, and the
    limit is the state at the least index >= the cycle entry index that the
    cycle length divides.
    """
    seen = {cur: offset}
    trail = [cur]
    s = cur
    while True:
        s = int(phi[s])
        if s in seen:
            first = seen[s]
            period = offset + len(trail) - first
            break
        seen[s] = offset + len(trail)
        trail.append(s)
    m = period * ((first + period - 1) // period)
    state = trail[m - offset]
    return divmod(state, n)


def verify_ndf12_witness(S, a, w1, w2):
    lp = limit_pair(S, S.mul(a, w2), S.mul(w2, a), Alternating(w1, w2))
    if lp.diagonal:
        return False
    t = S.word([lp.rho, w1, lp.lam])
    return S.omega_plus(t) == t


# -- two-generated subsemigroups -------------------------------------------------


def _sub_semigroup(S, ids):
    sub, _ = generated_subsemigroup(S, ids)
    return sub


def _mn_of_closure(S, seed):
    ids = S.closure_of(seed)
    key = ("mn_closure", ids.tobytes())
    got = S._cache.get(key)
    if got is None:
        got = is_mn(_sub_semigroup(S, ids))
        S._cache[key] = got
    return got


def upper_nonnilpotent_graph(S):
    """Edges {x, y} whose generated subsemigroup is not MN."""
    edges = []
    for x in range(S.order):
        for y in range(x + 1, S.order):
            if not _mn_of_closure(S, (x, y)):
                edges.append((x, y))
    return edges


def is_eunng(S):
    got = S._cache.get("is_eunng")
    if got is None:
        got = eunng_witness(S) is None
        S._cache["is_eunng"] = got
    return got


def eunng_witness(S):
    got = S._cache.get("eunng_witness")
    if got is not None:
        return got if got is not False else None
    for x in range(S.order):
        for y in range(x + 1, S.order):
            if not _mn_of_closure(S, (x, y)):
                got = (x, y)
                S._cache["eunng_witness"] = got
                return got
    S._cache["eunng_witness"] = False
    return None


def verify_eunng_witness(S, x, y):
    return not _mn_of_closure(S, (x, y))


# -- rank -------------------------------------------------------------------------


_PV_DECIDERS = {}


def pv_decider(name):
    if not _PV_DECIDERS:
        from .structure import is_bg_nil, is_block_group

        _PV_DECIDERS.update({
            "mn": is_mn,
            "wmn": is_wmn,
            "nt": is_nt,
            "ndf12": is_ndf12,
            "pe": is_pe,
            "tm": is_tm,
            "eunng": is_eunng,
            "bg": is_block_group,
            "bgnil": is_bg_nil,
        })
    try:
        return _PV_DECIDERS[name]
    except KeyError:
        raise SemigroupError(f"unknown pseudovariety {name!r}") from None


def rank_witness(S, pv, k, subset_budget=None, memo_cap=200_000):
    """True iff every subsemigroup generated by <= k elements satisfies pv.

    Enumerates k-subsets in lexicographic id order; smaller generating sets
    are covered because these classes are closed under subsemigroups.
    Subsets inside an already-verified member ideal are skipped, and closure
    verdicts are deduplicated by fingerprint up to `memo_cap` entries.
    """
    decide = pv_decider(pv)
    n = S.order
    if k >= n:
        return bool(decide(S))
    if subset_budget is not None and math.comb(n, k) > subset_budget:
        raise SizeBudgetExceeded(
            f"{math.comb(n, k)} subsets exceed budget {subset_budget}"
        )
    skip = _member_ideal(S, decide)
    memo = {}
    for comb in combinations(range(n), k):
        if skip is not None and all(x in skip for x in comb):
            continue
        ids = _closure_ids(S.table, comb)
        fp = ids.tobytes()
        got = memo.get(fp)
        if got is None:
            got = decide(_sub_semigroup(S, ids))
            if len(memo) < memo_cap:
                memo[fp] = got
        if not got:
            return False
    return True


def _member_ideal(S, decide):
    """Largest principal-series ideal verified to satisfy the predicate."""
    from .structure import principal_series

    try:
        series = principal_series(S)
    except SemigroupError:
        return None
    for ideal in series.chain[1:]:
        sub, _ = generated_subsemigroup(S, ideal)
        if sub.order != len(ideal):
            continue
        if decide(sub):
            return set(ideal)
    return None
