"""Delivery when group 2 has no cache.

Cache-aided users are served by XORs, cache-less users by uncoded pieces that share the
XOR's leftover index tau, so the non-precoded XOR members can subtract them. Four
regimes are covered:

* K2 = (L-1)T with T integer: fixed groups of L-1 cache-less users per XOR copy.
* K2 = (L-1)T with T >= 1 fractional: the same pattern with L-1 times more copies and
  cyclic windows of cache-less users.
* K2 < (L-1)T: a single phase in which the L-1 uncoded streams are shared between
  cache-less users and uncached cache-aided users; the assignment comes from a max-flow.
* K2 > (L-1)T: XOR-plus-uncoded slots until the cache-aided users are done, then plain
  zero-forcing slots for the cache-less remainder.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, gcd, lcm

import networkx as nx

from ..core import Phase, Piece, SystemConfig, Transmission, TransmissionPlan, Uncoded, XorComposite, enumerate_subsets
from ..errors import InvalidConfig, RegimeMismatch, UnsupportedRegime
from ..placement import place_cacheless, place_cacheless_copies
from .common import resolve_demands
from .homogeneous import homogeneous_phase


def _check(config: SystemConfig) -> tuple[int, int, Fraction]:
    t, _ = config.redundancy()
    if config.gamma2 != 0:
        raise InvalidConfig("cache-less delivery needs gamma2 = 0")
    a = config.K1 - t
    return t, a, Fraction(a, t + 1)


def _xor(alloc, tau, s):
    chi = tuple(sorted(tau + (s,)))
    return XorComposite(tuple(Piece(k, alloc.take(k, tuple(u for u in chi if u != k), ())) for k in chi))


def _xor_uncoded_slot(alloc, tau, s, recipients) -> Transmission:
    slots = [_xor(alloc, tau, s)] + [Uncoded(Piece(u, alloc.take(u, tau, ()))) for u in recipients]
    return Transmission(tuple(slots), (s,) + tuple(recipients))


def _plan(config, placement, demands, phases, meta) -> TransmissionPlan:
    demands = resolve_demands(config.users1 + config.users2, config.N, demands)
    return TransmissionPlan("cacheless", placement.S, placement, demands, tuple(phases), config, meta)


def schedule_cacheless(config: SystemConfig, demands: dict | None = None) -> TransmissionPlan:
    """Base case: T integer and K2 = (L-1)T; loop tau, precoded user phi, cache-less group."""
    t, a, T = _check(config)
    L = config.L
    if T.denominator != 1 or config.K2 != (L - 1) * T:
        raise RegimeMismatch(f"base scheme needs integer T and K2 = (L-1)T; T={T}, K2={config.K2}")
    T = int(T)
    placement = place_cacheless(config)
    u2 = config.users2
    groups = [u2[g * (L - 1):(g + 1) * (L - 1)] for g in range(T)]
    taus = enumerate_subsets(config.users1, t)

    def keys():
        for tau in taus:
            for phi in config.users1:
                if phi not in tau:
                    for g in range(T):
                        yield tau, phi, g

    def build(key, alloc):
        tau, phi, g = key
        return _xor_uncoded_slot(alloc, tau, phi, groups[g])

    return _plan(config, placement, demands, [Phase("xor+uncoded", keys, build)],
                 {"variant": "base", "groups": groups})


def _boosted(config, demands, t, a):
    L, K2 = config.L, config.K2
    placement = place_cacheless(config, multiplier=L - 1)
    u2 = config.users2
    taus = enumerate_subsets(config.users1, t)

    def keys():
        for tau in taus:
            for phi in config.users1:
                if phi not in tau:
                    for j in range(K2):
                        yield tau, phi, j

    def build(key, alloc):
        tau, phi, j = key
        window = tuple(u2[(j + i) % K2] for i in range(L - 1))
        return _xor_uncoded_slot(alloc, tau, phi, window)

    return _plan(config, placement, demands, [Phase("xor+uncoded", keys, build)],
                 {"variant": "boosted", "multiplier": L - 1})


def _shared_stream_assignment(a: int, K2: int, L: int, r: int, c: int, e: int) -> dict:
    """Recipients of each of the a*r slots that share one tau.

    Slot (si, j) is steered to the si-th uncached cache-aided user; its L-1 uncoded
    streams go to other uncached cache-aided users (e pieces each) or to cache-less
    users (c pieces each). Returns {(si, j): [("a", ui) | ("c", ci), ...]}.
    """
    g = nx.DiGraph()
    for si in range(a):
        for j in range(r):
            x = ("x", si, j)
            g.add_edge("src", x, capacity=L - 1)
            for ui in range(a):
                if ui != si:
                    g.add_edge(x, ("a", ui), capacity=1)
            for ci in range(K2):
                g.add_edge(x, ("c", ci), capacity=1)
    for ui in range(a):
        g.add_edge(("a", ui), "snk", capacity=e)
    for ci in range(K2):
        g.add_edge(("c", ci), "snk", capacity=c)
    value, flow = nx.maximum_flow(g, "src", "snk")
    if value != a * r * (L - 1):
        raise UnsupportedRegime("uncoded streams cannot be matched to recipients")
    out = {}
    for si in range(a):
        for j in range(r):
            got = [v for v, f in flow[("x", si, j)].items() if f]
            out[(si, j)] = sorted(got, key=lambda v: (v[0] != "a", v[1]))
    return out


def _shared(config, demands, t, a):
    L, K2 = config.L, config.K2
    r = (a + K2) // gcd(a + K2, a * (L + t))
    c = r * a * (L + t) // (a + K2)
    e = c - (t + 1) * r
    if (K2 and c > a * r) or e > (a - 1) * r or e < 0:
        raise UnsupportedRegime(f"shared-stream delivery infeasible (c={c}, e={e}, r={r})")
    assign = _shared_stream_assignment(a, K2, L, r, c, e)
    placement = place_cacheless_copies(config, c)
    u1, u2 = config.users1, config.users2
    taus = enumerate_subsets(u1, t)

    def keys():
        for tau in taus:
            for si in range(a):
                for j in range(r):
                    yield tau, si, j

    def build(key, alloc):
        tau, si, j = key
        rest = [u for u in u1 if u not in tau]
        recips = [rest[i] if kind == "a" else u2[i] for kind, i in assign[(si, j)]]
        return _xor_uncoded_slot(alloc, tau, rest[si], recips)

    return _plan(config, placement, demands, [Phase("xor+uncoded", keys, build)],
                 {"variant": "shared", "r": r, "copies": c, "uncoded_to_cache_aided": e})


def _two_phase(config, demands, t, a):
    L, K2 = config.L, config.K2
    if K2 < L - 1:
        raise UnsupportedRegime(f"K2={K2} < L-1={L - 1}: fewer cache-less users than uncoded streams")
    C = comb(config.K1, t)
    M = min(L, K2)
    f1 = K2 // gcd(K2, C * a * (L - 1)) if L > 1 else 1
    base = C * (K2 * (t + 1) - a * (L - 1))
    f2 = M // gcd(M, base)
    f = lcm(f1, f2)
    c = (t + 1) * f
    placement = place_cacheless_copies(config, c)
    u1, u2 = config.users1, config.users2
    taus = enumerate_subsets(u1, t)
    per_user = c * C - C * a * f * (L - 1) // K2
    n_zf = f * base // M
    pool = [(tau, ()) for tau in taus]

    def keys1():
        idx = 0
        for tau in taus:
            for s in u1:
                if s not in tau:
                    for _ in range(f):
                        yield idx, tau, s
                        idx += 1

    def build1(key, alloc):
        idx, tau, s = key
        window = tuple(u2[(idx * (L - 1) + i) % K2] for i in range(L - 1))
        return _xor_uncoded_slot(alloc, tau, s, window)

    def keys2():
        return range(n_zf)

    def build2(j, alloc):
        users = tuple(u2[(j + i * n_zf) // per_user] for i in range(M))
        slots = tuple(Uncoded(Piece(u, alloc.take_any(u, pool))) for u in users)
        return Transmission(slots, users)

    phases = [Phase("xor+uncoded", keys1, build1), Phase("zero-forcing", keys2, build2)]
    return _plan(config, placement, demands, phases,
                 {"variant": "two-phase", "f": f, "copies": c, "zf_width": M})


def schedule_cacheless_general(config: SystemConfig, demands: dict | None = None) -> TransmissionPlan:
    """Any K2 >= 0 with gamma2 = 0; the measured delay follows the matching closed form."""
    t, a, T = _check(config)
    L, K2 = config.L, config.K2
    threshold = (L - 1) * T
    if K2 == 0:
        if a < L:
            raise UnsupportedRegime(f"K1(1-gamma1)={a} < L={L}")
        placement = place_cacheless_copies(config, t + L)
        phase = homogeneous_phase(config.users1, t, L, lambda al, k, tau: al.take(k, tau, ()))
        return _plan(config, placement, demands, [phase], {"variant": "homogeneous"})
    if K2 == threshold:
        if T.denominator == 1:
            return schedule_cacheless(config, demands)
        if T >= 1:
            return _boosted(config, demands, t, a)
    if K2 <= threshold:
        return _shared(config, demands, t, a)
    return _two_phase(config, demands, t, a)
