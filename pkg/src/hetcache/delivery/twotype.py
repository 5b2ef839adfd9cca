"""Delivery for two cache-aided groups.

Each slot joins a group-1 XOR (chi1, steered to s1) with a group-2 XOR (chi2, steered to
s2). Group-1 pieces carry tau2 = chi2 - {s2} and group-2 pieces carry tau1 = chi1 - {s1},
so every non-precoded XOR member already holds whatever the other group receives. The
L streams are split L1 + L2; the extra L1-1 and L2-1 streams carry uncoded pieces to the
users following s1 and s2.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, gcd

from ..core import Phase, Piece, SystemConfig, Transmission, TransmissionPlan, Uncoded, XorComposite, as_fraction, enumerate_subsets
from ..errors import InsufficientGround, InvalidConfig, InvalidStreamSplit, RegimeMismatch, UnsupportedRegime
from ..placement import place_twotype, place_twotype_copies
from .common import beta_set, resolve_demands
from .homogeneous import homogeneous_phase


class StreamSplit(tuple):
    """(L1, L2) pair; `residual` is set when the balanced L1 fell below 1 and was clamped."""

    def __new__(cls, L1, L2, residual: bool = False):
        obj = super().__new__(cls, (L1, L2))
        obj.residual = residual
        return obj

    @property
    def L1(self) -> Fraction:
        return self[0]

    @property
    def L2(self) -> Fraction:
        return self[1]


def solve_stream_split(K1: int, gamma1, K2: int, gamma2, L: int) -> StreamSplit:
    """Solve K1(1-g1)/(L1+K1 g1) = K2(1-g2)/(L2+K2 g2) with L1+L2 = L, clamping L1 at 1."""
    g1, g2 = as_fraction(gamma1), as_fraction(gamma2)
    a1, t1 = K1 * (1 - g1), K1 * g1
    a2, t2 = K2 * (1 - g2), K2 * g2
    if a1 + a2 == 0:
        raise InvalidConfig("both groups have nothing to receive")
    L1 = (a1 * (L + t2) - a2 * t1) / (a1 + a2)
    if L1 < 1:
        return StreamSplit(Fraction(1), Fraction(L - 1), True)
    return StreamSplit(L1, L - L1, False)


def split_streams(config: SystemConfig) -> StreamSplit:
    if config.gamma2 == 0:
        raise InvalidConfig("stream split is defined for gamma2 > 0")
    if config.L < 2:
        raise InvalidConfig("stream split needs L >= 2")
    return solve_stream_split(config.K1, config.gamma1, config.K2, config.gamma2, config.L)


def _bresenham(rounds: int, extra: int) -> list[bool]:
    """Spread `extra` True values evenly over `rounds` positions."""
    return [(r + 1) * extra // rounds - r * extra // rounds == 1 for r in range(rounds)]


def _pair_phase(config, t1, t2, allocations, name="paired-xor") -> Phase:
    """One pass of the paired-XOR loop per entry of `allocations` = [(L1, L2), ...]."""
    u1, u2 = config.users1, config.users2
    chis1 = enumerate_subsets(u1, t1 + 1)
    chis2 = enumerate_subsets(u2, t2 + 1)
    pairs2 = [(chi2, s2) for chi2 in chis2 for s2 in chi2]
    betas: dict = {}

    def beta(ground, tau, s, size):
        key = (tau, s, size)
        b = betas.get(key)
        if b is None:
            b = betas[key] = beta_set(ground, tau, s, size)
        return b

    def keys():
        for r in range(len(allocations)):
            for chi1 in chis1:
                for s1 in chi1:
                    for chi2, s2 in pairs2:
                        yield r, chi1, s1, chi2, s2

    def build(key, alloc):
        r, chi1, s1, chi2, s2 = key
        l1, l2 = allocations[r]
        tau1 = tuple(u for u in chi1 if u != s1)
        tau2 = tuple(u for u in chi2 if u != s2)
        b1 = beta(u1, tau1, s1, l1 - 1)
        b2 = beta(u2, tau2, s2, l2 - 1)
        x1 = XorComposite(tuple(Piece(k, alloc.take(k, tuple(u for u in chi1 if u != k), tau2)) for k in chi1))
        x2 = XorComposite(tuple(Piece(k, alloc.take(k, tau1, tuple(u for u in chi2 if u != k))) for k in chi2))
        slots = [x1] + [Uncoded(Piece(b, alloc.take(b, tau1, tau2))) for b in b1]
        slots += [x2] + [Uncoded(Piece(b, alloc.take(b, tau1, tau2))) for b in b2]
        return Transmission(tuple(slots), (s1,) + b1 + (s2,) + b2)

    return Phase(name, keys, build)


def _prepare(config: SystemConfig, demands):
    if config.gamma2 == 0 or config.K2 == 0:
        raise InvalidConfig("two-type delivery needs K2 > 0 and gamma2 > 0")
    t1, t2 = config.redundancy()
    demands = resolve_demands(config.users1 + config.users2, config.N, demands)
    return t1, t2, config.K1 - t1, config.K2 - t2, demands


def _check_split(config, L1: Fraction, L2: Fraction, t1, t2, a1, a2):
    if L1 + L2 != config.L or L1 < 1 or L2 < 1:
        raise InvalidStreamSplit(f"split ({L1}, {L2}) needs L1+L2={config.L}, L1>=1, L2>=1")
    if (t1 + L1) * a2 != (t2 + L2) * a1:
        raise InvalidStreamSplit(f"split ({L1}, {L2}) does not equalize the two groups")
    if -(-L1.numerator // L1.denominator) > a1 or -(-L2.numerator // L2.denominator) > a2:
        raise InsufficientGround("not enough uncached users to fill the uncoded streams")


def schedule_twotype(config: SystemConfig, demands: dict | None, L1, L2) -> TransmissionPlan:
    t1, t2, a1, a2, demands = _prepare(config, demands)
    L1, L2 = as_fraction(L1), as_fraction(L2)
    if L1.denominator != 1 or L2.denominator != 1:
        raise InvalidStreamSplit("integer split required; use schedule_twotype_fractional")
    if config.T1 < Fraction(a2, config.L - 1 + t2):
        raise RegimeMismatch("group 1 finishes first; use schedule_twotype_residual")
    _check_split(config, L1, L2, t1, t2, a1, a2)
    placement = place_twotype(config, L1, L2)
    phase = _pair_phase(config, t1, t2, [(int(L1), int(L2))])
    return TransmissionPlan("twotype", placement.S, placement, demands, (phase,), config,
                            {"L1": L1, "L2": L2, "rounds": 1})


def schedule_twotype_fractional(config: SystemConfig, demands: dict | None, L1, L2,
                                rounds: int | None = None) -> TransmissionPlan:
    """Mix floor/ceil integer splits over several rounds so the average split is (L1, L2).

    `rounds` defaults to d*d where d is the common denominator of L1 and L2; any
    multiple of d gives the same delay.
    """
    t1, t2, a1, a2, demands = _prepare(config, demands)
    L1, L2 = as_fraction(L1), as_fraction(L2)
    _check_split(config, L1, L2, t1, t2, a1, a2)
    d = L1.denominator
    if rounds is None:
        rounds = d * d
    if rounds < 1 or rounds % d:
        raise InvalidStreamSplit(f"rounds={rounds} must be a positive multiple of {d}")
    lo1 = L1.numerator // L1.denominator
    extra = int(rounds * (L1 - lo1))
    hi = _bresenham(rounds, extra)
    allocations = [((lo1 + 1, config.L - lo1 - 1) if h else (lo1, config.L - lo1)) for h in hi]
    if any(l2 < 1 for _, l2 in allocations):
        raise UnsupportedRegime("a round would leave group 2 without a stream")
    placement = place_twotype(config, L1, L2, rounds=rounds)
    phase = _pair_phase(config, t1, t2, allocations)
    return TransmissionPlan("twotype-fractional", placement.S, placement, demands, (phase,), config,
                            {"L1": L1, "L2": L2, "rounds": rounds, "allocations": allocations})


def schedule_twotype_residual(config: SystemConfig, demands: dict | None = None) -> TransmissionPlan:
    """Group 1 on one stream until done, then group 2 alone on min(L, K2-t2) streams.

    Phase 1 runs f passes of the paired loop with split (1, L-1); f is the smallest
    factor that makes the group-2 leftover divisible into whole phase-2 passes.
    """
    t1, t2, a1, a2, demands = _prepare(config, demands)
    L = config.L
    if L < 2:
        raise UnsupportedRegime("paired delivery needs at least two antennas")
    if config.T1 >= Fraction(a2, L - 1 + t2):
        raise RegimeMismatch("both groups finish together; use schedule_twotype")
    if a2 < L - 1:
        raise UnsupportedRegime(f"K2(1-gamma2)={a2} < L-1={L - 1}")
    width = min(L, a2)
    C1 = comb(config.K1, t1)
    deficit = (t1 + 1) * a2 - (t2 + L - 1) * a1
    f = (t2 + width) // gcd(t2 + width, deficit * C1)
    passes2 = f * deficit * C1 // (t2 + width)
    placement = place_twotype_copies(config, rows=f * (t1 + 1), cols=a2)
    phase1 = _pair_phase(config, t1, t2, [(1, L - 1)] * f)
    taus1 = enumerate_subsets(config.users1, t1)
    pools: dict = {}

    def pick(alloc, k, tau2):
        pool = pools.get(tau2)
        if pool is None:
            pool = pools[tau2] = [(tau1, tau2) for tau1 in taus1]
        return alloc.take_any(k, pool, tag=tau2)

    phase2 = homogeneous_phase(config.users2, t2, width, pick, passes=passes2, name="group-2")
    return TransmissionPlan("twotype", placement.S, placement, demands, (phase1, phase2), config,
                            {"L1": Fraction(1), "L2": Fraction(L - 1), "f": f, "phase2_width": width,
                             "phase2_passes": passes2, "residual": True})
