"""Closed-form delays, bounds and comparisons.

All functions take and return exact rationals. A non-integer K*gamma is handled by
memory sharing between the two neighbouring integer points, i.e. the lower convex
envelope of the single-antenna delay.
"""
from __future__ import annotations

from fractions import Fraction
from math import floor

from .core import SystemConfig, as_fraction
from .errors import InvalidConfig, RegimeMismatch


def single_stream_delay(K: int, gamma) -> Fraction:
    """K(1-gamma)/(1+K*gamma), interpolated linearly when K*gamma is fractional."""
    gamma = as_fraction(gamma)
    if not 0 <= gamma <= 1:
        raise InvalidConfig("gamma must lie in [0, 1]")
    t = K * gamma
    lo = floor(t)
    f_lo = Fraction(K - lo, 1 + lo)
    if t == lo:
        return f_lo
    f_hi = Fraction(K - lo - 1, 2 + lo)
    return f_lo + (t - lo) * (f_hi - f_lo)


def delay_single_antenna(K1: int, gamma1, K2: int) -> Fraction:
    """Optimal single-antenna delay with K2 cache-less users added: every one costs a full unit."""
    return single_stream_delay(K1, gamma1) + K2


def delay_zero_cache_group(K1: int, gamma1, K2: int, L: int) -> Fraction:
    """Cache-less group 2, L antennas."""
    gamma1 = as_fraction(gamma1)
    if L < 1:
        raise InvalidConfig("L must be at least 1")
    T = single_stream_delay(K1, gamma1)
    excess = K2 - (L - 1) * T
    if excess >= 0:
        return T + (excess / min(L, K2) if excess else 0)
    return (K2 + K1 * (1 - gamma1)) / (K1 * gamma1 + L)


def delay_two_cache_groups(K1: int, gamma1, K2: int, gamma2, L: int) -> Fraction:
    """Two cache-aided groups with gamma2 < gamma1."""
    g1, g2 = as_fraction(gamma1), as_fraction(gamma2)
    if not 0 < g2 < g1:
        raise InvalidConfig("need 0 < gamma2 < gamma1")
    a1, t1 = K1 * (1 - g1), K1 * g1
    a2, t2 = K2 * (1 - g2), K2 * g2
    T = single_stream_delay(K1, g1)
    if T >= a2 / (L - 1 + t2):
        return (a1 + a2) / (L + t1 + t2)
    return T + (a2 - (L - 1 + t2) * T) / min(K2, L + t2)


def formula_delay(config: SystemConfig) -> Fraction:
    if config.gamma2 == 0:
        return delay_zero_cache_group(config.K1, config.gamma1, config.K2, config.L)
    return delay_two_cache_groups(config.K1, config.gamma1, config.K2, config.gamma2, config.L)


def large_regime(K1: int, gamma1, K2: int, L: int) -> bool:
    """True when K2 >= (L-1)T, where the cache-less users dominate."""
    return K2 >= (L - 1) * single_stream_delay(K1, gamma1)


def dof(delay, served_load) -> Fraction:
    delay = as_fraction(delay)
    if delay <= 0:
        raise ValueError("delay must be positive")
    return as_fraction(served_load) / delay


def served_load(K1: int, gamma1, K2: int, gamma2=0) -> Fraction:
    """Total uncached demand K1(1-gamma1) + K2(1-gamma2)."""
    return K1 * (1 - as_fraction(gamma1)) + K2 * (1 - as_fraction(gamma2))


def lower_bound(K1: int, gamma1, K2: int, L: int) -> Fraction:
    """Converse for a cache-less group 2.

    L = 1 is tight (the single-stream optimum). Otherwise the cache-less users alone need
    K2/min(K2, L); below the regime threshold the cache-aided users add half their
    homogeneous delay as a competing bound.
    """
    gamma1 = as_fraction(gamma1)
    if L == 1:
        return delay_single_antenna(K1, gamma1, K2)
    cacheless = Fraction(K2, min(K2, L)) if K2 else Fraction(0)
    if large_regime(K1, gamma1, K2, L):
        return cacheless
    return max(cacheless, K1 * (1 - gamma1) / (2 * (K1 * gamma1 + L)))


def gap_ratio(K1: int, gamma1, K2: int, L: int) -> Fraction:
    """Achievable delay over the lower bound."""
    return delay_zero_cache_group(K1, gamma1, K2, L) / lower_bound(K1, gamma1, K2, L)


def gap_limit(K1: int, gamma1, K2: int, L: int) -> int:
    """Guaranteed ceiling on gap_ratio: 2 above the regime threshold, 3 below it."""
    return 2 if large_regime(K1, gamma1, K2, L) else 3


def alpha_gap(alpha, L: int) -> Fraction:
    """Large-regime gap 1 + 1/(alpha(L-1)) with K2 = alpha(L-1)T and K2 >= L."""
    return 1 + 1 / (as_fraction(alpha) * (L - 1))


def optimal_stream_allocation(K1: int, gamma1, K2: int, L: int) -> tuple[Fraction, Fraction]:
    """Share l1 of the L streams given to the cache-aided group, and the resulting delay.

    Writing K2 = (Lt-1)T, the two groups finish together at l1 = L/Lt, giving T*Lt/L.
    """
    T = single_stream_delay(K1, gamma1)
    L_tilde = K2 / T + 1
    if L > L_tilde:
        raise RegimeMismatch(f"L={L} exceeds K2/T + 1 = {L_tilde}")
    return L / L_tilde, T * L_tilde / L


def homogeneous_equivalent(K1: int, gamma1, K2: int, gamma2=0) -> tuple[int, Fraction]:
    K = K1 + K2
    return K, (K1 * as_fraction(gamma1) + K2 * as_fraction(gamma2)) / K


def homogeneous_delay(K: int, gamma, L: int) -> Fraction:
    gamma = as_fraction(gamma)
    return K * (1 - gamma) / (L + K * gamma)


def equivalent_delay(K1: int, gamma1, K2: int, gamma2, L: int) -> Fraction:
    """Delay of the equal-cache system with the same total cache."""
    K, g = homogeneous_equivalent(K1, gamma1, K2, gamma2)
    return homogeneous_delay(K, g, L)
