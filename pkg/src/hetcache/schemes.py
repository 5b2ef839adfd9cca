"""Pick the scheduler for a configuration.

Order: gamma2 = 0 first (no group 2 -> homogeneous, base cache-less pattern when it
applies, otherwise the general cache-less delivery); then gamma2 > 0 by the stream
split (integer, fractional, or clamped at L1 = 1).
"""
from __future__ import annotations

from fractions import Fraction

from .analysis import formula_delay
from .core import SystemConfig, TransmissionPlan
from .delivery import (schedule_cacheless, schedule_cacheless_general, schedule_homogeneous, schedule_twotype,
                       schedule_twotype_fractional, schedule_twotype_residual, split_streams)
from .errors import InvalidConfig, RegimeMismatch, UnsupportedRegime

SCHEMES = ("auto", "cacheless", "twotype", "homogeneous")


def build_plan(config: SystemConfig, demands: dict | None = None, scheme: str = "auto",
               rounds: str = "minimal") -> TransmissionPlan:
    """`rounds` picks the fractional-split repetition: "minimal" (d) or "square" (d*d)."""
    if scheme not in SCHEMES:
        raise InvalidConfig(f"unknown scheme {scheme!r}")
    config.redundancy()
    if scheme == "homogeneous":
        if config.K2:
            raise RegimeMismatch("homogeneous delivery needs K2 = 0")
        return schedule_homogeneous(config.K1, config.gamma1, config.L, demands, N=config.N)
    if config.gamma2 == 0:
        if scheme == "twotype":
            raise RegimeMismatch("two-type delivery needs gamma2 > 0")
        if scheme == "auto" and config.K2 == 0:
            if config.K1 - int(config.t1) < config.L:
                raise UnsupportedRegime("fewer uncached users than antennas")
            return schedule_homogeneous(config.K1, config.gamma1, config.L, demands, N=config.N)
        try:
            return schedule_cacheless(config, demands)
        except RegimeMismatch:
            return schedule_cacheless_general(config, demands)
    if scheme == "cacheless":
        raise RegimeMismatch("cache-less delivery needs gamma2 = 0")
    if config.L < 2:
        raise UnsupportedRegime("two cache-aided groups need at least two antennas")
    split = split_streams(config)
    if split.residual:
        return schedule_twotype_residual(config, demands)
    L1, L2 = split
    if L2 < 1:
        raise UnsupportedRegime(f"balanced split gives group 2 only {L2} streams")
    if L1.denominator == 1:
        return schedule_twotype(config, demands, L1, L2)
    d = L1.denominator
    return schedule_twotype_fractional(config, demands, L1, L2, rounds=d if rounds == "minimal" else d * d)


def measured_vs_formula(config: SystemConfig) -> tuple[Fraction, Fraction]:
    plan = build_plan(config)
    return plan.measured_delay, formula_delay(config)
