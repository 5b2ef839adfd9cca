"""Subpacketization and cache contents.

Every placement here has the same shape: a subfile class is a pair (tau1, tau2) of
cache-index sets, each class is split into `copies` pieces carrying copy labels, and a
user caches a piece iff it belongs to tau1 or tau2. Caches are exposed as lazy set views
so large placements never get materialized.
"""
from __future__ import annotations

from collections.abc import Set
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterator

from .core import SubfileId, Subset, SystemConfig, as_fraction, enumerate_subsets
from .errors import InvalidStreamSplit, NonIntegerRedundancy


@dataclass(frozen=True)
class PlacementResult:
    """Subfile universe and caches.

    Copy labels come in two flavours. ``complement``: labels are the users of
    group1 outside tau1, each repeated `multiplier` times (phi2 numbers the repeat).
    ``grid``: labels are (phi1, phi2) in [rows] x [cols], or phi1 in [rows] alone.
    """
    group1: Subset
    t1: int
    group2: Subset
    t2: int
    N: int
    mode: str
    rows: int
    cols: int | None = None
    multiplier: int = 1

    @property
    def copies(self) -> int:
        if self.mode == "complement":
            return (len(self.group1) - self.t1) * self.multiplier
        return self.rows * (self.cols or 1)

    @property
    def num_classes(self) -> int:
        return comb(len(self.group1), self.t1) * comb(len(self.group2), self.t2)

    @property
    def S(self) -> int:
        return self.num_classes * self.copies

    def classes(self) -> Iterator[tuple[Subset, Subset]]:
        return product(enumerate_subsets(self.group1, self.t1), enumerate_subsets(self.group2, self.t2))

    def labels(self, tau1: Subset) -> list[tuple[int, int | None]]:
        """Copy labels of one class, in the order the schedulers hand them out."""
        if self.mode == "complement":
            free = [u for u in self.group1 if u not in tau1]
            if self.multiplier == 1:
                return [(u, None) for u in free]
            return [(u, j) for u in free for j in range(1, self.multiplier + 1)]
        if self.cols is None:
            return [(i, None) for i in range(1, self.rows + 1)]
        return [(i, j) for i in range(1, self.rows + 1) for j in range(1, self.cols + 1)]

    def universe(self, file: int) -> Iterator[SubfileId]:
        for tau1, tau2 in self.classes():
            for phi1, phi2 in self.labels(tau1):
                yield SubfileId(file, tau1, tau2, phi1, phi2)

    def contains(self, sid: SubfileId) -> bool:
        if not 1 <= sid.file <= self.N:
            return False
        if len(sid.tau1) != self.t1 or len(sid.tau2) != self.t2:
            return False
        if not set(sid.tau1) <= set(self.group1) or not set(sid.tau2) <= set(self.group2):
            return False
        return (sid.phi1, sid.phi2) in self.labels(sid.tau1)

    @staticmethod
    def is_cached(user: int, sid: SubfileId) -> bool:
        return user in sid.tau1 or user in sid.tau2

    def users(self) -> Subset:
        return self.group1 + self.group2

    def cached_per_file(self, user: int) -> int:
        """Number of pieces of one file stored by `user`."""
        if user in self.group1:
            n = comb(len(self.group1) - 1, self.t1 - 1) * comb(len(self.group2), self.t2) if self.t1 else 0
        elif user in self.group2:
            n = comb(len(self.group1), self.t1) * comb(len(self.group2) - 1, self.t2 - 1) if self.t2 else 0
        else:
            raise KeyError(user)
        return n * self.copies

    def cached_fraction(self, user: int) -> Fraction:
        return Fraction(self.cached_per_file(user), self.S)

    @property
    def caches(self) -> dict[int, "CacheView"]:
        return {u: CacheView(self, u) for u in self.users()}

    def cache(self, user: int) -> "CacheView":
        return CacheView(self, user)


class CacheView(Set):
    """Read-only set of the SubfileIds held by one user, across all files."""

    def __init__(self, placement: PlacementResult, user: int):
        self.placement = placement
        self.user = user

    def __contains__(self, sid) -> bool:
        return (isinstance(sid, SubfileId) and self.placement.is_cached(self.user, sid)
                and self.placement.contains(sid))

    def for_file(self, file: int) -> Iterator[SubfileId]:
        return (s for s in self.placement.universe(file) if self.placement.is_cached(self.user, s))

    def __iter__(self) -> Iterator[SubfileId]:
        for n in range(1, self.placement.N + 1):
            yield from self.for_file(n)

    def __len__(self) -> int:
        return self.placement.N * self.placement.cached_per_file(self.user)


def _integer(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise NonIntegerRedundancy(f"{what} = {value} is not an integer")
    return int(value)


def place_cacheless(config: SystemConfig, multiplier: int = 1) -> PlacementResult:
    """Cache-aided group 1, cache-less group 2; copies labelled by the users outside tau."""
    t = _integer(config.t1, "K1*gamma1")
    if config.gamma2 != 0:
        raise ValueError("place_cacheless needs gamma2 = 0")
    if multiplier < 1:
        raise ValueError("multiplier must be positive")
    return PlacementResult(config.users1, t, config.users2, 0, config.N, "complement",
                           rows=config.K1 - t, multiplier=multiplier)


def place_cacheless_copies(config: SystemConfig, copies: int) -> PlacementResult:
    """Same cache contents as place_cacheless, with `copies` plain-numbered pieces per class."""
    t = _integer(config.t1, "K1*gamma1")
    return PlacementResult(config.users1, t, config.users2, 0, config.N, "grid", rows=copies)


def place_twotype(config: SystemConfig, L1, L2, rounds: int = 1) -> PlacementResult:
    """Two cache-aided groups with stream split (L1, L2) repeated over `rounds` rounds.

    Each class gets rounds*(t1+L1) x (K2-t2) copies: that is how many times a
    type-1 user receives it in the delivery, and under a balanced split it equals
    the type-2 count rounds*(t2+L2)*(K1-t1).
    """
    t1 = _integer(config.t1, "K1*gamma1")
    t2 = _integer(config.t2, "K2*gamma2")
    L1, L2 = as_fraction(L1), as_fraction(L2)
    if L1 + L2 != config.L or L1 < 1:
        raise InvalidStreamSplit(f"split ({L1}, {L2}) must satisfy L1+L2={config.L}, L1>=1")
    if config.K2 == 0:
        raise InvalidStreamSplit("two-type placement needs K2 > 0")
    rows = rounds * (t1 + L1)
    if rows.denominator != 1:
        raise InvalidStreamSplit(f"rounds*(t1+L1) = {rows} is not an integer")
    return PlacementResult(config.users1, t1, config.users2, t2, config.N, "grid",
                           rows=int(rows), cols=config.K2 - t2)


def place_twotype_copies(config: SystemConfig, rows: int, cols: int) -> PlacementResult:
    t1 = _integer(config.t1, "K1*gamma1")
    t2 = _integer(config.t2, "K2*gamma2")
    return PlacementResult(config.users1, t1, config.users2, t2, config.N, "grid", rows=rows, cols=cols)


def place_homogeneous(K: int, gamma, L: int, N: int | None = None, users: Subset | None = None) -> PlacementResult:
    """One group of K users: C(K, K*gamma) classes, each split into K*gamma + L pieces."""
    gamma = as_fraction(gamma)
    t = _integer(K * gamma, "K*gamma")
    users = tuple(users) if users is not None else tuple(range(1, K + 1))
    if len(users) != K:
        raise ValueError("users must list K receivers")
    return PlacementResult(users, t, (), 0, N if N is not None else K, "grid", rows=t + L)
