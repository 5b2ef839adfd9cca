"""XOR-plus-uncoded delivery for one group of equal-cache users.

Each slot carries the XOR for a set chi of t+1 users, steered to one member s, plus
width-1 uncoded pieces indexed by tau = chi - {s} for the users following s. Every
(user, tau) class is then delivered t + width times.
"""
from __future__ import annotations

from typing import Callable

from ..core import Phase, SystemConfig, Transmission, TransmissionPlan, Uncoded, XorComposite, Piece, as_fraction, enumerate_subsets
from ..errors import InsufficientGround
from ..placement import _integer, place_homogeneous
from .common import beta_set, resolve_demands


def homogeneous_phase(ground, t: int, width: int, pick: Callable, passes: int = 1, name: str = "homogeneous") -> Phase:
    """`pick(alloc, user, tau)` returns the SubfileId user k receives from class tau."""
    ground = tuple(sorted(ground))
    if len(ground) - t < width:
        raise InsufficientGround(f"{len(ground) - t} uncached users cannot fill {width} streams")
    chis = enumerate_subsets(ground, t + 1)
    betas: dict = {}

    def keys():
        for _ in range(passes):
            for chi in chis:
                for s in chi:
                    yield chi, s

    def build(key, alloc):
        chi, s = key
        tau = tuple(u for u in chi if u != s)
        beta = betas.get((tau, s))
        if beta is None:
            beta = betas[(tau, s)] = beta_set(ground, tau, s, width - 1)
        xor = XorComposite(tuple(Piece(k, pick(alloc, k, tuple(u for u in chi if u != k))) for k in chi))
        slots = [xor] + [Uncoded(Piece(b, pick(alloc, b, tau))) for b in beta]
        return Transmission(tuple(slots), (s,) + beta)

    return Phase(name, keys, build)


def schedule_homogeneous(K: int, gamma, L: int, demands: dict | None = None, N: int | None = None) -> TransmissionPlan:
    gamma = as_fraction(gamma)
    t = _integer(K * gamma, "K*gamma")
    if K - t < L:
        raise InsufficientGround(f"K(1-gamma) = {K - t} < L = {L}")
    placement = place_homogeneous(K, gamma, L, N=N)
    demands = resolve_demands(placement.group1, placement.N, demands)
    phase = homogeneous_phase(placement.group1, t, L, lambda a, k, tau: a.take(k, tau, ()))
    config = None
    if K >= 1 and 0 < gamma < 1:
        config = SystemConfig(K, gamma, 0, 0, L, placement.N)
    return TransmissionPlan("homogeneous", placement.S, placement, demands, (phase,), config,
                            {"t": t, "copies": placement.copies})
