"""Noise-free MISO channel over a prime field, zero-forcing precoders and per-user decoding.

Complex channels are replaced by uniform entries of F_p; for a large p every relevant
submatrix is invertible with overwhelming probability, which plays the role of a
generic channel. XOR contents are tracked symbolically. In payload mode each piece also
carries a field value, XOR becomes field addition, and decoding is checked numerically.
"""
from __future__ import annotations

import json
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Container, Iterable, Sequence

from .core import SubfileId, Transmission, TransmissionPlan
from .errors import (DecodeFailure, GenericityFailure, InvalidConfig, NotAddressed, SingularSubmatrix,
                     Uncancelable, XorUnresolvable, ZeroDesiredCoefficient)

DEFAULT_PRIME = 2**31 - 1
MAX_RESAMPLES = 32


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def inverse_mod(matrix: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Gauss-Jordan inverse over F_p; raises SingularSubmatrix."""
    m = len(matrix)
    aug = [[v % p for v in row] + [int(i == j) for j in range(m)] for i, row in enumerate(matrix)]
    for col in range(m):
        pivot = next((r for r in range(col, m) if aug[r][col]), None)
        if pivot is None:
            raise SingularSubmatrix("submatrix is singular over the field")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [v * inv % p for v in aug[col]]
        for r in range(m):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[col])]
    return [row[m:] for row in aug]


@dataclass(frozen=True)
class ChannelMatrix:
    """Row k-1 holds user k's channel to the L antennas."""
    K: int
    L: int
    p: int
    seed: int
    entries: tuple[tuple[int, ...], ...] = field(repr=False)
    attempts: int = 1

    def row(self, user: int) -> tuple[int, ...]:
        return self.entries[user - 1]

    def gain(self, user: int, column: Sequence[int]) -> int:
        return sum(h * c for h, c in zip(self.row(user), column)) % self.p

    def submatrix(self, lam: Sequence[int]) -> list[list[int]]:
        """Rows of lam restricted to the first |lam| antennas."""
        m = len(lam)
        return [list(self.row(k)[:m]) for k in lam]

    @classmethod
    def identity(cls, K: int, L: int, p: int = DEFAULT_PRIME) -> "ChannelMatrix":
        rows = tuple(tuple(int(k == a) for a in range(L)) for k in range(K))
        return cls(K, L, p, 0, rows)


@dataclass(frozen=True)
class Precoder:
    """columns[i] is zero at every lam member except lam[i], where the gain is 1."""
    lam: tuple[int, ...]
    columns: tuple[tuple[int, ...], ...]
    p: int

    def column(self, user: int) -> tuple[int, ...]:
        return self.columns[self.lam.index(user)]

    def satisfies_delta(self, channel: ChannelMatrix) -> bool:
        return all(channel.gain(k, col) == int(k == l) for l, col in zip(self.lam, self.columns) for k in self.lam)


def zf_precoder(channel: ChannelMatrix, lam: Sequence[int]) -> Precoder:
    """Inverse of the lam submatrix. Fewer than L users use the first |lam| antennas, the rest idle."""
    lam = tuple(lam)
    if not 1 <= len(lam) <= channel.L:
        raise InvalidConfig(f"|lambda|={len(lam)} must lie in [1, {channel.L}]")
    inv = inverse_mod(channel.submatrix(lam), channel.p)
    pad = (0,) * (channel.L - len(lam))
    cols = tuple(tuple(inv[r][c] for r in range(len(lam))) + pad for c in range(len(lam)))
    return Precoder(lam, cols, channel.p)


def _generic(channel: ChannelMatrix, lambdas: Iterable[Sequence[int]]) -> bool:
    for lam in lambdas:
        try:
            pre = zf_precoder(channel, lam)
        except SingularSubmatrix:
            return False
        outside = [k for k in range(1, channel.K + 1) if k not in lam]
        if any(channel.gain(k, col) == 0 for col in pre.columns for k in outside):
            return False
    return True


def gen_channel(K: int, L: int, seed: int = 0, p: int = DEFAULT_PRIME,
                lambdas: Iterable[Sequence[int]] | None = None) -> ChannelMatrix:
    """Uniform random entries, resampled until every needed precoder exists and leaks to everyone else.

    `lambdas` lists the precoded sets to check; by default all L-subsets of the users.
    """
    if not K >= L >= 1:
        raise InvalidConfig("need K >= L >= 1")
    if not is_prime(p):
        raise InvalidConfig(f"p={p} is not prime")
    lambdas = (list(combinations(range(1, K + 1), L)) if lambdas is None
               else sorted({tuple(lam) for lam in lambdas}))
    rng = random.Random(seed)
    for attempt in range(1, MAX_RESAMPLES + 1):
        rows = tuple(tuple(rng.randrange(p) for _ in range(L)) for _ in range(K))
        channel = ChannelMatrix(K, L, p, seed, rows, attempt)
        if _generic(channel, lambdas):
            return channel
    raise GenericityFailure(f"no generic channel after {MAX_RESAMPLES} draws; p={p} is too small")


@dataclass(frozen=True)
class CoefficientLedger:
    """coefficients[k][i]: what receiver k sees of slot i."""
    lam: tuple[int, ...]
    coefficients: dict

    def of(self, user: int) -> tuple[int, ...]:
        return self.coefficients[user]


def receive(transmission: Transmission, channel: ChannelMatrix, precoder: Precoder | None = None) -> CoefficientLedger:
    if precoder is None:
        precoder = zf_precoder(channel, transmission.lam)
    elif precoder.lam != tuple(transmission.lam):
        raise InvalidConfig("precoder built for a different lambda")
    coeffs = {k: tuple(channel.gain(k, col) for col in precoder.columns) for k in range(1, channel.K + 1)}
    return CoefficientLedger(precoder.lam, coeffs)


def _slot_value(slot, payload: dict, p: int) -> int:
    return sum(payload[piece.subfile] for piece in slot.terms) % p


def decode_user(ledger: CoefficientLedger, user: int, cache: Container, demand: int, transmission: Transmission,
                payload: dict | None = None, p: int = DEFAULT_PRIME) -> SubfileId:
    """Recover the demanded piece carried to `user`, or explain why not.

    With `payload` the received value is synthesized from every piece's field value and
    the receiver solves for its piece using only cached values, which must reproduce it.
    """
    coeffs = ledger.of(user)
    slots = transmission.info_vector
    target = None
    for j, slot in enumerate(slots):
        for piece in slot.terms:
            if piece.user == user and piece.subfile.file == demand:
                target = (j, piece)
                break
        if target:
            break
    if target is None:
        raise NotAddressed(f"user {user} has nothing in this transmission")
    j, piece = target
    if coeffs[j] == 0:
        raise ZeroDesiredCoefficient(f"user {user} sees a zero coefficient on slot {j}")
    live = [i for i, slot in enumerate(slots)
            if coeffs[i] and any(t.subfile not in cache for t in slot.terms)]
    others = [i for i in live if i != j]
    if others:
        raise Uncancelable(f"user {user} cannot remove slots {others}")
    missing = [t.subfile.label() for t in slots[j].terms if t is not piece and t.subfile not in cache]
    if missing:
        raise XorUnresolvable(f"user {user} lacks {missing} inside its XOR")
    if payload is not None:
        y = sum(c * _slot_value(s, payload, p) for c, s in zip(coeffs, slots)) % p
        known = sum(c * _slot_value(s, payload, p) for i, (c, s) in enumerate(zip(coeffs, slots)) if i != j)
        rest = sum(payload[t.subfile] for t in slots[j].terms if t is not piece)
        value = ((y - known) * pow(coeffs[j], -1, p) - rest) % p
        if value != payload[piece.subfile]:
            raise DecodeFailure(f"user {user} decoded the wrong value for {piece.subfile.label()}")
    return piece.subfile


@dataclass
class DecodeReport:
    seed: int
    p: int
    recovered: dict = field(default_factory=dict)     # user -> Counter of (tau1, tau2)
    failures: list = field(default_factory=list)      # (transmission index, user, cause, detail)
    missing: list = field(default_factory=list)       # (user, tau1, tau2, expected, got)
    transmissions: int = 0

    @property
    def success(self) -> bool:
        return not self.failures and not self.missing

    def to_dict(self) -> dict:
        return {
            "success": self.success,
            "seed": self.seed,
            "p": self.p,
            "transmissions": self.transmissions,
            "recovered": {str(u): sum(c.values()) for u, c in sorted(self.recovered.items())},
            "failures": [{"transmission": i, "user": u, "cause": cause, "detail": detail}
                         for i, u, cause, detail in self.failures],
            "missing": [{"user": u, "tau1": list(t1), "tau2": list(t2), "expected": e, "got": g}
                        for u, t1, t2, e, g in self.missing],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def verify_plan(plan: TransmissionPlan | Sequence[Transmission], placement=None, channel: ChannelMatrix | None = None,
                demands: dict | None = None, seed: int = 0, p: int = DEFAULT_PRIME, payload: bool = False,
                caches: dict | None = None) -> DecodeReport:
    """Decode every transmission at every user and compare with what the placement leaves uncached.

    `plan` may be a bare list of transmissions (for fault injection); `placement` and
    `demands` then have to be given. `caches` overrides individual users' caches.
    """
    placement = placement if placement is not None else getattr(plan, "placement")
    demands = demands if demands is not None else getattr(plan, "demands")
    txs = list(plan)
    users = placement.users()
    K = max(users)
    if channel is None:
        L = getattr(getattr(plan, "config", None), "L", None) or max((len(t.lam) for t in txs), default=1)
        channel = gen_channel(K, L, seed, p, lambdas=[t.lam for t in txs])
    caches = {u: (caches or {}).get(u, placement.cache(u)) for u in users}
    values = None
    if payload:
        rng = random.Random(f"payload-{channel.seed}")
        values = defaultdict(lambda: rng.randrange(channel.p))
    precoders: dict = {}
    report = DecodeReport(channel.seed, channel.p, {u: Counter() for u in users}, transmissions=len(txs))
    got: dict = {u: set() for u in users}
    for index, tx in enumerate(txs):
        pre = precoders.get(tx.lam)
        if pre is None:
            pre = precoders[tx.lam] = zf_precoder(channel, tx.lam)
        ledger = receive(tx, channel, pre)
        for u in users:
            try:
                sid = decode_user(ledger, u, caches[u], demands[u], tx, values, channel.p)
            except NotAddressed:
                continue
            except DecodeFailure as exc:
                report.failures.append((index, u, exc.cause, str(exc)))
                continue
            if sid in got[u]:
                report.failures.append((index, u, "duplicate", f"{sid.label()} received twice"))
                continue
            got[u].add(sid)
            report.recovered[u][(sid.tau1, sid.tau2)] += 1
    for u in users:
        counts = report.recovered[u]
        for tau1, tau2 in placement.classes():
            if u in tau1 or u in tau2:
                continue
            n = counts.get((tau1, tau2), 0)
            if n != placement.copies:
                report.missing.append((u, tau1, tau2, placement.copies, n))
    return report
