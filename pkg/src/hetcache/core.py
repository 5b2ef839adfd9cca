"""Domain types and combinatorial helpers shared by every module."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Iterator, NamedTuple, Union

from .errors import InvalidConfig, NonIntegerRedundancy

Subset = tuple[int, ...]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings. Floats are refused to keep arithmetic exact."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
    raise TypeError(f"expected int, Fraction or str, got {type(value).__name__}")


def parse_rational(text: str) -> Fraction:
    return as_fraction(text)


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Fraction | int) -> str:
    return f"{float(value):.6g}"


def enumerate_subsets(ground: Iterable[int], size: int) -> list[Subset]:
    """All subsets of `ground` with `size` elements, lexicographic over the sorted ground set."""
    items = sorted(set(ground))
    if not 0 <= size <= len(items):
        raise ValueError(f"size {size} outside [0, {len(items)}]")
    return list(combinations(items, size))


def t_k(K: int, gamma) -> Fraction:
    """Single-antenna delay K(1-gamma)/(1+K*gamma) for one group of equal-cache users."""
    gamma = as_fraction(gamma)
    if not 0 <= gamma < 1:
        raise ValueError("gamma must lie in [0, 1)")
    return K * (1 - gamma) / (1 + K * gamma)


@dataclass(frozen=True)
class SystemConfig:
    K1: int
    gamma1: Fraction
    K2: int
    gamma2: Fraction = Fraction(0)
    L: int = 1
    N: int | None = None

    def __post_init__(self):
        g1, g2 = as_fraction(self.gamma1), as_fraction(self.gamma2)
        object.__setattr__(self, "gamma1", g1)
        object.__setattr__(self, "gamma2", g2)
        if self.N is None:
            object.__setattr__(self, "N", self.K1 + self.K2)
        if self.K1 < 1 or self.K2 < 0:
            raise InvalidConfig("need K1 >= 1 and K2 >= 0")
        if not 0 < g1 < 1:
            raise InvalidConfig("gamma1 must lie in (0, 1)")
        if not 0 <= g2 < g1:
            raise InvalidConfig("gamma2 must lie in [0, gamma1)")
        if self.L < 1:
            raise InvalidConfig("L must be at least 1")
        if self.N < self.K1 + self.K2:
            raise InvalidConfig("library must hold at least K1 + K2 files")

    @property
    def K(self) -> int:
        return self.K1 + self.K2

    @property
    def users1(self) -> Subset:
        return tuple(range(1, self.K1 + 1))

    @property
    def users2(self) -> Subset:
        return tuple(range(self.K1 + 1, self.K + 1))

    @property
    def t1(self) -> Fraction:
        return self.K1 * self.gamma1

    @property
    def t2(self) -> Fraction:
        return self.K2 * self.gamma2

    @property
    def T1(self) -> Fraction:
        return t_k(self.K1, self.gamma1)

    @property
    def is_integral(self) -> bool:
        return self.t1.denominator == 1 and self.t2.denominator == 1

    def redundancy(self) -> tuple[int, int]:
        """Integer (K1*gamma1, K2*gamma2), as required by every placement."""
        if not self.is_integral:
            raise NonIntegerRedundancy(
                f"K1*gamma1={format_rational(self.t1)}, K2*gamma2={format_rational(self.t2)} must be integers")
        return int(self.t1), int(self.t2)

    def to_dict(self) -> dict:
        return {"K1": self.K1, "gamma1": format_rational(self.gamma1), "K2": self.K2,
                "gamma2": format_rational(self.gamma2), "L": self.L, "N": self.N}


class SubfileId(NamedTuple):
    file: int
    tau1: Subset
    tau2: Subset = ()
    phi1: int = 0
    phi2: int | None = None

    def label(self) -> str:
        idx = "".join(map(str, self.tau1))
        if self.tau2:
            idx += "," + "".join(map(str, self.tau2))
        phi = str(self.phi1) if self.phi2 is None else f"{self.phi1},{self.phi2}"
        return f"W{self.file}[{idx}]^{phi}"


class Piece(NamedTuple):
    """One subfile addressed to one receiver."""
    user: int
    subfile: SubfileId


@dataclass(frozen=True)
class XorComposite:
    terms: tuple[Piece, ...]

    @property
    def users(self) -> Subset:
        return tuple(p.user for p in self.terms)


@dataclass(frozen=True)
class Uncoded:
    piece: Piece

    @property
    def terms(self) -> tuple[Piece, ...]:
        return (self.piece,)

    @property
    def users(self) -> Subset:
        return (self.piece.user,)


Slot = Union[XorComposite, Uncoded]


@dataclass(frozen=True)
class Transmission:
    """Information vector plus the precoded users; slot i is steered to precoded[i] alone."""
    info_vector: tuple[Slot, ...]
    precoded: Subset

    def __post_init__(self):
        if len(self.info_vector) != len(self.precoded):
            raise ValueError("each slot needs exactly one precoded user")
        if len(set(self.precoded)) != len(self.precoded):
            raise ValueError("precoded users must be distinct")

    @property
    def lam(self) -> Subset:
        return self.precoded

    def pieces(self) -> Iterator[Piece]:
        for slot in self.info_vector:
            yield from slot.terms

    def to_record(self) -> dict:
        slots = []
        for slot, target in zip(self.info_vector, self.precoded):
            slots.append({
                "kind": "xor" if isinstance(slot, XorComposite) else "uncoded",
                "target": target,
                "terms": [{"user": p.user, "file": p.subfile.file, "tau1": list(p.subfile.tau1),
                           "tau2": list(p.subfile.tau2), "phi1": p.subfile.phi1, "phi2": p.subfile.phi2}
                          for p in slot.terms],
            })
        return {"lambda": list(self.precoded), "slots": slots}


@dataclass(frozen=True)
class Phase:
    """A run of transmissions: `keys` enumerates slots, `build` turns a key into a Transmission.

    The key sequence is the schedule itself; `build` only fills in copy indices and
    payload identities, so counting keys counts transmitted slots.
    """
    name: str
    keys: Callable[[], Iterable]
    build: Callable


@dataclass(frozen=True)
class TransmissionPlan:
    scheme: str
    S: int
    placement: object
    demands: dict
    phases: tuple[Phase, ...]
    config: SystemConfig | None = None
    meta: dict = field(default_factory=dict)

    @property
    def slot_duration(self) -> Fraction:
        return Fraction(1, self.S)

    @cached_property
    def phase_counts(self) -> tuple[int, ...]:
        return tuple(sum(1 for _ in ph.keys()) for ph in self.phases)

    def slot_count(self) -> int:
        return sum(self.phase_counts)

    @property
    def measured_delay(self) -> Fraction:
        return self.slot_count() * self.slot_duration

    def __iter__(self) -> Iterator[Transmission]:
        from .delivery.common import PhiAllocator
        alloc = PhiAllocator(self.placement, self.demands)
        for ph in self.phases:
            for key in ph.keys():
                yield ph.build(key, alloc)

    @cached_property
    def transmissions(self) -> tuple[Transmission, ...]:
        return tuple(iter(self))

    def __len__(self) -> int:
        return self.slot_count()
