from __future__ import annotations

from typing import Iterable, Sequence

from ..core import Subset, SubfileId
from ..errors import DuplicatePhi, InsufficientGround, InvalidDemand


def beta_set(ground: Iterable[int], tau: Iterable[int], s: int, size: int) -> Subset:
    """The `size` users following s, cyclically, in the ascending order of ground minus tau."""
    tau = set(tau)
    free = [u for u in sorted(set(ground)) if u not in tau]
    if s not in free:
        raise ValueError(f"user {s} must lie in ground minus tau")
    if size > len(free) - 1:
        raise InsufficientGround(f"need {size} users besides {s}, only {len(free) - 1} available")
    pos = free.index(s)
    return tuple(free[(pos + i) % len(free)] for i in range(1, size + 1))


def resolve_demands(users: Sequence[int], N: int, demands: dict | None) -> dict[int, int]:
    """Default demand is file k for user k; explicit demands must be distinct files in [N]."""
    if demands is None:
        if len(users) > N:
            raise InvalidDemand("not enough files for distinct default demands")
        return {u: u for u in users}
    demands = {int(k): int(v) for k, v in demands.items()}
    if set(demands) != set(users):
        raise InvalidDemand("demands must cover exactly the users of the system")
    files = list(demands.values())
    if len(set(files)) != len(files):
        raise InvalidDemand("worst-case demands must be pairwise distinct")
    if any(not 1 <= f <= N for f in files):
        raise InvalidDemand(f"files must lie in [1, {N}]")
    return demands


class PhiAllocator:
    """Hands out fresh copy labels per (user, class), lowest label first."""

    def __init__(self, placement, demands: dict[int, int]):
        self.placement = placement
        self.demands = demands
        self._next: dict[tuple, int] = {}
        self._labels: dict[Subset, list] = {}
        self._cursor: dict[tuple, int] = {}

    def _labels_for(self, tau1: Subset) -> list:
        labels = self._labels.get(tau1)
        if labels is None:
            labels = self._labels[tau1] = self.placement.labels(tau1)
        return labels

    def remaining(self, user: int, tau1: Subset, tau2: Subset = ()) -> int:
        return len(self._labels_for(tau1)) - self._next.get((user, tau1, tau2), 0)

    def take(self, user: int, tau1: Subset, tau2: Subset = ()) -> SubfileId:
        key = (user, tau1, tau2)
        idx = self._next.get(key, 0)
        labels = self._labels_for(tau1)
        if idx >= len(labels):
            raise DuplicatePhi(f"user {user}: class {tau1},{tau2} has no unused copy left")
        self._next[key] = idx + 1
        phi1, phi2 = labels[idx]
        return SubfileId(self.demands[user], tau1, tau2, phi1, phi2)

    def take_any(self, user: int, options: Sequence[tuple[Subset, Subset]], tag=None) -> SubfileId:
        """Next unused piece among `options`, scanned in order; `tag` names the option list."""
        ckey = (user, tag)
        i = self._cursor.get(ckey, 0)
        while i < len(options):
            tau1, tau2 = options[i]
            if self.remaining(user, tau1, tau2) > 0:
                self._cursor[ckey] = i
                return self.take(user, tau1, tau2)
            i += 1
        raise DuplicatePhi(f"user {user}: every class in the pool is exhausted")
