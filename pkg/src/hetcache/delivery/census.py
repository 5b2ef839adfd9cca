from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from ..core import Transmission, TransmissionPlan
from ..errors import DuplicatePhi


@dataclass(frozen=True)
class DeliveryCensus:
    counts: dict          # (user, tau1, tau2) -> deliveries
    copies: int | None    # pieces per class in the placement, when known
    expected_classes: int | None = None

    def values(self) -> set:
        return set(self.counts.values())

    @property
    def complete(self) -> bool:
        """Every demanded uncached class seen exactly `copies` times."""
        if self.copies is None:
            return False
        if self.expected_classes is not None and len(self.counts) != self.expected_classes:
            return False
        return all(v == self.copies for v in self.counts.values())

    def summary(self) -> dict:
        hist = Counter(self.counts.values())
        return {"classes": len(self.counts), "copies": self.copies, "complete": self.complete,
                "histogram": {str(k): v for k, v in sorted(hist.items())}}


def census(plan: TransmissionPlan | Iterable[Transmission], demands: dict | None = None) -> DeliveryCensus:
    """Count deliveries per (user, class); raise DuplicatePhi if a piece reaches its user twice."""
    placement = getattr(plan, "placement", None)
    if demands is None:
        demands = getattr(plan, "demands", None)
    counts: Counter = Counter()
    seen: set = set()
    for tx in plan:
        for piece in tx.pieces():
            sid = piece.subfile
            key = (piece.user, sid)
            if key in seen:
                raise DuplicatePhi(f"user {piece.user} receives {sid.label()} twice")
            seen.add(key)
            if demands is not None and sid.file != demands[piece.user]:
                raise ValueError(f"user {piece.user} is sent file {sid.file}, wants {demands[piece.user]}")
            counts[(piece.user, sid.tau1, sid.tau2)] += 1
    copies = expected = None
    if placement is not None:
        copies = placement.copies
        expected = 0
        for tau1, tau2 in placement.classes():
            expected += sum(1 for u in placement.users() if u not in tau1 and u not in tau2)
    return DeliveryCensus(dict(counts), copies, expected)
