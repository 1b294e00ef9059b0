"""Shared verdict type returned by all three equivalence checkers."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any


class Status(str, enum.Enum):
    EQUIVALENT = "equivalent"
    NOT_EQUIVALENT = "not_equivalent"
    UNKNOWN = "unknown"


@dataclass
class EquivalenceVerdict:
    status: Status
    witness: Any = None  # assignment dict / FiniteModel / distinguishing string
    reason: str | None = None

    def __post_init__(self):
        if self.status is Status.UNKNOWN and not self.reason:
            raise ValueError("Unknown verdicts must carry a reason")

    @property
    def equivalent(self) -> bool:
        return self.status is Status.EQUIVALENT


def equivalent() -> EquivalenceVerdict:
    return EquivalenceVerdict(Status.EQUIVALENT)


def not_equivalent(witness=None, reason: str | None = None) -> EquivalenceVerdict:
    return EquivalenceVerdict(Status.NOT_EQUIVALENT, witness=witness, reason=reason)


def unknown(reason: str) -> EquivalenceVerdict:
    return EquivalenceVerdict(Status.UNKNOWN, reason=reason)
