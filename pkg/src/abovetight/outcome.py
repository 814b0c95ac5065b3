"""Shared decision outcomes and refusal errors for the three deciders."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Verdict(Enum):
    """How a parameterized decision was settled."""

    YES_BY_BOUND = "YES_BY_BOUND"
    YES_WITNESS = "YES_WITNESS"
    NO = "NO"
    KERNEL = "KERNEL"


@dataclass(frozen=True)
class DecisionOutcome:
    """Result of a decide_* call.

    ``witness`` is present exactly for YES_WITNESS verdicts; ``kernel``
    carries the reduced instance when exact solving was refused because
    the kernel exceeds the configured cap. ``diagnostics`` echoes every
    threshold that was compared, so bound-based verdicts are auditable.
    """

    verdict: Verdict
    witness: Any = None
    kernel: Any = None
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if (self.witness is not None) != (self.verdict is Verdict.YES_WITNESS):
            raise ValueError("witness must be present iff verdict is YES_WITNESS")
        if self.kernel is not None and self.verdict is not Verdict.KERNEL:
            raise ValueError("kernel payload is only valid for KERNEL outcomes")


class CapExceeded(Exception):
    """Exact solving refused: the instance is larger than the configured cap."""

    def __init__(
        self,
        message: str,
        instance: Any = None,
        needed: int | None = None,
        cap: int | None = None,
    ):
        super().__init__(message)
        self.instance = instance
        self.needed = needed
        self.cap = cap


class RestrictionViolated(Exception):
    """A decider's structural precondition does not hold for the instance."""
