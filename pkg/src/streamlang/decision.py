from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Decision:
    """Outcome of a recognizer run. ``reason`` is set on rejection."""

    accepted: bool
    reason: str | None = None
    position: int | None = None
    stats: dict[str, Any] = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.accepted

    @classmethod
    def accept(cls, **stats) -> Decision:
        return cls(True, stats=stats)

    @classmethod
    def reject(cls, reason: str, position: int | None = None, **stats) -> Decision:
        return cls(False, reason, position, stats)
