"""Outcome record shared by the structural-proposition checks."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional


@dataclass(frozen=True)
class Verdict:
    """Outcome of one proposition check.

    ``max_violation`` is the excess beyond the check's documented
    allowance, so holds <=> max_violation <= 0.  Vacuous cases and
    hypothesis failures hold with an explanatory note; a check never
    reports a conclusion violation when a hypothesis fails.
    """

    check_id: str
    holds: bool
    max_violation: float
    witness: Optional[tuple] = None
    notes: str = ""

    def to_dict(self) -> dict:
        w = None
        if self.witness is not None:
            w = [float(v) if isinstance(v, float) else int(v) for v in self.witness]
        return {
            "check_id": self.check_id,
            "holds": bool(self.holds),
            "max_violation": float(self.max_violation),
            "witness": w,
            "notes": self.notes,
        }

    @property
    def vacuous(self) -> bool:
        return "vacuous" in self.notes or "hypothesis" in self.notes

    def with_id(self, check_id: str) -> "Verdict":
        return replace(self, check_id=check_id)
