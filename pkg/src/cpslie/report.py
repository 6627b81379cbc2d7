"""Check reports and the structured error raised when a law fails."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of checking one identity over basis tuples.

    ``failures`` holds ``(indices, defect)`` pairs, where ``defect`` is the
    nonzero value the identity should have sent to zero.
    """

    law: str
    failures: list[tuple[tuple[int, ...], Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def first(self):
        return self.failures[0] if self.failures else None


class StructureError(ValueError):
    """A required law does not hold.

    ``code`` is a stable identifier (for example ``"J-SQUARE"`` or
    ``"J-INTEGRABLE"``) so scripts can tell failures apart.
    """

    def __init__(self, code: str, message: str, witness: Any = None):
        super().__init__(f"[{code}] {message}")
        self.code = code
        self.message = message
        self.witness = witness
