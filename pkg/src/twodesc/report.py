"""Validation outcomes shared by every validator in the package."""

from __future__ import annotations

from dataclasses import dataclass


class StructuralError(ValueError):
    """Malformed input: bad shapes, out-of-range indices, mismatched endpoints.

    Kept distinct from an axiom failure, which is reported through ``Report``.
    """


class OverBudget(RuntimeError):
    """An exhaustive search would exceed its configured size cap."""


class InvalidInput(ValueError):
    """A construction was handed data that does not validate."""


@dataclass(frozen=True)
class Report:
    ok: bool
    axiom: str | None = None
    where: tuple[int, ...] = ()
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "pass"
        loc = f" at {self.where}" if self.where else ""
        msg = f": {self.message}" if self.message else ""
        return f"fail [{self.axiom}]{loc}{msg}"


PASS = Report(True)


def fail(axiom: str, where=(), message: str = "") -> Report:
    return Report(False, axiom, tuple(int(i) for i in where), message)
