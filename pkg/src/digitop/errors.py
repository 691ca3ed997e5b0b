"""Exception hierarchy and the verifier result type."""
from __future__ import annotations

from dataclasses import dataclass


class DigitopError(ValueError):
    """Base class for all errors raised by digitop."""


class DimensionMismatch(DigitopError):
    pass


class NotASubimage(DigitopError):
    pass


class EndpointMismatch(DigitopError):
    pass


class BudgetExceeded(DigitopError):
    """An exhaustive procedure would have to exceed its configured cap."""


class StateCapExceeded(BudgetExceeded):
    pass


class UnsupportedConversion(DigitopError):
    pass


@dataclass(frozen=True)
class Check:
    """Outcome of a verifier: truthy on success, otherwise names the failing clause.

    >>> bool(Check(True))
    True
    >>> Check(False, "H endpoints").clause
    'H endpoints'
    """

    ok: bool
    clause: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def prefixed(self, prefix: str) -> "Check":
        if self.ok:
            return self
        return Check(False, f"{prefix}: {self.clause}" if self.clause else prefix, self.detail)


PASS = Check(True)


def fail(clause: str, detail: str = "") -> Check:
    return Check(False, clause, detail)
