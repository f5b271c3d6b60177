# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

from dataclasses import dataclass, field
from typing import Any, Dict, Optional


@dataclass
class ErrorInfo:
    """Named domain error with an optional stage tag."""
    error: str
    message: str
    stage: Optional[int] = None

    def label(self) -> str:
        """Render as `Name` or `Name@stageN`."""
        if self.stage is None:
            return self.error
        return f"{self.error}@stage{self.stage}"


class DomainError(Exception):
    """Base class for every error a computation can report by name."""
    def __init__(self, message: str = "", stage: Optional[int] = None):
        self.info = ErrorInfo(error=type(self).__name__, message=message, stage=stage)
        super().__init__(f"{self.info.label()}: {message}" if message else self.info.label())

    @property
    def label(self) -> str:
        return self.info.label()


class MixedRings(DomainError):
    """Operands live in different coefficient rings."""


class NotAUnit(DomainError):
    """Element has no inverse in the truncated model."""


class PrecisionExhausted(DomainError):
    """A truncation cap is too small for the requested computation."""


class DepthExceeded(DomainError):
    """Evaluation depth exceeds a diagram's depth bound."""


class BadLevel(DomainError):
    """Level inclusion index out of range."""


class NotRigid(DomainError):
    """Presentation lacks the rigid tag."""


class BadHeights(DomainError):
    """Height list is not weakly decreasing within [0, h]."""


class NoSplit(DomainError):
    """No Weierstrass order exists for the element."""


class MapUndefined(DomainError):
    """Image of an inverted generator is not invertible."""


class IntegralityFailure(DomainError):
    """A rational coefficient has p in its denominator."""


class HeightMismatch(DomainError):
    """Formal group law height differs from the declared stage height."""


class NonLiftable(DomainError):
    """The order-by-order solve has no solution."""


class NotLubinTate(DomainError):
    """Coordinates fail the Lubin-Tate congruences."""


class IdealEscape(DomainError):
    """Ideal of definition is not sent into the stage ideal."""


class UnknownExample(DomainError):
    """No portrait example with that name."""


class NotFactored(DomainError):
    """Ideal is not given as a product of distinct irreducibles."""


class UnknownFormat(DomainError):
    """Export format is not supported."""


class UsageError(DomainError):
    """Command line could not be parsed."""


@dataclass
class Report:
    """Outcome of a report-valued check."""
    ok: bool
    check: str
    index: Optional[Any] = None
    detail: str = ""
    extra: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return f"{self.check}: pass"
        where = f" at {self.index}" if self.index is not None else ""
        suffix = f" ({self.detail})" if self.detail else ""
        return f"{self.check}: fail{where}{suffix}"
