"""Exception types and the report value returned by validators."""

from __future__ import annotations

from dataclasses import dataclass, field


class AffinePlannerError(Exception):
    """Base class for all errors raised by this package."""


class AffineVectorError(AffinePlannerError, ValueError):
    """Weights are out of [0, 1] or do not sum to exactly one."""


class TreeValidationError(AffinePlannerError, ValueError):
    pass


class NotStandardizableError(AffinePlannerError, ValueError):
    pass


class ActionValidationError(AffinePlannerError, ValueError):
    pass


class InstantiationError(AffinePlannerError, ValueError):
    pass


class PairingError(AffinePlannerError, ValueError):
    pass


class UnsupportedRuleError(AffinePlannerError, ValueError):
    pass


class OracleSizeError(AffinePlannerError, ValueError):
    """Input exceeds the combinatorial caps the oracle is willing to enumerate."""


class DomainError(AffinePlannerError):
    """A domain file failed to parse, validate or resolve a reference.

    ``rule`` names the violated rule (``"parse"``, ``"sum-to-one"``,
    ``"exhaustiveness"``, ``"feasibility"``, ``"reference"``, ...).
    """

    def __init__(self, message: str, rule: str = "validation"):
        super().__init__(message)
        self.rule = rule


@dataclass(frozen=True)
class Issue:
    path: tuple
    message: str

    def __str__(self) -> str:
        where = "/".join(str(p) for p in self.path) or "<root>"
        return f"{where}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.issues

    def __bool__(self) -> bool:
        return self.ok

    def messages(self) -> list[str]:
        return [str(i) for i in self.issues]
