import operator
from dataclasses import dataclass, field
from typing import Any, Optional

from .enums import CertificateKind

SCHEMA_VERSION = "v1"

_RELATIONS = {"<=": operator.le, ">=": operator.ge, "==": operator.eq}


@dataclass
class Verdict:
    """Outcome of a verifier: either accepted with a measured value,
    or rejected with the violated clause and a witness.
    """

    accepted: bool
    measured: Optional[int] = None
    clause: Optional[str] = None
    witness: Any = None

    def __bool__(self) -> bool:
        return self.accepted

    @classmethod
    def accept(cls, measured: Optional[int] = None) -> "Verdict":
        return cls(accepted=True, measured=measured)

    @classmethod
    def reject(cls, clause: str, witness: Any = None, measured: Optional[int] = None) -> "Verdict":
        return cls(accepted=False, measured=measured, clause=clause, witness=witness)


@dataclass
class Claim:
    """A named inequality between a measured value and a bound."""

    name: str
    bound: int
    measured: int
    relation: str = "<="
    parameters: dict[str, int] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return _RELATIONS[self.relation](self.measured, self.bound)


@dataclass
class Certificate:
    kind: CertificateKind
    payload: dict[str, Any]
    claims: list[Claim] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    schema: str = SCHEMA_VERSION


@dataclass
class CheckResult:
    """Values related to a particular check."""

    result: bool
    measured: str
    expected: str
    major_problem: Optional[str] = None


@dataclass
class Check:
    """Outcome of one property check."""

    name: str
    description: str
    check: CheckResult
    duration: float = 0.0


@dataclass
class Section:
    """Group of related checks."""

    name: str
    description: str
    result: bool
    checks: list[Check]
    major_problems: list[str] = field(default_factory=list)


@dataclass
class Report:
    """Top-level class containing the entire result report."""

    result: bool
    sections: list[Section]
    major_problems: list[str] = field(default_factory=list)
