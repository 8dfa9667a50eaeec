# ltsplit/models.py
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

Scalar = Fraction
Vector = Tuple[Fraction, ...]
Matrix = Tuple[Vector, ...]   # row-major
Root = Tuple[Fraction, ...]   # values on the ordered MASA basis

SCHEMA_VERSION = 1


class MissingDepsError(RuntimeError):
    pass


class AlgebraError(RuntimeError):
    """Domain failure with a stable machine-readable code (E_PARSE, E_NOT_LEIBNIZ, ...)."""

    def __init__(self, message: str, code: str = "E_INTERNAL", detail: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.code = code
        self.detail = dict(detail or {})

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"code": self.code, "message": str(self)}
        if self.detail:
            out["detail"] = self.detail
        return out


# "Not split over Q" outcomes are verdicts, not crashes.
NOT_SPLIT_CODES = ("E_NOT_COMMUTING", "E_IRRATIONAL_OR_DEFECTIVE")


@dataclass(frozen=True)
class Violation:
    identity: str                 # EQ1 | EQ2 | PROP3 | RIGHT_LEIBNIZ
    indices: Tuple[int, ...]
    defect: Vector


@dataclass(frozen=True)
class IdentityReport:
    passed: bool
    violations: Tuple[Violation, ...] = ()
    truncated: bool = False

    def to_dict(self) -> Dict[str, Any]:
        from .exact_linear import format_vector

        return {
            "passed": self.passed,
            "truncated": self.truncated,
            "violations": [
                {"identity": v.identity, "indices": list(v.indices), "defect": format_vector(v.defect)}
                for v in self.violations
            ],
        }


@dataclass(frozen=True)
class Finding:
    condition: str
    roots: Tuple[Root, ...] = ()
    evidence: str = ""


@dataclass(frozen=True)
class CheckReport:
    check: str
    passed: bool
    findings: Tuple[Finding, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        from .split_decomposition import format_root

        return {
            "check": self.check,
            "passed": self.passed,
            "findings": [
                {
                    "condition": f.condition,
                    "roots": [format_root(r) for r in f.roots],
                    "evidence": f.evidence,
                }
                for f in self.findings
            ],
        }


def make_report(check: str, findings: List[Finding]) -> CheckReport:
    return CheckReport(check=check, passed=not findings, findings=tuple(findings))


@dataclass(frozen=True)
class LabeledIdeal:
    label: str
    space: Any  # Subspace; typed loosely to keep this module import-free
    aliases: Tuple[str, ...] = field(default_factory=tuple)
