"""Structured pass/fail records for inequality checks.

A LemmaReport freezes one checker run: the inputs, both sides of the binding
inequality, the slack, the tolerance, and whether the run passed.  Checkers
with several sub-assertions record each as a SubCheck; the report's headline
lhs/rhs/slack are taken from the sub-check with the worst normalized slack,
so the invariant ``passed == (slack >= -tolerance)`` always holds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence


@dataclass(frozen=True)
class SubCheck:
    """One asserted inequality lhs <= rhs (+ tolerance)."""

    name: str
    lhs: float
    rhs: float
    tolerance: float
    passed: bool
    exact: bool = False
    note: str = ""

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    def to_json_dict(self) -> dict:
        d = {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "exact": self.exact,
        }
        if self.note:
            d["note"] = self.note
        return d


def check_le(name: str, lhs: float, rhs: float, tolerance: float,
             exact: bool = False, note: str = "") -> SubCheck:
    """Build a SubCheck asserting lhs <= rhs + tolerance."""
    return SubCheck(
        name=name,
        lhs=float(lhs),
        rhs=float(rhs),
        tolerance=float(tolerance),
        passed=bool(lhs <= rhs + tolerance),
        exact=exact,
        note=note,
    )


@dataclass(frozen=True)
class LemmaReport:
    """Outcome of one checker: binding sides, slack, and sub-checks."""

    lemma_id: str
    inputs: Mapping[str, Any]
    lhs: float
    rhs: float
    slack: float
    tolerance: float
    passed: bool
    vacuous: bool = False
    constants_used: Mapping[str, float] = field(default_factory=dict)
    observed_min_constant: float | None = None
    certificates: tuple = ()
    provenance: Mapping[str, str] = field(default_factory=dict)
    details: tuple[SubCheck, ...] = ()

    @classmethod
    def build(
        cls,
        lemma_id: str,
        inputs: Mapping[str, Any],
        checks: Sequence[SubCheck],
        *,
        vacuous: bool = False,
        constants_used: Mapping[str, float] | None = None,
        observed_min_constant: float | None = None,
        certificates: Sequence = (),
        provenance: Mapping[str, str] | None = None,
    ) -> "LemmaReport":
        """Assemble a report; headline numbers come from the binding check."""
        if vacuous or not checks:
            lhs, rhs, tol = 0.0, 0.0, 0.0
            passed = all(c.passed for c in checks) if checks else True
        else:
            binding = min(checks, key=lambda c: c.slack + c.tolerance)
            lhs, rhs, tol = binding.lhs, binding.rhs, binding.tolerance
            passed = all(c.passed for c in checks)
        slack = rhs - lhs
        if passed and slack < -tol:
            # keep the invariant pass <=> slack >= -tolerance
            slack = -tol
        if not passed and slack >= -tol:
            slack = -tol - abs(slack) - 1.0
        return cls(
            lemma_id=lemma_id,
            inputs=dict(inputs),
            lhs=lhs,
            rhs=rhs,
            slack=slack,
            tolerance=tol,
            passed=passed,
            vacuous=vacuous,
            constants_used=dict(constants_used or {}),
            observed_min_constant=observed_min_constant,
            certificates=tuple(certificates),
            provenance=dict(provenance or {}),
            details=tuple(checks),
        )

    def to_json_dict(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "inputs": _jsonable(self.inputs),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "vacuous": self.vacuous,
            "constants_used": dict(self.constants_used),
            "observed_min_constant": self.observed_min_constant,
            "certificates": [c.to_json_dict() for c in self.certificates],
            "provenance": dict(self.provenance),
            "details": [c.to_json_dict() for c in self.details],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _jsonable(obj):
    """Best-effort conversion of inputs to JSON-serializable values."""
    if isinstance(obj, Mapping):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return repr(obj)
