"""Verification reports: one case per checked identity, serializable to JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import jsonschema

from .coeff import LaurentPoly, QhatFraction, coeff_str, coeff_to_json

REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite", "size", "cases"],
    "properties": {
        "suite": {"type": "string"},
        "size": {"type": "integer", "minimum": 2},
        "cases": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "status", "residual"],
                "properties": {
                    "id": {"type": "string"},
                    "status": {"enum": ["pass", "fail"]},
                    "residual": {},
                },
            },
        },
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}


def residual_is_zero(r) -> bool:
    if isinstance(r, bool):
        return r
    if r is None:
        return True
    return not r


def residual_json(r):
    if isinstance(r, bool):
        return None if r else "mismatch"
    if r is None:
        return None
    if hasattr(r, "to_json"):
        return r.to_json()
    return coeff_to_json(r)


def residual_text(r) -> str:
    if isinstance(r, bool) or r is None:
        return "" if residual_is_zero(r) else "mismatch"
    if isinstance(r, (LaurentPoly, QhatFraction)):
        return coeff_str(r)
    return str(r)


@dataclass
class Report:
    """Residual-based report: a case passes iff its residual is zero (or True)."""

    suite: str
    size: int
    cases: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, cid: str, residual):
        """Record a case.  ``residual`` is a zero-testable value or a bool 'ok'."""
        ok = residual_is_zero(residual)
        self.cases.append((cid, ok, residual))
        return ok

    def note(self, text: str):
        if text not in self.notes:
            self.notes.append(text)

    def extend(self, other: Report, prefix: str = ""):
        for cid, ok, r in other.cases:
            self.cases.append((prefix + cid, ok, r))
        for n in other.notes:
            self.note(n)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.cases)

    @property
    def failures(self):
        return [(cid, r) for cid, ok, r in self.cases if not ok]

    def counts(self):
        npass = sum(1 for _, ok, _ in self.cases if ok)
        return npass, len(self.cases) - npass

    def to_json(self):
        cases = sorted(self.cases, key=lambda c: c[0])
        out = {
            "suite": self.suite,
            "size": self.size,
            "cases": [{"id": cid, "status": "pass" if ok else "fail",
                       "residual": residual_json(r)} for cid, ok, r in cases],
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def dumps(self) -> str:
        data = self.to_json()
        validate_report(data)
        return json.dumps(data, indent=2, sort_keys=False)

    def text(self) -> str:
        npass, nfail = self.counts()
        lines = [f"suite {self.suite} (size {self.size}): {npass} passed, {nfail} failed"]
        for cid, r in sorted(self.failures, key=lambda c: c[0]):
            lines.append(f"  FAIL {cid}: {residual_text(r)}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)


def validate_report(data):
    jsonschema.validate(data, REPORT_SCHEMA)
