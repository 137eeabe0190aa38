"""Verification records and their JSON form."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

REPORT_VERSION = 1


def _clean(value):
    """Make a value JSON-friendly and deterministic."""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if hasattr(value, "tolist"):
        return _clean(value.tolist())
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


@dataclass
class Check:
    id: str
    anchor: str
    residual: float
    tol: float
    witness: object = None
    expected_failure: bool = False

    @property
    def verdict(self) -> str:
        return "PASS" if self.residual <= self.tol else "FAIL"

    def as_dict(self) -> dict:
        out = {
            "id": self.id,
            "anchor": self.anchor,
            "residual": float(self.residual),
            "tol": float(self.tol),
            "verdict": self.verdict,
        }
        if self.expected_failure:
            out["expected_failure"] = True
        if self.witness is not None:
            out["witness"] = self.witness
        return _clean(out)


@dataclass
class Discrepancy:
    paper_eq: str
    printed: object
    computed: object
    note: str = ""

    def as_dict(self) -> dict:
        out = {"paper_eq": self.paper_eq, "printed": self.printed, "computed": self.computed}
        if self.note:
            out["note"] = self.note
        return _clean(out)


@dataclass
class VerificationReport:
    seed: int
    config: dict
    checks: list[Check] = field(default_factory=list)
    discrepancies: list[Discrepancy] = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def note(self, paper_eq: str, printed, computed, note: str = "") -> None:
        if not any(d.paper_eq == paper_eq for d in self.discrepancies):
            self.discrepancies.append(Discrepancy(paper_eq, printed, computed, note))

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.verdict == "FAIL"]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {"checks": len(self.checks), "passed": len(self.checks) - len(self.failures),
                "failed": len(self.failures), "discrepancies": len(self.discrepancies)}

    def as_dict(self) -> dict:
        return _clean({
            "version": REPORT_VERSION,
            "seed": self.seed,
            "config": self.config,
            "summary": self.summary(),
            "checks": [c.as_dict() for c in self.checks],
            "discrepancies": [d.as_dict() for d in self.discrepancies],
        })

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        lines = [f"{c.verdict}  {c.id}  residual={c.residual:.3e}  tol={c.tol:.1e}" for c in self.checks]
        s = self.summary()
        lines.append(f"{s['passed']}/{s['checks']} checks passed, {s['discrepancies']} printed-formula discrepancies")
        return "\n".join(lines) + "\n"
