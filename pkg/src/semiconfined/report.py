"""Check reports and CSV/JSON emitters shared by the verification suites and the CLI."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = ["CheckReport", "reports_to_json", "reports_from_json", "write_csv", "format_float"]


@dataclass
class CheckReport:
    name: str
    max_abs_error: float
    tolerance: float
    passed: bool
    details: list[tuple[str, float]] = field(default_factory=list)

    @classmethod
    def from_errors(cls, name: str, errors: Iterable[tuple[str, float]], tolerance: float) -> "CheckReport":
        details = [(str(loc), float(err)) for loc, err in errors]
        worst = max((err for _, err in details), default=0.0)
        if any(math.isnan(err) for _, err in details):
            worst = math.nan
        return cls(name, worst, float(tolerance), bool(worst <= tolerance), details)

    @classmethod
    def combine(cls, name: str, reports: Sequence["CheckReport"]) -> "CheckReport":
        """One report whose details are the sub-reports, gated on all of them passing."""
        details = [(r.name, r.max_abs_error) for r in reports]
        worst = max((r.max_abs_error for r in reports), default=0.0)
        tol = max((r.tolerance for r in reports), default=0.0)
        return cls(name, worst, tol, all(r.passed for r in reports), details)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "max_abs_error": self.max_abs_error,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "details": [[loc, err] for loc, err in self.details],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CheckReport":
        return cls(
            data["name"],
            float(data["max_abs_error"]),
            float(data["tolerance"]),
            bool(data["pass"]),
            [(str(loc), float(err)) for loc, err in data["details"]],
        )

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: max error {self.max_abs_error:.3e} (tol {self.tolerance:.1e})"


def reports_to_json(reports: Sequence[CheckReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


def reports_from_json(text: str) -> list[CheckReport]:
    return [CheckReport.from_dict(d) for d in json.loads(text)]


def format_float(value) -> str:
    """17 significant digits: lossless for doubles."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int,)) and not isinstance(value, bool):
        return str(value)
    return format(float(value), ".17g")


def write_csv(columns: Sequence[str], rows: Iterable[Sequence], stream=None) -> str:
    """Write rows as CSV; returns the text when no stream is given."""
    buffer = stream if stream is not None else io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([v if isinstance(v, str) else format_float(v) for v in row])
    if stream is None:
        return buffer.getvalue()
    return ""
