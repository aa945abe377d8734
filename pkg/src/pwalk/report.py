from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class Violation:
    location: Any
    expected: Any
    actual: Any


@dataclass
class VerificationReport:
    """Outcome of one verification run; ``passed`` holds iff there are no violations."""

    name: str
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    elapsed_ms: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)
    max_violations: int = 20
    n_violations: int = 0

    @property
    def passed(self) -> bool:
        return self.n_violations == 0

    def add(self, location, expected, actual) -> None:
        self.n_violations += 1
        if len(self.violations) < self.max_violations:
            self.violations.append(Violation(_plain(location), _plain(expected), _plain(actual)))

    @property
    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "checked": self.checked,
            "violations": [asdict(v) for v in self.violations],
            "n_violations": self.n_violations,
            "elapsed_ms": self.elapsed_ms,
            "pass": self.passed,
            "details": self.details,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> VerificationReport:
        return cls(
            name=d["name"],
            checked=d["checked"],
            violations=[Violation(**v) for v in d["violations"]],
            elapsed_ms=d["elapsed_ms"],
            details=d.get("details", {}),
            n_violations=d.get("n_violations", len(d["violations"])),
        )

    @classmethod
    def from_json(cls, s: str) -> VerificationReport:
        return cls.from_dict(json.loads(s))

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"[{status}] {self.name}: checked={self.checked} violations={self.n_violations}"
        if self.first is not None:
            v = self.first
            line += f" first@{v.location} expected={v.expected} actual={v.actual}"
        return line


class timed:
    """Context manager that stamps ``elapsed_ms`` onto a report."""

    def __init__(self, report: VerificationReport) -> None:
        self.report = report

    def __enter__(self) -> VerificationReport:
        self._t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc) -> None:
        self.report.elapsed_ms = round((time.perf_counter() - self._t0) * 1000, 3)


def _plain(x):
    """Reduce values to JSON-friendly primitives."""
    from fractions import Fraction

    from .eisenstein import Eisenstein, QZeta, Step

    if isinstance(x, Step):
        return x.label
    if isinstance(x, Eisenstein):
        return [x.a, x.b]
    if isinstance(x, QZeta):
        return [str(x.a), str(x.b)]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if hasattr(x, "value") and isinstance(getattr(x, "value"), str):
        return x.value
    return x
