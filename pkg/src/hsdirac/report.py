"""Verification report records shared by every suite."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .exact import ExactMatrix, ExactScalar

PASS = "pass"
FAIL = "fail"


def jsonable(value: Any) -> Any:
    """Convert exact values to JSON-safe data (rationals become strings)."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, ExactScalar):
        return str(value.re) if value.is_real() else value.to_json()
    if isinstance(value, ExactMatrix):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    return str(value)


@dataclass
class Check:
    """One verified statement: an identity at fixed parameters."""

    check: str
    params: dict = field(default_factory=dict)
    status: str = PASS
    values: dict = field(default_factory=dict)
    provenance: str = ""
    witness: Any = None
    wall_time: float | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        out = {
            "check": self.check,
            "params": jsonable(self.params),
            "status": self.status,
            "values": jsonable(self.values),
            "provenance": self.provenance,
        }
        if self.status == FAIL:
            out["witness"] = jsonable(self.witness)
        return out


@dataclass
class VerificationReport:
    suite: str
    entries: list[Check] = field(default_factory=list)

    def add(self, check: str, ok: bool, params: dict | None = None, *, values: dict | None = None,
            provenance: str = "", witness: Any = None, wall_time: float | None = None) -> Check:
        entry = Check(check, dict(params or {}), PASS if ok else FAIL, dict(values or {}),
                      provenance, None if ok else witness, wall_time)
        self.entries.append(entry)
        return entry

    def extend(self, other: "VerificationReport | Iterable[Check]") -> "VerificationReport":
        self.entries.extend(other.entries if isinstance(other, VerificationReport) else other)
        return self

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def failures(self) -> list[Check]:
        return [e for e in self.entries if not e.passed]

    def summary(self) -> dict:
        n_fail = len(self.failures)
        return {"pass": len(self.entries) - n_fail, "fail": n_fail}

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "entries": [e.to_dict() for e in self.entries],
            "summary": self.summary(),
        }
        if timing:
            out["envelope"] = {"wall_time": [e.wall_time for e in self.entries]}
        return out

    def __str__(self):
        s = self.summary()
        return f"{self.suite}: {s['pass']} pass, {s['fail']} fail"


@contextmanager
def timed():
    """Yield a one-element list that receives the elapsed seconds."""
    box = [0.0]
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = time.perf_counter() - t0
