"""Uniform result objects for the identity-verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of one verified identity or relation.

    status is "pass", "fail" or "skipped"; first_deviation carries the
    offending exponents and both coefficient values when status is
    "fail".
    """

    name: str
    status: str
    first_deviation: dict | None = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    @classmethod
    def from_deviation(cls, name: str, deviation: dict | None, note: str = "") -> "CheckReport":
        if deviation is None:
            return cls(name, "pass", None, note)
        return cls(name, "fail", deviation, note)

    def to_json(self) -> dict:
        out = {"identity": self.name, "status": self.status,
               "first_deviation": self.first_deviation}
        if self.note:
            out["note"] = self.note
        return out

    def line(self) -> str:
        tag = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP"}[self.status]
        extra = ""
        if self.first_deviation:
            d = self.first_deviation
            extra = (f"  first deviation at q^{d['q_exp']} y^{d['y_exp']}:"
                     f" {d['lhs']} != {d['rhs']}")
        if self.note:
            extra += f"  ({self.note})"
        return f"[{tag}] {self.name}{extra}"


@dataclass
class Suite:
    """A named bundle of check reports."""

    name: str
    reports: list[CheckReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    def extend(self, reports) -> None:
        self.reports.extend(reports)

    def to_json(self) -> dict:
        return {"suite": self.name, "ok": self.ok,
                "checks": [r.to_json() for r in self.reports]}
