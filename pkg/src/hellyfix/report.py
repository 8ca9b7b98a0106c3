"""Verification reports: one record per case, deterministic JSON and a text table."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

SCHEMA = "hellyfix-report/1"
STATUSES = ("pass", "fail", "infeasible-as-expected", "inconclusive")


@dataclass
class Case:
    key: str
    status: str
    summary: str = ""
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def to_json(self) -> dict:
        return {"key": self.key, "status": self.status, "summary": self.summary, "detail": self.detail}


@dataclass
class VerificationReport:
    command: str
    params: dict = field(default_factory=dict)
    cases: list[Case] = field(default_factory=list)
    timing: dict | None = None

    def add(self, case: Case) -> None:
        self.cases.append(case)

    @property
    def counts(self) -> dict:
        out = {s: 0 for s in STATUSES}
        for c in self.cases:
            out[c.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.cases)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "command": self.command,
            "params": self.params,
            "counts": self.counts,
            "ok": self.ok,
            "cases": [c.to_json() for c in self.cases],
        }
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    def dumps(self) -> str:
        return json.dumps(_plain(self.to_json()), indent=2, sort_keys=True) + "\n"

    def render(self) -> str:
        width = max([len(c.key) for c in self.cases] + [4])
        lines = [f"{self.command}  [{SCHEMA}]"]
        for c in self.cases:
            lines.append(f"  {c.key:<{width}}  {c.status:<22}  {c.summary}")
        counts = ", ".join(f"{v} {k}" for k, v in self.counts.items() if v)
        lines.append(f"  -- {len(self.cases)} cases: {counts or 'none'}")
        if self.timing:
            lines.append("  -- timing: " + ", ".join(f"{k}={v:.3f}s" for k, v in sorted(self.timing.items())))
        return "\n".join(lines) + "\n"


def _plain(x: Any):
    """Make a value JSON-safe: Fractions become "p/q" strings, tuples lists."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (frozenset, set)):
        return sorted((_plain(v) for v in x), key=repr)
    return x
