"""Structured pass/fail reports shared by the library checks and CLI.

A Report is an ordered list of named checks, each carrying one of four
statuses.  The overall status is the worst individual one, and maps to
a process exit code: 0 pass, 1 fail, 2 indeterminate, 3 error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    INDETERMINATE = "indeterminate"
    ERROR = "error"


_SEVERITY = {
    Status.PASS: 0,
    Status.INDETERMINATE: 1,
    Status.FAIL: 2,
    Status.ERROR: 3,
}

EXIT_CODES = {
    Status.PASS: 0,
    Status.FAIL: 1,
    Status.INDETERMINATE: 2,
    Status.ERROR: 3,
}


@dataclass(frozen=True)
class Check:
    """One named verdict with optional human detail and witness data."""

    name: str
    status: Status
    detail: str = ""
    witness: object = None

    def as_dict(self) -> dict:
        out = {"name": self.name, "status": self.status.value}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def line(self) -> str:
        tag = self.status.name
        text = f"[{tag}] {self.name}"
        if self.detail:
            text += f": {self.detail}"
        return text


@dataclass
class Report:
    """Ordered collection of checks under one title."""

    title: str
    checks: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def add(self, name: str, status, detail: str = "", witness=None):
        if isinstance(status, bool):
            status = Status.PASS if status else Status.FAIL
        if not isinstance(status, Status):
            raise TypeError(f"not a status: {status!r}")
        check = Check(name, status, detail, witness)
        self.checks.append(check)
        return check

    @property
    def status(self) -> Status:
        worst = Status.PASS
        for check in self.checks:
            if _SEVERITY[check.status] > _SEVERITY[worst]:
                worst = check.status
        return worst

    @property
    def ok(self) -> bool:
        return self.status is Status.PASS

    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def as_dict(self) -> dict:
        out = {
            "title": self.title,
            "status": self.status.value,
            "checks": [c.as_dict() for c in self.checks],
        }
        if self.extra:
            out["extra"] = self.extra
        return out

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.as_dict(), indent=indent, default=str)

    def lines(self):
        yield f"== {self.title} =="
        for check in self.checks:
            yield check.line()
        yield f"overall: {self.status.name}"
