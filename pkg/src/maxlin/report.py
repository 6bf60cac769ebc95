"""Pass/fail reports produced by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of one verification suite.

    `total` counts the checks that ran; `failures` holds one human-readable
    line per failed check (empty means the suite passed). `detail` is a short
    summary for display, e.g. "50/50 trials, 9 states each, exact match".
    """

    name: str
    total: int
    failures: list[str] = field(default_factory=list)
    detail: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "total": self.total,
            "failures": self.failures,
            "detail": self.detail,
        }

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.name}: {status} ({self.total} checks)"]
        if self.detail:
            lines.append(f"  {self.detail}")
        lines.extend(f"  failure: {f}" for f in self.failures)
        return "\n".join(lines)
