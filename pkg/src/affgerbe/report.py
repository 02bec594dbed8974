from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """PASS/FAIL outcome with an itemized list of violations."""

    check: str
    issues: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.issues

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def fail(self, kind: str, **info) -> None:
        self.issues.append({"kind": kind, **info})

    def __bool__(self) -> bool:
        return self.passed
