"""Small pass/fail report shared by all structural verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field

# Failure messages kept per report; capped so a badly broken input cannot
# produce an unbounded report.
MAX_FAILURES = 20


@dataclass
class CheckReport:
    """Outcome of one verifier: a name, a count of comparisons made, and
    witness messages for any comparison that failed."""

    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    _overflow: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures and self._overflow == 0

    def count(self, n: int = 1):
        self.checks += n

    def fail(self, message: str):
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(message)
        else:
            self._overflow += 1

    def require(self, condition: bool, message: str):
        self.checks += 1
        if not condition:
            self.fail(message)

    def summary(self) -> str:
        if self.passed:
            return f"PASS {self.name} ({self.checks} checks)"
        extra = f" (+{self._overflow} more)" if self._overflow else ""
        return f"FAIL {self.name}: {self.failures[0]}{extra}"

    def __repr__(self):
        return f"CheckReport({self.summary()!r})"
