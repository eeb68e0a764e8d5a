"""Result records shared by the verification suites."""

from dataclasses import dataclass, field
from typing import Optional


@dataclass
class ClaimResult:
    name: str
    cases: int
    max_deviation: float
    tolerance: float
    worst: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


@dataclass
class VerifyReport:
    """Outcome of one suite: each claim passes iff its worst deviation is
    within its tolerance."""

    suite: str
    claims: list = field(default_factory=list)

    def record(self, name, deviation, tolerance, params=None, cases=1):
        for c in self.claims:
            if c.name == name:
                c.cases += cases
                if deviation > c.max_deviation:
                    c.max_deviation, c.worst = deviation, params
                return c
        c = ClaimResult(name, cases, float(deviation), float(tolerance), params)
        self.claims.append(c)
        return c

    @property
    def cases(self) -> int:
        return sum(c.cases for c in self.claims)

    @property
    def max_deviation(self) -> float:
        return max((c.max_deviation for c in self.claims), default=0.0)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    @property
    def worst(self) -> Optional[dict]:
        if not self.claims:
            return None
        return max(self.claims, key=lambda c: c.max_deviation - c.tolerance).worst

    def merge(self, other: "VerifyReport") -> "VerifyReport":
        out = VerifyReport(self.suite)
        for c in self.claims + other.claims:
            out.record(c.name, c.max_deviation, c.tolerance, c.worst, c.cases)
        return out

    def as_dict(self) -> dict:
        return {
            "suite": self.suite, "passed": self.passed, "cases": self.cases,
            "max_deviation": self.max_deviation,
            "claims": [
                {"name": c.name, "passed": c.passed, "cases": c.cases,
                 "max_deviation": c.max_deviation, "tolerance": c.tolerance,
                 "worst": c.worst}
                for c in self.claims
            ],
        }

    def lines(self):
        for c in self.claims:
            flag = "PASS" if c.passed else "FAIL"
            yield (f"{flag} {self.suite}/{c.name}: cases={c.cases} "
                   f"max_dev={c.max_deviation:.3e} tol={c.tolerance:.1e}")


@dataclass
class AggregateReport:
    reports: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def max_deviation(self) -> float:
        return max((r.max_deviation for r in self.reports), default=0.0)

    def as_dict(self) -> dict:
        return {"passed": self.passed, "suites": [r.as_dict() for r in self.reports]}

    def lines(self):
        for r in self.reports:
            yield from r.lines()
