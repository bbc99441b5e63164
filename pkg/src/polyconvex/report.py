"""Pass/fail reports with JSON serialization."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvariantViolation


def jsonable(obj):
    """Rationals become "p/q" strings; tuples become lists."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, frozenset, set)):
        items = sorted(obj) if isinstance(obj, (frozenset, set)) else obj
        return [jsonable(v) for v in items]
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return str(obj)


@dataclass
class Report:
    name: str
    clauses: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def check(self, clause: str, ok: bool, **detail) -> bool:
        self.clauses[clause] = bool(ok)
        if detail:
            self.details[clause] = detail
        return bool(ok)

    def skip(self, clause: str, reason: str) -> None:
        self.clauses[clause] = None
        self.details[clause] = {"skipped": reason}

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.clauses.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.clauses.items() if v is False]

    def require(self) -> "Report":
        if not self.passed:
            raise InvariantViolation(f"{self.name}: failed clauses {self.failures()}")
        return self

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "clauses": jsonable(self.clauses), "details": jsonable(self.details)}
