from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    message: str = ""

    def __str__(self):
        return f"{self.law}: {self.message}" if self.message else self.law


@dataclass
class ValidationReport:
    """Violated laws with witnesses; empty means every invariant holds."""

    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law: str, witness: tuple, message: str = ""):
        self.violations.append(Violation(law, tuple(witness), message))

    def extend(self, other: ValidationReport):
        self.violations.extend(other.violations)

    def laws(self) -> list[str]:
        return [v.law for v in self.violations]

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)


@dataclass(frozen=True)
class Decision:
    """Outcome of a decidable predicate, with a witness on failure."""

    holds: bool
    witness: Any = None
    detail: str = ""

    def __bool__(self):
        return self.holds


def passed(witness: Any = None) -> Decision:
    return Decision(True, witness)


def failed(witness: Any, detail: str = "") -> Decision:
    return Decision(False, witness, detail)
