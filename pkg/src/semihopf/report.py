"""Validation reports: the uniform result type of every law checker.

A report certifies validity or lists each violated law with a concrete
witness.  Reports render deterministically (insertion order is the check
order, which is itself deterministic everywhere in this package).
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    detail: str = ""

    def render(self) -> str:
        msg = f"FAIL {self.law}  witness {self.witness}"
        if self.detail:
            msg += f"  ({self.detail})"
        return msg


@dataclass
class ValidationReport:
    subject: str
    passed: list[str] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def record(self, law: str, ok: bool, witness: tuple = (), detail: str = "") -> bool:
        if ok:
            self.passed.append(law)
        else:
            self.violations.append(Violation(law, witness, detail))
        return ok

    def note(self, text: str) -> None:
        self.notes.append(text)

    def merge(self, other: "ValidationReport") -> None:
        prefix = other.subject + ": " if other.subject != self.subject else ""
        self.passed.extend(prefix + law for law in other.passed)
        self.violations.extend(
            Violation(prefix + v.law, v.witness, v.detail) for v in other.violations
        )
        self.notes.extend(prefix + n for n in other.notes)

    def lines(self) -> list[str]:
        out = [f"{self.subject}: {'VALID' if self.valid else 'INVALID'}"]
        out.extend(f"  PASS {law}" for law in self.passed)
        out.extend("  " + v.render() for v in self.violations)
        out.extend(f"  note: {n}" for n in self.notes)
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())
