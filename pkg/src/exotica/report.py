"""Verification reports: an ordered list of named exact checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class VerificationReport:
    subject: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name, passed, witness=""):
        self.checks.append(Check(name, bool(passed), "" if passed else witness))

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def text_lines(self):
        lines = [f"# {self.subject}"]
        lines += [f"# {n}" for n in self.notes]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"{status} {c.name}"
            if c.witness:
                line += f" witness: {c.witness}"
            lines.append(line)
        return lines

    def __str__(self):
        return "\n".join(self.text_lines())
