from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of an exhaustive axiom check.

    ``axiom`` names the first violated axiom and ``witness`` holds the
    offending tuple of element labels.
    """

    structure: str
    ok: bool
    axiom: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return f"{self.structure}: ok"
        return f"{self.structure}: {self.axiom} violated (witness {self.witness})"


def passed(structure: str) -> ValidationReport:
    return ValidationReport(structure, True)


def failed(structure: str, axiom: str, witness: tuple) -> ValidationReport:
    return ValidationReport(structure, False, axiom, tuple(witness))
