"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class GradedPhiError(Exception):
    """Base class for all errors raised by gradedphi."""


class MalformedStructure(GradedPhiError):
    """Raw tables are not total mappings into the carrier."""


class AxiomViolation(GradedPhiError):
    """A structure failed validation; ``report`` carries the first failure."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class BoundExceeded(GradedPhiError):
    def __init__(self, order: int, bound: int):
        self.order = order
        self.bound = bound
        super().__init__(f"carrier of order {order} exceeds enumeration bound {bound}")


class ImproperSubmodule(GradedPhiError):
    """Predicates are only defined for proper graded submodules."""


class GComponentImproper(GradedPhiError):
    """The g-local predicates require K_g != M_g."""


class NotMultiplicationModule(GradedPhiError):
    """Submodule products (and hence phi_n, phi_omega) need a multiplication module."""


class TableMiss(GradedPhiError):
    """A table phi-function was evaluated on a submodule it does not list."""


class LocalizationError(GradedPhiError):
    """A fraction class received two different degrees."""


class SpecParseError(GradedPhiError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
