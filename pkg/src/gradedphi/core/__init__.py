"""Finite graded rings, modules and their graded submodule lattices."""

from .builders import TRIVIAL_GROUP, free_module, gaussian, poly, product_ring, zn
from .group import FiniteGroup
from .lattice import (
    DEFAULT_BOUND,
    GradedSubmodule,
    check_submodule,
    colon_ideal,
    enumerate_graded_submodules,
    graded_closure,
    graded_prime_submodules,
    graded_radical_ideal,
    graded_radical_submodule,
    ideal_times,
    is_multiplication_module,
    power_chain,
    restricted_colon,
    submodule,
    submodule_power,
    submodule_product,
    ungraded_radical,
    whole,
    zero_submodule,
)
from .report import ValidationReport
from .structures import GradedModule, GradedRing, decompose, homogeneous_elements, validate

__all__ = [
    "DEFAULT_BOUND", "FiniteGroup", "GradedModule", "GradedRing", "GradedSubmodule",
    "TRIVIAL_GROUP", "ValidationReport", "check_submodule", "colon_ideal", "decompose",
    "enumerate_graded_submodules", "free_module", "gaussian", "graded_closure",
    "graded_prime_submodules", "graded_radical_ideal", "graded_radical_submodule",
    "homogeneous_elements", "ideal_times", "is_multiplication_module", "poly", "power_chain",
    "product_ring", "restricted_colon", "submodule", "submodule_power", "submodule_product",
    "ungraded_radical", "validate", "whole", "zero_submodule", "zn",
]
