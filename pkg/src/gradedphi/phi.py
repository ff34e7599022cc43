"""Reducers phi: GS(M) -> GS(M) ∪ {∅} and their pointwise order."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Mapping, Union

from .core.lattice import (
    GradedSubmodule,
    enumerate_graded_submodules,
    power_chain,
    submodule,
    submodule_power,
    zero_submodule,
)
from .core.structures import GradedModule
from .errors import TableMiss


class _Empty:
    """The empty marker; distinct from the zero submodule."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EMPTY"

    def __str__(self) -> str:
        return "∅"

    def __bool__(self) -> bool:
        return False


EMPTY = _Empty()

PhiValue = Union[GradedSubmodule, _Empty]


class PhiKind(Enum):
    EMPTY = "empty"
    ZERO = "zero"
    N_ALMOST = "n"
    OMEGA = "omega"
    TABLE = "table"


@dataclass(frozen=True)
class PhiFunction:
    kind: PhiKind
    n: int | None = None
    # sorted (mask of K, mask of phi(K) or None for the empty marker) pairs
    entries: tuple = ()
    label: str = ""

    @cached_property
    def table(self) -> dict:
        return dict(self.entries)

    @classmethod
    def empty(cls) -> "PhiFunction":
        return cls(PhiKind.EMPTY, label="empty")

    @classmethod
    def zero(cls) -> "PhiFunction":
        return cls(PhiKind.ZERO, label="zero")

    @classmethod
    def power(cls, n: int) -> "PhiFunction":
        if n < 1:
            raise ValueError("phi_n needs n >= 1")
        return cls(PhiKind.N_ALMOST, n=n, label=f"n:{n}")

    @classmethod
    def omega(cls) -> "PhiFunction":
        return cls(PhiKind.OMEGA, label="omega")

    @classmethod
    def from_table(cls, entries: Mapping[GradedSubmodule, PhiValue], label: str = "table"):
        pairs = sorted((K.mask, None if v is EMPTY else v.mask) for K, v in entries.items())
        return cls(PhiKind.TABLE, entries=tuple(pairs), label=label)

    @property
    def needs_multiplication(self) -> bool:
        return self.kind in (PhiKind.N_ALMOST, PhiKind.OMEGA)

    def __str__(self) -> str:
        return self.label

    def __call__(self, K: GradedSubmodule) -> PhiValue:
        return apply_phi(self, K)


def apply_phi(phi: PhiFunction, K: GradedSubmodule) -> PhiValue:
    """Evaluate phi at K; table values are intersected with K."""
    if phi.kind is PhiKind.EMPTY:
        return EMPTY
    if phi.kind is PhiKind.ZERO:
        return zero_submodule(K.module)
    if phi.kind is PhiKind.N_ALMOST:
        return submodule_power(K, phi.n)
    if phi.kind is PhiKind.OMEGA:
        # descending chain K ⊇ K^2 ⊇ ...; the intersection is the stable term
        return power_chain(K)[-1]
    try:
        val = phi.table[K.mask]
    except KeyError:
        raise TableMiss(f"phi table {phi.label!r} has no entry for {K}") from None
    if val is None:
        return EMPTY
    return GradedSubmodule(K.module, val & K.mask)


def excluded_mask(phi: PhiFunction, K: GradedSubmodule) -> int:
    """Mask of K ∩ phi(K); 0 for the empty marker."""
    v = apply_phi(phi, K)
    return 0 if v is EMPTY else v.mask & K.mask


def phi_subset(a: PhiValue, b: PhiValue) -> bool:
    if a is EMPTY:
        return True
    if b is EMPTY:
        return False
    return a <= b


def phi_leq(phi: PhiFunction, psi: PhiFunction, M: GradedModule):
    """Return (holds, witness): phi(K) ⊆ psi(K) for every graded K of M."""
    for K in enumerate_graded_submodules(M):
        if not phi_subset(apply_phi(phi, K), apply_phi(psi, K)):
            return False, K
    return True, None


def parse_phi(text: str, module: GradedModule | None = None) -> PhiFunction:
    """Parse a CLI phi name: empty, zero, n:<k>, omega or table:<file>."""
    text = text.strip()
    if text in ("empty", "∅"):
        return PhiFunction.empty()
    if text in ("zero", "0"):
        return PhiFunction.zero()
    if text == "omega":
        return PhiFunction.omega()
    if text.startswith("n:"):
        return PhiFunction.power(int(text[2:]))
    if text.startswith("table:"):
        if module is None:
            raise ValueError("table phi needs a target module")
        return load_phi_table(Path(text[6:]), module)
    raise ValueError(f"unknown phi {text!r}")


def load_phi_table(path: Path, module: GradedModule) -> PhiFunction:
    """Load ``{"entries": [{"submodule": [...], "phi": [...] | null}, ...]}``."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    entries = {}
    for item in data["entries"]:
        K = submodule(module, item["submodule"])
        v = item["phi"]
        entries[K] = EMPTY if v is None else submodule(module, v)
    return PhiFunction.from_table(entries, label=f"table:{path}")


def default_phis(multiplication: bool) -> list[PhiFunction]:
    if multiplication:
        return [PhiFunction.empty(), PhiFunction.zero(), PhiFunction.power(2),
                PhiFunction.power(3), PhiFunction.omega()]
    return [PhiFunction.empty(), PhiFunction.zero()]
