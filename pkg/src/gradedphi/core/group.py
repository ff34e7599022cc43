"""Finite grading groups given by Cayley tables."""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from ..errors import AxiomViolation, MalformedStructure
from .report import ValidationReport, failed, passed


def table_from_labels(labels: Sequence[str], op, what: str) -> np.ndarray:
    """Turn a label-valued binary mapping into an index table.

    ``op`` may be a nested sequence indexed by position or a mapping keyed by
    label pairs. Missing entries and foreign values raise MalformedStructure.
    """
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise MalformedStructure(f"{what}: duplicate element labels")
    n = len(labels)
    out = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            try:
                val = op[(a, b)] if isinstance(op, Mapping) else op[i][j]
            except (KeyError, IndexError, TypeError):
                raise MalformedStructure(f"{what}: no value for ({a}, {b})") from None
            if val not in index:
                raise MalformedStructure(f"{what}: value {val!r} for ({a}, {b}) is not an element")
            out[i, j] = index[val]
    return out


def first_true(arr: np.ndarray):
    hits = np.argwhere(arr)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def check_associative(table: np.ndarray):
    n = table.shape[0]
    left = table[table]  # left[a, b, c] = (ab)c
    right = table[np.arange(n)[:, None, None], table[None, :, :]]
    return first_true(left != right)


def check_commutative(table: np.ndarray):
    return first_true(table != table.T)


class FiniteGroup:
    """Group on element indices ``0..order-1`` with string labels."""

    def __init__(self, labels: Sequence[str], table, identity: int = 0, *, name: str = "G",
                 check: bool = True):
        self.labels = tuple(str(x) for x in labels)
        self.table = np.asarray(table, dtype=np.int64)
        self.identity = int(identity)
        self.name = name
        self.order = len(self.labels)
        if self.table.shape != (self.order, self.order):
            raise MalformedStructure(f"group {name}: table shape {self.table.shape}")
        if self.table.size and (self.table.min() < 0 or self.table.max() >= self.order):
            raise MalformedStructure(f"group {name}: table value outside carrier")
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._inverse = None
        if check:
            report = self.validate()
            if not report:
                raise AxiomViolation(report)

    @classmethod
    def from_tables(cls, labels: Sequence[str], op, identity: str, *, name: str = "G",
                    check: bool = True) -> "FiniteGroup":
        labels = [str(x) for x in labels]
        table = table_from_labels(labels, op, f"group {name}")
        if identity not in labels:
            raise MalformedStructure(f"group {name}: identity {identity!r} is not an element")
        return cls(labels, table, labels.index(identity), name=name, check=check)

    @classmethod
    def cyclic(cls, n: int, *, name: str | None = None) -> "FiniteGroup":
        if n < 1:
            raise ValueError(f"cyclic group order must be positive, got {n}")
        idx = np.arange(n)
        return cls([str(i) for i in range(n)], (idx[:, None] + idx[None, :]) % n, 0,
                   name=name or f"C{n}")

    @classmethod
    def trivial(cls, *, name: str = "1") -> "FiniteGroup":
        return cls(["e"], [[0]], 0, name=name)

    def validate(self) -> ValidationReport:
        name = f"group {self.name}"
        t, e, lab = self.table, self.identity, self.labels
        w = check_associative(t)
        if w is not None:
            return failed(name, "associativity", tuple(lab[i] for i in w))
        for a in range(self.order):
            if t[e, a] != a or t[a, e] != a:
                return failed(name, "identity", (lab[a],))
        for a in range(self.order):
            if not any(t[a, b] == e and t[b, a] == e for b in range(self.order)):
                return failed(name, "inverse", (lab[a],))
        return passed(name)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        if self._inverse is None:
            self._inverse = [int(np.flatnonzero(self.table[g] == self.identity)[0])
                             for g in range(self.order)]
        return self._inverse[a]

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise KeyError(f"{label!r} is not an element of group {self.name}") from None

    def same_as(self, other: "FiniteGroup") -> bool:
        return (self is other or (self.labels == other.labels and self.identity == other.identity
                                  and np.array_equal(self.table, other.table)))

    @property
    def is_abelian(self) -> bool:
        return check_commutative(self.table) is None

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"
