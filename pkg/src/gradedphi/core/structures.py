"""Finite graded rings and graded modules stored as explicit tables.

Elements are the indices ``0..n-1`` of a canonical carrier ordering; labels
are only used for input and rendering. Components are bitmasks, one per
grading-group element.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..errors import AxiomViolation, MalformedStructure
from . import bits
from .group import FiniteGroup, check_associative, check_commutative, first_true, table_from_labels
from .report import ValidationReport, failed, passed


def _as_table(table, rows: int, cols: int, vmax: int, what: str) -> np.ndarray:
    arr = np.asarray(table, dtype=np.int64)
    if arr.shape != (rows, cols):
        raise MalformedStructure(f"{what}: expected shape {(rows, cols)}, got {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= vmax):
        raise MalformedStructure(f"{what}: value outside carrier")
    return arr


class _GradedAbelian:
    """Shared machinery: additive group plus a G-indexed family of components."""

    kind = "structure"

    def _setup(self, labels, add, zero, group: FiniteGroup, components, name: str):
        self.name = name
        self.labels = tuple(str(x) for x in labels)
        self.order = n = len(self.labels)
        if len(set(self.labels)) != n:
            raise MalformedStructure(f"{self.kind} {name}: duplicate labels")
        self.add_table = _as_table(add, n, n, n, f"{self.kind} {name} add")
        if not 0 <= int(zero) < n:
            raise MalformedStructure(f"{self.kind} {name}: zero outside carrier")
        self.zero = int(zero)
        self.group = group
        comps = list(components)
        if len(comps) != group.order:
            raise MalformedStructure(
                f"{self.kind} {name}: {len(comps)} components for a group of order {group.order}")
        masks = []
        for c in comps:
            m = int(c) if isinstance(c, (int, np.integer)) else bits.mask_of(c)
            if m >> n:
                raise MalformedStructure(f"{self.kind} {name}: component element outside carrier")
            masks.append(m)
        self.components = tuple(masks)
        self.comp_bool = np.array([bits.to_bool(m, n) for m in masks], dtype=bool).reshape(
            group.order, n)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._cache: dict = {}

    # -- element helpers -------------------------------------------------

    def element(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise KeyError(f"{label!r} is not an element of {self.name}") from None

    def label(self, x: int) -> str:
        return self.labels[x]

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    @cached_property
    def neg(self) -> np.ndarray:
        out = np.empty(self.order, dtype=np.int64)
        for a in range(self.order):
            hit = np.flatnonzero(self.add_table[a] == self.zero)
            if len(hit) == 0:
                raise AxiomViolation(failed(self._vname, "additive-inverse", (self.labels[a],)))
            out[a] = hit[0]
        return out

    @property
    def full_mask(self) -> int:
        return bits.full(self.order)

    @property
    def _vname(self) -> str:
        return f"{self.kind} {self.name}"

    # -- grading ---------------------------------------------------------

    @cached_property
    def homogeneous_mask(self) -> int:
        m = 0
        for c in self.components:
            m |= c
        return m

    @cached_property
    def homogeneous(self) -> np.ndarray:
        """Homogeneous elements h(X) as a sorted index array."""
        return np.array(bits.members(self.homogeneous_mask), dtype=np.int64)

    @cached_property
    def is_homogeneous(self) -> np.ndarray:
        return self.comp_bool.any(axis=0)

    def degree(self, x: int) -> int | None:
        """Group index of a nonzero homogeneous ``x``; None for 0 or non-homogeneous x."""
        if x == self.zero:
            return None
        hits = np.flatnonzero(self.comp_bool[:, x])
        return int(hits[0]) if len(hits) else None

    def component_indices(self, g: int) -> np.ndarray:
        return np.flatnonzero(self.comp_bool[g])

    def _direct_sum(self):
        """Return (decomposition table, None) or (None, witness labels)."""
        partial = {self.zero: ()}
        for g in range(self.group.order):
            nxt = {}
            for s, tup in partial.items():
                for c in self.component_indices(g):
                    v = int(self.add_table[s, c])
                    if v in nxt:
                        first = "+".join(self.labels[i] for i in nxt[v])
                        second = "+".join(self.labels[i] for i in tup + (int(c),))
                        return None, (self.labels[v], first, second)
                    nxt[v] = tup + (int(c),)
            partial = nxt
        if len(partial) != self.order:
            missing = next(x for x in range(self.order) if x not in partial)
            return None, ("not a sum of components", self.labels[missing])
        table = np.empty((self.order, self.group.order), dtype=np.int64)
        for v, tup in partial.items():
            table[v] = tup
        return table, None

    @cached_property
    def decomposition(self) -> np.ndarray:
        """``decomposition[x, g]`` is the index of the g-component of x."""
        table, witness = self._direct_sum()
        if table is None:
            raise AxiomViolation(failed(self._vname, "direct-sum", witness))
        return table

    def decompose(self, x: int) -> dict[int, int]:
        """Homogeneous components of ``x`` keyed by group index."""
        row = self.decomposition[x]
        return {g: int(row[g]) for g in range(self.group.order)}

    def decompose_labels(self, label) -> dict[str, str]:
        row = self.decompose(self.element(label))
        return {self.group.labels[g]: self.labels[c] for g, c in row.items()}

    # -- validation pieces ------------------------------------------------

    def _check_additive_group(self) -> ValidationReport | None:
        t, z, lab, vn = self.add_table, self.zero, self.labels, self._vname
        w = check_associative(t)
        if w is not None:
            return failed(vn, "additive-associativity", tuple(lab[i] for i in w))
        w = check_commutative(t)
        if w is not None:
            return failed(vn, "additive-commutativity", tuple(lab[i] for i in w))
        bad = np.flatnonzero(t[z] != np.arange(self.order))
        if len(bad):
            return failed(vn, "additive-identity", (lab[bad[0]],))
        has_inv = (t == z).any(axis=1)
        if not has_inv.all():
            return failed(vn, "additive-inverse", (lab[int(np.flatnonzero(~has_inv)[0])],))
        return None

    def _check_components(self) -> ValidationReport | None:
        lab, vn, gl = self.labels, self._vname, self.group.labels
        for g in range(self.group.order):
            if not self.comp_bool[g, self.zero]:
                return failed(vn, "component-subgroup", (gl[g], lab[self.zero]))
            idx = self.component_indices(g)
            sums = self.add_table[np.ix_(idx, idx)]
            bad = first_true(~self.comp_bool[g][sums])
            if bad is not None:
                return failed(vn, "component-subgroup", (gl[g], lab[idx[bad[0]]], lab[idx[bad[1]]]))
        table, witness = self._direct_sum()
        if table is None:
            return failed(vn, "direct-sum", witness)
        return None


class GradedRing(_GradedAbelian):
    """Finite commutative unital ring with a G-grading R = sum of R_g."""

    kind = "ring"
    factors = None

    def __init__(self, labels: Sequence[str], add, mul, zero: int, one: int, group: FiniteGroup,
                 components, *, name: str = "R", check: bool = True):
        self._setup(labels, add, zero, group, components, name)
        n = self.order
        self.mul_table = _as_table(mul, n, n, n, f"ring {name} mul")
        if not 0 <= int(one) < n:
            raise MalformedStructure(f"ring {name}: one outside carrier")
        self.one = int(one)
        if check:
            report = self.validate()
            if not report:
                raise AxiomViolation(report)

    @classmethod
    def from_tables(cls, labels, add, mul, zero, one, group: FiniteGroup,
                    components: Mapping[str, Iterable[str]], *, name: str = "R",
                    check: bool = True) -> "GradedRing":
        """Build from label-valued tables; ``components`` maps group labels to element labels."""
        labels = [str(x) for x in labels]
        idx = {lab: i for i, lab in enumerate(labels)}
        addt = table_from_labels(labels, add, f"ring {name} add")
        mult = table_from_labels(labels, mul, f"ring {name} mul")
        for what, v in (("zero", zero), ("one", one)):
            if v not in idx:
                raise MalformedStructure(f"ring {name}: {what} {v!r} is not an element")
        comps = _components_from_labels(components, idx, group, f"ring {name}")
        return cls(labels, addt, mult, idx[zero], idx[one], group, comps, name=name, check=check)

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def power(self, a: int, k: int) -> int:
        r = self.one
        for _ in range(k):
            r = int(self.mul_table[r, a])
        return r

    def validate(self) -> ValidationReport:
        bad = self._check_additive_group()
        if bad is not None:
            return bad
        m, a, lab, vn = self.mul_table, self.add_table, self.labels, self._vname
        n = self.order
        w = check_associative(m)
        if w is not None:
            return failed(vn, "multiplicative-associativity", tuple(lab[i] for i in w))
        w = check_commutative(m)
        if w is not None:
            return failed(vn, "multiplicative-commutativity", tuple(lab[i] for i in w))
        bad = np.flatnonzero(m[self.one] != np.arange(n))
        if len(bad):
            return failed(vn, "multiplicative-identity", (lab[bad[0]],))
        if self.one == self.zero:
            return failed(vn, "one-nonzero", (lab[self.one],))
        # x(y + z) == xy + xz
        left = m[np.arange(n)[:, None, None], a[None, :, :]]
        right = a[m[:, :, None], m[:, None, :]]
        w = first_true(left != right)
        if w is not None:
            return failed(vn, "distributivity", tuple(lab[i] for i in w))
        bad = self._check_components()
        if bad is not None:
            return bad
        G = self.group
        for g in range(G.order):
            for h in range(G.order):
                gh = G.mul(g, h)
                prod = m[np.ix_(self.component_indices(g), self.component_indices(h))]
                w = first_true(~self.comp_bool[gh][prod])
                if w is not None:
                    x = self.component_indices(g)[w[0]]
                    y = self.component_indices(h)[w[1]]
                    return failed(vn, "component-product", (lab[x], lab[y], G.labels[gh]))
        if not self.comp_bool[G.identity, self.one]:
            return failed(vn, "one-in-identity-component", (lab[self.one],))
        return passed(vn)

    @cached_property
    def self_module(self) -> "GradedModule":
        """R viewed as a graded module over itself; its submodules are the graded ideals."""
        return GradedModule(self, self.labels, self.add_table, self.mul_table, self.zero,
                            self.components, name=self.name, check=False)

    def __repr__(self) -> str:
        return f"GradedRing({self.name}, order={self.order}, group={self.group.name})"


class GradedModule(_GradedAbelian):
    """Finite unital module over a GradedRing with a compatible G-grading."""

    kind = "module"

    def __init__(self, ring: GradedRing, labels: Sequence[str], add, action, zero: int,
                 components, *, name: str = "M", check: bool = True):
        self.ring = ring
        self._setup(labels, add, zero, ring.group, components, name)
        self.act_table = _as_table(action, ring.order, self.order, self.order,
                                   f"module {name} action")
        self.factors = None
        if check:
            report = self.validate()
            if not report:
                raise AxiomViolation(report)

    @classmethod
    def from_tables(cls, ring: GradedRing, labels, add, action, zero,
                    components: Mapping[str, Iterable[str]], *, name: str = "M",
                    check: bool = True) -> "GradedModule":
        """``action`` maps (ring label, module label) pairs to module labels."""
        labels = [str(x) for x in labels]
        idx = {lab: i for i, lab in enumerate(labels)}
        addt = table_from_labels(labels, add, f"module {name} add")
        act = np.empty((ring.order, len(labels)), dtype=np.int64)
        for i, r in enumerate(ring.labels):
            for j, x in enumerate(labels):
                try:
                    val = action[(r, x)] if isinstance(action, Mapping) else action[i][j]
                except (KeyError, IndexError, TypeError):
                    raise MalformedStructure(f"module {name} action: no value for ({r}, {x})") from None
                if val not in idx:
                    raise MalformedStructure(
                        f"module {name} action: value {val!r} for ({r}, {x}) is not an element")
                act[i, j] = idx[val]
        if zero not in idx:
            raise MalformedStructure(f"module {name}: zero {zero!r} is not an element")
        comps = _components_from_labels(components, idx, ring.group, f"module {name}")
        return cls(ring, labels, addt, act, idx[zero], comps, name=name, check=check)

    def act(self, r: int, m: int) -> int:
        return int(self.act_table[r, m])

    def validate(self) -> ValidationReport:
        bad = self._check_additive_group()
        if bad is not None:
            return bad
        R = self.ring
        act, a, lab, vn = self.act_table, self.add_table, self.labels, self._vname
        rl = R.labels
        bad = np.flatnonzero(act[R.one] != np.arange(self.order))
        if len(bad):
            return failed(vn, "action-unital", (lab[bad[0]],))
        # (r + s)m == rm + sm
        left = act[R.add_table]
        right = a[act[:, None, :], act[None, :, :]]
        w = first_true(left != right)
        if w is not None:
            return failed(vn, "action-ring-distributivity", (rl[w[0]], rl[w[1]], lab[w[2]]))
        # r(m + n) == rm + rn
        left = act[np.arange(R.order)[:, None, None], a[None, :, :]]
        right = a[act[:, :, None], act[:, None, :]]
        w = first_true(left != right)
        if w is not None:
            return failed(vn, "action-module-distributivity", (rl[w[0]], lab[w[1]], lab[w[2]]))
        # (rs)m == r(sm)
        left = act[R.mul_table]
        right = act[np.arange(R.order)[:, None, None], act[None, :, :]]
        w = first_true(left != right)
        if w is not None:
            return failed(vn, "action-associativity", (rl[w[0]], rl[w[1]], lab[w[2]]))
        bad = self._check_components()
        if bad is not None:
            return bad
        G = self.group
        for g in range(G.order):
            for h in range(G.order):
                gh = G.mul(g, h)
                prod = act[np.ix_(R.component_indices(g), self.component_indices(h))]
                w = first_true(~self.comp_bool[gh][prod])
                if w is not None:
                    r = R.component_indices(g)[w[0]]
                    x = self.component_indices(h)[w[1]]
                    return failed(vn, "component-product", (rl[r], lab[x], G.labels[gh]))
        return passed(vn)

    @property
    def is_self_module(self) -> bool:
        return self is self.ring.__dict__.get("self_module")

    def __repr__(self) -> str:
        return f"GradedModule({self.name}, order={self.order}, ring={self.ring.name})"


def _components_from_labels(components, idx, group: FiniteGroup, what: str) -> list[int]:
    comps = [0] * group.order
    for g_label, elems in components.items():
        try:
            g = group.index(g_label)
        except KeyError:
            raise MalformedStructure(f"{what}: unknown degree {g_label!r}") from None
        for e in elems:
            if e not in idx:
                raise MalformedStructure(f"{what}: component element {e!r} is not an element")
            comps[g] |= 1 << idx[e]
    return comps


def validate(structure) -> ValidationReport:
    """Exhaustively check every axiom of a group, ring or module."""
    return structure.validate()


def homogeneous_elements(structure) -> list[str]:
    return [structure.labels[i] for i in structure.homogeneous]


def decompose(x, structure) -> dict[str, str]:
    """Components of ``x`` (a label) keyed by group label."""
    return structure.decompose_labels(x)
