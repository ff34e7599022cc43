"""Graded submodules, their enumeration, colon ideals and radicals."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from ..errors import AxiomViolation, BoundExceeded, NotMultiplicationModule
from . import bits
from .kernels import pair_violation
from .report import ValidationReport, failed, passed
from .structures import GradedModule, GradedRing

DEFAULT_BOUND = 64


@dataclass(frozen=True)
class GradedSubmodule:
    """A graded submodule identified by its member bitset over ``module``.

    Over ``R.self_module`` this is a graded ideal of R.
    """

    module: GradedModule
    mask: int

    @cached_property
    def members(self) -> list[int]:
        return bits.members(self.mask)

    @cached_property
    def bools(self) -> np.ndarray:
        return bits.to_bool(self.mask, self.module.order)

    @property
    def labels(self) -> list[str]:
        return [self.module.labels[i] for i in self.members]

    @property
    def size(self) -> int:
        return bits.popcount(self.mask)

    @property
    def is_proper(self) -> bool:
        return self.mask != self.module.full_mask

    @property
    def is_zero(self) -> bool:
        return self.mask == 1 << self.module.zero

    def __contains__(self, x: int) -> bool:
        return bits.contains(self.mask, x)

    def __le__(self, other: "GradedSubmodule") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "GradedSubmodule") -> bool:
        return self <= other and self.mask != other.mask

    def __and__(self, other: "GradedSubmodule") -> "GradedSubmodule":
        return GradedSubmodule(self.module, self.mask & other.mask)

    def __add__(self, other: "GradedSubmodule") -> "GradedSubmodule":
        return GradedSubmodule(self.module, sum_masks(self.module, self.mask, other.mask))

    def component(self, g: int) -> int:
        """Mask of K ∩ M_g."""
        return self.mask & self.module.components[g]

    def __str__(self) -> str:
        return "{" + ", ".join(self.labels) + "}"

    def __repr__(self) -> str:
        return f"GradedSubmodule({self.module.name}, {self})"


def _idx(mask: int) -> np.ndarray:
    return np.array(bits.members(mask), dtype=np.int64)


def sum_masks(M, a: int, b: int) -> int:
    s = M.add_table[np.ix_(_idx(a), _idx(b))]
    return bits.mask_of(np.unique(s))


def cyclic_mask(M: GradedModule, x: int) -> int:
    """Mask of Rx."""
    return bits.mask_of(np.unique(M.act_table[:, x]))


def span_mask(M: GradedModule, elements: Iterable[int], start: int | None = None) -> int:
    """Smallest R-submodule containing ``elements`` (and ``start``)."""
    cur = 1 << M.zero if start is None else start
    for x in elements:
        if not bits.contains(cur, x):
            cur = sum_masks(M, cur, cyclic_mask(M, int(x)))
    return cur


def is_graded_mask(M, mask: int) -> bool:
    # K is graded iff it is the internal direct sum of its homogeneous pieces,
    # i.e. |K| equals the product of the |K ∩ M_g|.
    size = 1
    for c in M.components:
        size *= bits.popcount(mask & c)
    return size == bits.popcount(mask)


def check_submodule(M: GradedModule, mask: int) -> ValidationReport:
    name = f"submodule of {M.name}"
    lab = M.labels
    if not bits.contains(mask, M.zero):
        return failed(name, "contains-zero", (lab[M.zero],))
    idx = _idx(mask)
    inside = bits.to_bool(mask, M.order)
    sums = M.add_table[np.ix_(idx, idx)]
    hits = np.argwhere(~inside[sums])
    if len(hits):
        return failed(name, "additive-closure", (lab[idx[hits[0][0]]], lab[idx[hits[0][1]]]))
    neg = M.neg[idx]
    hits = np.flatnonzero(~inside[neg])
    if len(hits):
        return failed(name, "negation-closure", (lab[idx[hits[0]]],))
    prods = M.act_table[:, idx]
    hits = np.argwhere(~inside[prods])
    if len(hits):
        return failed(name, "action-closure", (M.ring.labels[hits[0][0]], lab[idx[hits[0][1]]]))
    for x in idx:
        for g, c in M.decompose(int(x)).items():
            if not inside[c]:
                return failed(name, "graded", (lab[x], M.group.labels[g], lab[c]))
    return passed(name)


def submodule(M: GradedModule, elements: Iterable, *, check: bool = True) -> GradedSubmodule:
    """Wrap an explicit member set (labels or indices) as a GradedSubmodule."""
    idx = [M.element(e) if isinstance(e, str) else int(e) for e in elements]
    mask = bits.mask_of(idx)
    if check:
        report = check_submodule(M, mask)
        if not report:
            raise AxiomViolation(report)
    return GradedSubmodule(M, mask)


def zero_submodule(M: GradedModule) -> GradedSubmodule:
    return GradedSubmodule(M, 1 << M.zero)


def whole(M: GradedModule) -> GradedSubmodule:
    return GradedSubmodule(M, M.full_mask)


def graded_closure(generators: Iterable, M: GradedModule) -> GradedSubmodule:
    """Smallest graded submodule containing every homogeneous component of the generators."""
    comps = []
    for g in generators:
        x = M.element(g) if isinstance(g, str) else int(g)
        comps.extend(c for c in M.decomposition[x] if c != M.zero)
    mask = span_mask(M, comps)
    assert is_graded_mask(M, mask)
    return GradedSubmodule(M, mask)


def enumerate_graded_submodules(M: GradedModule, bound: int = DEFAULT_BOUND) -> list[GradedSubmodule]:
    """Every graded submodule of M, sorted by member bitset.

    Graded submodules are exactly those generated by homogeneous elements, so
    a search that repeatedly adjoins Rh for homogeneous h starting from {0}
    reaches all of them and nothing else.
    """
    cached = M._cache.get("submodules")
    if cached is not None:
        return cached
    if M.order > bound:
        raise BoundExceeded(M.order, bound)
    cyc = {int(h): cyclic_mask(M, int(h)) for h in M.homogeneous}
    start = 1 << M.zero
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for cur in frontier:
            for h, rh in cyc.items():
                if bits.contains(cur, h):
                    continue
                new = sum_masks(M, cur, rh)
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    result = [GradedSubmodule(M, m) for m in sorted(seen)]
    M._cache["submodules"] = result
    return result


# -- ideals -------------------------------------------------------------------


def colon_ideal(K: GradedSubmodule) -> GradedSubmodule:
    """(K :_R M) = {r : rM ⊆ K} as a graded ideal of R."""
    M = K.module
    key = ("colon", K.mask)
    hit = M._cache.get(key)
    if hit is not None:
        return hit
    inside = K.bools[M.act_table].all(axis=1)
    I = GradedSubmodule(M.ring.self_module, bits.from_bool(inside))
    assert check_submodule(I.module, I.mask), "colon ideal is not a graded ideal"
    M._cache[key] = I
    return I


def restricted_colon(K: GradedSubmodule) -> np.ndarray:
    """Indices of (K :_{R_e} M) = (K :_R M) ∩ R_e."""
    R = K.module.ring
    col = colon_ideal(K).bools & R.comp_bool[R.group.identity]
    return np.flatnonzero(col)


def ideal_times(I: GradedSubmodule, N: GradedSubmodule) -> GradedSubmodule:
    """IN, the submodule generated by {a n : a in I, n in N}."""
    M = N.module
    prods = np.unique(M.act_table[np.ix_(_idx(I.mask), _idx(N.mask))])
    return GradedSubmodule(M, span_mask(M, prods.tolist()))


def _power_hits(R: GradedRing, I: GradedSubmodule) -> np.ndarray:
    """``hits[x]`` is True iff x^n lies in I for some 1 <= n <= |R|."""
    in_i = I.bools
    cur = np.arange(R.order)
    hits = np.zeros(R.order, dtype=bool)
    for _ in range(R.order):
        hits |= in_i[cur]
        cur = R.mul_table[cur, np.arange(R.order)]
    return hits


def graded_radical_ideal(I: GradedSubmodule) -> GradedSubmodule:
    """Grad(I): elements all of whose homogeneous components have a power in I.

    Grad(R) is R by convention.
    """
    R = I.module.ring
    key = ("grad", I.mask)
    hit = R._cache.get(key)
    if hit is not None:
        return hit
    if not I.is_proper:
        result = I
    else:
        hits = _power_hits(R, I)
        comps_ok = hits[R.decomposition].all(axis=1)
        result = GradedSubmodule(R.self_module, bits.from_bool(comps_ok))
        assert I <= result
        assert check_submodule(R.self_module, result.mask), "Grad(I) is not a graded ideal"
    R._cache[key] = result
    return result


def ungraded_radical(I: GradedSubmodule) -> GradedSubmodule:
    """The ordinary radical {r : r^n in I}; may be neither graded nor equal to Grad(I)."""
    R = I.module.ring
    return GradedSubmodule(R.self_module, bits.from_bool(_power_hits(R, I)))


# -- prime submodules and Grad_M ---------------------------------------------------


def prime_witness(K: GradedSubmodule):
    """First (r, m) in h(R) x h(M) breaking graded primeness of K, else None."""
    M = K.module
    col = colon_ideal(K).bools
    none = np.zeros(M.order, dtype=bool)
    return pair_violation(M.act_table, K.bools, none, col, M.ring.homogeneous, M.homogeneous)


def graded_prime_submodules(M: GradedModule, bound: int = DEFAULT_BOUND) -> list[GradedSubmodule]:
    cached = M._cache.get("primes")
    if cached is not None:
        return cached
    primes = [K for K in enumerate_graded_submodules(M, bound)
              if K.is_proper and prime_witness(K) is None]
    M._cache["primes"] = primes
    return primes


def graded_radical_submodule(K: GradedSubmodule, bound: int = DEFAULT_BOUND) -> GradedSubmodule:
    """Grad_M(K): intersection of the graded primes containing K, or M if there are none."""
    M = K.module
    key = ("gradM", K.mask)
    hit = M._cache.get(key)
    if hit is not None:
        return hit
    mask = M.full_mask
    for P in graded_prime_submodules(M, bound):
        if K <= P:
            mask &= P.mask
    result = GradedSubmodule(M, mask)
    M._cache[key] = result
    return result


# -- multiplication modules ------------------------------------------------------


def multiplication_certificate(M: GradedModule, bound: int = DEFAULT_BOUND):
    """None if M is a graded multiplication module, else the first failing N."""
    key = "mult-cert"
    if key in M._cache:
        return M._cache[key]
    cert = None
    full = whole(M)
    for N in enumerate_graded_submodules(M, bound):
        if ideal_times(colon_ideal(N), full).mask != N.mask:
            cert = N
            break
    M._cache[key] = cert
    return cert


def is_multiplication_module(M: GradedModule, bound: int = DEFAULT_BOUND):
    """Return (holds, certificate); the certificate is the first N with N != (N:M)M."""
    cert = multiplication_certificate(M, bound)
    return cert is None, cert


def submodule_product(N: GradedSubmodule, K: GradedSubmodule) -> GradedSubmodule:
    """NK = IJM with I = (N:M), J = (K:M); only defined in multiplication modules."""
    M = N.module
    if multiplication_certificate(M) is not None:
        raise NotMultiplicationModule(f"{M.name} is not a graded multiplication module")
    key = ("prod", min(N.mask, K.mask), max(N.mask, K.mask))
    hit = M._cache.get(key)
    if hit is not None:
        return hit
    R = M.ring
    I, J = colon_ideal(N), colon_ideal(K)
    ij = np.unique(R.mul_table[np.ix_(_idx(I.mask), _idx(J.mask))])
    prods = np.unique(M.act_table[ij])
    result = GradedSubmodule(M, span_mask(M, prods.tolist()))
    assert result <= (N & K)
    assert is_graded_mask(M, result.mask)
    M._cache[key] = result
    return result


def submodule_power(K: GradedSubmodule, n: int) -> GradedSubmodule:
    if n < 1:
        raise ValueError("powers start at 1")
    if multiplication_certificate(K.module) is not None:
        raise NotMultiplicationModule(f"{K.module.name} is not a graded multiplication module")
    P = K
    for _ in range(n - 1):
        P = submodule_product(P, K)
    return P


def power_chain(K: GradedSubmodule) -> list[GradedSubmodule]:
    """[K, K^2, ..., K^s] where K^s = K^(s+1) is the first repeat."""
    chain = [submodule_power(K, 1)]
    while True:
        nxt = submodule_product(chain[-1], K)
        if nxt.mask == chain[-1].mask:
            return chain
        chain.append(nxt)
