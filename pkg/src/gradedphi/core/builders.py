"""Constructors for the ring and module families used by the corpora."""

from __future__ import annotations

import itertools

import numpy as np

from .group import FiniteGroup
from .structures import GradedModule, GradedRing

TRIVIAL_GROUP = FiniteGroup.trivial(name="1")


def trivial_components(order: int, zero: int, group: FiniteGroup) -> list[int]:
    """Everything in degree e, {0} elsewhere."""
    comps = [1 << zero] * group.order
    comps[group.identity] = (1 << order) - 1
    return comps


def zn(n: int, group: FiniteGroup | None = None, *, name: str | None = None) -> GradedRing:
    """Z_n with the trivial grading over ``group``."""
    if n < 2:
        raise ValueError("Z_n needs n >= 2 (one != zero)")
    group = group or TRIVIAL_GROUP
    idx = np.arange(n)
    add = (idx[:, None] + idx[None, :]) % n
    mul = (idx[:, None] * idx[None, :]) % n
    return GradedRing([str(i) for i in range(n)], add, mul, 0, 1 % n, group,
                      trivial_components(n, 0, group), name=name or f"Z{n}")


def _poly_label(coeffs, var: str) -> str:
    terms = []
    for j, c in enumerate(coeffs):
        if c == 0:
            continue
        if j == 0:
            terms.append(str(c))
            continue
        mono = var if j == 1 else f"{var}^{j}"
        terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def poly(n: int, k: int, c: int, group: FiniteGroup | None = None, *, grading: str = "trivial",
         var: str = "x", name: str | None = None, check: bool = True) -> GradedRing:
    """Z_n[x]/(x^k - c).

    ``grading="degree"`` gives x degree 1 in a cyclic group ``group`` (labels
    "0".."d-1"), so R_j is spanned by the x^i with i ≡ j (mod d).
    """
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    group = group or TRIVIAL_GROUP
    elems = list(itertools.product(range(n), repeat=k))
    # canonical index: sum c_j n^j, so constants come first
    elems.sort(key=lambda t: sum(cj * n ** j for j, cj in enumerate(t)))
    index = {t: i for i, t in enumerate(elems)}
    N = len(elems)
    add = np.empty((N, N), dtype=np.int64)
    mul = np.empty((N, N), dtype=np.int64)
    for a, ta in enumerate(elems):
        for b, tb in enumerate(elems):
            add[a, b] = index[tuple((p + q) % n for p, q in zip(ta, tb))]
            prod = [0] * k
            for i, p in enumerate(ta):
                if p == 0:
                    continue
                for j, q in enumerate(tb):
                    e = i + j
                    coef = p * q
                    while e >= k:
                        e -= k
                        coef *= c
                    prod[e] = (prod[e] + coef) % n
            mul[a, b] = index[tuple(prod)]
    labels = [_poly_label(t, var) for t in elems]
    zero = index[(0,) * k]
    one = index[(1 % n,) + (0,) * (k - 1)]
    if grading == "trivial":
        comps = trivial_components(N, zero, group)
    elif grading == "degree":
        d = group.order
        comps = [0] * d
        for i, t in enumerate(elems):
            for j in range(d):
                if all(cj == 0 for e, cj in enumerate(t) if e % d != j):
                    comps[group.index(str(j))] |= 1 << i
    else:
        raise ValueError(f"unknown grading {grading!r}")
    return GradedRing(labels, add, mul, zero, one, group, comps,
                      name=name or f"Z{n}[{var}]/({var}^{k}-{c})", check=check)


def gaussian(n: int, group: FiniteGroup | None = None, *, grading: str = "degree",
             name: str | None = None) -> GradedRing:
    """Z_n[i] = Z_n[x]/(x^2 + 1); the default grading puts i in degree 1 of Z_2."""
    if group is None:
        group = FiniteGroup.cyclic(2) if grading == "degree" else TRIVIAL_GROUP
    return poly(n, 2, n - 1, group, grading=grading, var="i", name=name or f"Z{n}[i]")


def product_ring(R1: GradedRing, R2: GradedRing, *, name: str | None = None) -> GradedRing:
    """R1 x R2 graded by (R1)_g x (R2)_g; element (a, b) has index a*|R2| + b."""
    if not R1.group.same_as(R2.group):
        raise ValueError("factors must share the grading group")
    n1, n2 = R1.order, R2.order
    a1, a2 = np.divmod(np.arange(n1 * n2), n2)
    add = R1.add_table[np.ix_(a1, a1)] * n2 + R2.add_table[np.ix_(a2, a2)]
    mul = R1.mul_table[np.ix_(a1, a1)] * n2 + R2.mul_table[np.ix_(a2, a2)]
    labels = [f"({R1.labels[x]},{R2.labels[y]})" for x, y in zip(a1, a2)]
    comps = []
    for g in range(R1.group.order):
        inside = R1.comp_bool[g][a1] & R2.comp_bool[g][a2]
        comps.append(np.flatnonzero(inside).tolist())
    R = GradedRing(labels, add, mul, R1.zero * n2 + R2.zero, R1.one * n2 + R2.one, R1.group,
                   comps, name=name or f"{R1.name}x{R2.name}")
    R.factors = (R1, R2)
    return R


def free_module(R: GradedRing, k: int, *, name: str | None = None) -> GradedModule:
    """R^k with componentwise action and M_g = (R_g)^k."""
    if k < 1:
        raise ValueError("rank must be positive")
    n = R.order
    # first coordinate least significant: (1,0) precedes (0,1)
    elems = [t[::-1] for t in itertools.product(range(n), repeat=k)]
    index = {t: i for i, t in enumerate(elems)}
    N = len(elems)
    add = np.empty((N, N), dtype=np.int64)
    for a, ta in enumerate(elems):
        for b, tb in enumerate(elems):
            add[a, b] = index[tuple(int(R.add_table[p, q]) for p, q in zip(ta, tb))]
    act = np.empty((n, N), dtype=np.int64)
    for r in range(n):
        for b, tb in enumerate(elems):
            act[r, b] = index[tuple(int(R.mul_table[r, q]) for q in tb)]
    labels = ["(" + ",".join(R.labels[i] for i in t) + ")" for t in elems]
    comps = [[index[t] for t in elems if all(R.comp_bool[g][i] for i in t)]
             for g in range(R.group.order)]
    return GradedModule(R, labels, add, act, index[(R.zero,) * k], comps,
                        name=name or f"{R.name}^{k}")


def self_module(R: GradedRing) -> GradedModule:
    return R.self_module
