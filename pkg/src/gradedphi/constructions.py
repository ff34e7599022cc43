"""Quotients, direct products, graded homomorphisms and localizations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .core import bits
from .core.builders import product_ring
from .core.lattice import GradedSubmodule, check_submodule, is_graded_mask
from .core.report import ValidationReport, failed, passed
from .core.structures import GradedModule, GradedRing
from .errors import AxiomViolation, LocalizationError, MalformedStructure
from .phi import EMPTY, PhiFunction, PhiValue, apply_phi

# -- graded homomorphisms ------------------------------------------------------------


class GradedHom:
    """A degree-preserving R-linear map given by its full value table."""

    def __init__(self, source: GradedModule, target: GradedModule, table, *,
                 name: str = "f", check: bool = True):
        if source.ring is not target.ring:
            raise MalformedStructure("a graded homomorphism needs a common ring")
        self.source = source
        self.target = target
        self.name = name
        self.table = np.asarray(table, dtype=np.int64)
        if self.table.shape != (source.order,) or not (
                (self.table >= 0) & (self.table < target.order)).all():
            raise MalformedStructure(f"{name}: map must send every source element into the target")
        if check:
            report = self.validate()
            if not report:
                raise AxiomViolation(report)

    @classmethod
    def from_generators(cls, source: GradedModule, target: GradedModule,
                        images: Mapping, *, name: str = "f") -> "GradedHom":
        """Extend generator images by linearity; the generators must span the source."""
        if source.ring is not target.ring:
            raise MalformedStructure("a graded homomorphism needs a common ring")
        R = source.ring
        src = lambda x: source.element(x) if isinstance(x, str) else int(x)
        dst = lambda x: target.element(x) if isinstance(x, str) else int(x)
        gens = [(src(a), dst(b)) for a, b in images.items()]
        value = {source.zero: target.zero}
        frontier = [source.zero]
        while frontier:
            nxt = []
            for x in frontier:
                fx = value[x]
                for g, fg in gens:
                    for r in range(R.order):
                        y = int(source.add_table[x, source.act_table[r, g]])
                        fy = int(target.add_table[fx, target.act_table[r, fg]])
                        if y not in value:
                            value[y] = fy
                            nxt.append(y)
                        elif value[y] != fy:
                            raise MalformedStructure(
                                f"{name}: generator images are not well defined at "
                                f"{source.labels[y]}")
            frontier = nxt
        if len(value) != source.order:
            raise MalformedStructure(f"{name}: generators do not span {source.name}")
        return cls(source, target, [value[i] for i in range(source.order)], name=name)

    @classmethod
    def identity(cls, M: GradedModule) -> "GradedHom":
        return cls(M, M, np.arange(M.order), name="id", check=False)

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def validate(self) -> ValidationReport:
        M, L, f = self.source, self.target, self.table
        name = f"homomorphism {self.name}"
        lhs = f[M.add_table]
        rhs = L.add_table[f[:, None], f[None, :]]
        hits = np.argwhere(lhs != rhs)
        if len(hits):
            a, b = hits[0]
            return failed(name, "additive", (M.labels[a], M.labels[b]))
        hits = np.argwhere(f[M.act_table] != L.act_table[:, f])
        if len(hits):
            r, a = hits[0]
            return failed(name, "linear", (M.ring.labels[r], M.labels[a]))
        for g in range(M.group.order):
            bad = np.flatnonzero(M.comp_bool[g] & ~L.comp_bool[g][f])
            if len(bad):
                return failed(name, "degree-preserving", (M.group.labels[g], M.labels[bad[0]]))
        return passed(name)

    @cached_property
    def kernel(self) -> GradedSubmodule:
        return preimage_submodule(self, GradedSubmodule(self.target, 1 << self.target.zero))

    @property
    def is_surjective(self) -> bool:
        return len(np.unique(self.table)) == self.target.order


def preimage_submodule(f: GradedHom, N: GradedSubmodule) -> GradedSubmodule:
    """f^{-1}(N), validated as a graded submodule of the source."""
    mask = bits.from_bool(N.bools[f.table])
    report = check_submodule(f.source, mask)
    assert report, f"preimage is not graded: {report}"
    return GradedSubmodule(f.source, mask)


def image_submodule(f: GradedHom, K: GradedSubmodule) -> GradedSubmodule:
    """f(K), validated as a graded submodule of the target."""
    mask = bits.mask_of(np.unique(f.table[K.members]))
    report = check_submodule(f.target, mask)
    assert report, f"image is not graded: {report}"
    return GradedSubmodule(f.target, mask)


# -- quotients -----------------------------------------------------------------------


def quotient_module(M: GradedModule, K: GradedSubmodule, *, name: str | None = None):
    """M/K graded by (M/K)_g = (M_g + K)/K, with the canonical projection.

    A coset is represented by its least member and labelled ``[label]``.
    """
    key = ("quotient", K.mask)
    hit = M._cache.get(key)
    if hit is not None:
        return hit
    kid = np.array(K.members, dtype=np.int64)
    reps = M.add_table[:, kid].min(axis=1)
    carrier = np.unique(reps)
    index = np.full(M.order, -1, dtype=np.int64)
    index[carrier] = np.arange(len(carrier))
    proj = index[reps]
    add = proj[M.add_table[np.ix_(carrier, carrier)]]
    act = proj[M.act_table[:, carrier]]
    comps = [np.unique(proj[M.comp_bool[g]]).tolist() for g in range(M.group.order)]
    labels = [f"[{M.labels[c]}]" for c in carrier]
    Q = GradedModule(M.ring, labels, add, act, proj[M.zero], comps,
                     name=name or f"{M.name}/{K}")
    pi = GradedHom(M, Q, proj, name="proj")
    M._cache[key] = (Q, pi)
    return Q, pi


# -- direct products -----------------------------------------------------------------


def zero_module(R: GradedRing, *, name: str = "0") -> GradedModule:
    return GradedModule(R, ["0"], np.zeros((1, 1), dtype=np.int64),
                        np.zeros((R.order, 1), dtype=np.int64), 0,
                        [[0]] * R.group.order, name=name)


def direct_product(M1: GradedModule, M2: GradedModule, *, ring: GradedRing | None = None,
                   name: str | None = None) -> GradedModule:
    """M1 x M2 over R1 x R2 with M_g = (M1)_g x (M2)_g; (a, b) has index a*|M2| + b."""
    if not M1.group.same_as(M2.group):
        raise MalformedStructure("direct product factors must share the grading group")
    R = ring or product_ring(M1.ring, M2.ring)
    n1, n2 = M1.order, M2.order
    a1, a2 = np.divmod(np.arange(n1 * n2), n2)
    r1, r2 = np.divmod(np.arange(R.order), M2.ring.order)
    add = M1.add_table[np.ix_(a1, a1)] * n2 + M2.add_table[np.ix_(a2, a2)]
    act = M1.act_table[np.ix_(r1, a1)] * n2 + M2.act_table[np.ix_(r2, a2)]
    labels = [f"({M1.labels[x]},{M2.labels[y]})" for x, y in zip(a1, a2)]
    comps = [np.flatnonzero(M1.comp_bool[g][a1] & M2.comp_bool[g][a2]).tolist()
             for g in range(M1.group.order)]
    M = GradedModule(R, labels, add, act, M1.zero * n2 + M2.zero, comps,
                     name=name or f"{M1.name}x{M2.name}")
    M.factors = (M1, M2)
    return M


def product_submodule(M: GradedModule, K1: GradedSubmodule, K2: GradedSubmodule) -> GradedSubmodule:
    """K1 x K2 inside a direct product M."""
    inside = K1.bools[:, None] & K2.bools[None, :]
    return GradedSubmodule(M, bits.from_bool(inside.reshape(-1)))


def split_submodule(M: GradedModule, K: GradedSubmodule):
    """(K1, K2) if K = K1 x K2 inside the direct product M, else None."""
    M1, M2 = M.factors
    grid = K.bools.reshape(M1.order, M2.order)
    K1 = grid.any(axis=1)
    K2 = grid.any(axis=0)
    if not (grid == (K1[:, None] & K2[None, :])).all():
        return None
    return GradedSubmodule(M1, bits.from_bool(K1)), GradedSubmodule(M2, bits.from_bool(K2))


# -- localization --------------------------------------------------------------------


def _mul_closure(R: GradedRing, mask: int) -> int:
    cur = mask | (1 << R.one)
    while True:
        idx = np.array(bits.members(cur), dtype=np.int64)
        nxt = cur | bits.mask_of(np.unique(R.mul_table[np.ix_(idx, idx)]))
        if nxt == cur:
            return cur
        cur = nxt


@dataclass(frozen=True)
class MultiplicativeSet:
    """A multiplicatively closed set of homogeneous ring elements containing 1."""

    ring: GradedRing
    mask: int

    @classmethod
    def generated(cls, R: GradedRing, elements: Iterable) -> "MultiplicativeSet":
        """Close ``elements`` ∪ {1} under multiplication."""
        idx = [R.element(e) if isinstance(e, str) else int(e) for e in elements]
        for x in idx:
            if not R.is_homogeneous[x]:
                raise MalformedStructure(f"{R.labels[x]} is not homogeneous")
        return cls(R, _mul_closure(R, bits.mask_of(idx)))

    def __post_init__(self):
        R = self.ring
        if not bits.contains(self.mask, R.one):
            raise MalformedStructure("a multiplicative set must contain 1")
        if self.mask & ~R.homogeneous_mask:
            raise MalformedStructure("a multiplicative set must consist of homogeneous elements")
        if _mul_closure(R, self.mask) != self.mask:
            raise MalformedStructure("set is not closed under multiplication")

    @cached_property
    def members(self) -> list[int]:
        return bits.members(self.mask)

    @property
    def labels(self) -> list[str]:
        return [self.ring.labels[i] for i in self.members]

    def __str__(self) -> str:
        return "{" + ", ".join(self.labels) + "}"


def multiplicative_sets(R: GradedRing, limit: int | None = None) -> list[MultiplicativeSet]:
    """Multiplicative subsets of h(R) containing 1, sorted by member bitset.

    With ``limit`` only the first sets in breadth-first order (by number of
    adjoined generators) are kept, then sorted.
    """
    homog = [int(h) for h in R.homogeneous]
    start = _mul_closure(R, 0)
    seen = {start}
    frontier = [start]
    while frontier and (limit is None or len(seen) < limit):
        nxt = []
        for cur in frontier:
            for h in homog:
                if bits.contains(cur, h):
                    continue
                new = _mul_closure(R, cur | (1 << h))
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    found = sorted(seen)
    if limit is not None:
        found = found[:limit] if len(found) > limit else found
    return [MultiplicativeSet(R, m) for m in found]


@dataclass
class Localization:
    """S^{-1}M with the canonical map m -> m/1 and the class lookup of (m, s)."""

    module: GradedModule
    source: GradedModule
    S: MultiplicativeSet
    classes: np.ndarray  # classes[m, j] = index of m / S.members[j]

    @property
    def canonical(self) -> np.ndarray:
        return self.classes[:, self.S.members.index(self.S.ring.one)]


def _fraction_classes(M: GradedModule, S: MultiplicativeSet):
    """Partition the pairs (m, s) by m/s ~ m'/s' iff t(s'm - sm') = 0 with t = prod S.

    Any u in S that kills s'm - sm' divides t, and t itself lies in S, so the
    single test with t decides the existential condition exactly.
    """
    R = S.ring
    dens = np.array(S.members, dtype=np.int64)
    t = R.one
    for s in dens:
        t = int(R.mul_table[t, s])
    # scaled[m, j] = t * s_j acting on m
    ts = R.mul_table[t, dens]
    scaled = M.act_table[ts[None, :], np.arange(M.order)[:, None]]
    # sweep pairs in canonical order (denominator 1 first); each unassigned pair
    # leads a new class made of every (m', j') with t s_j' m == t s_j m'
    order = sorted(((0 if s == R.one else 1, int(s), m) for s in dens for m in range(M.order)))
    col = {int(s): j for j, s in enumerate(dens)}
    classes = np.full((M.order, len(dens)), -1, dtype=np.int64)
    leaders: list[tuple[int, int]] = []
    for _, s, m in order:
        j = col[s]
        if classes[m, j] >= 0:
            continue
        cid = len(leaders)
        leaders.append((m, j))
        same = (scaled[m][None, :] == scaled[:, j][:, None]) & (classes < 0)
        classes[same] = cid
    return classes, leaders


def _localize_carrier(M: GradedModule, S: MultiplicativeSet, ring: GradedRing | None):
    R = S.ring
    classes, leaders = _fraction_classes(M, S)
    dens = S.members
    n = len(leaders)

    def frac(m, s):
        return classes[m, dens.index(s)]

    one_col = dens.index(R.one)
    labels = []
    for m, j in leaders:
        s = dens[j]
        labels.append(M.labels[m] if j == one_col else f"{M.labels[m]}/{R.labels[s]}")
    add = np.empty((n, n), dtype=np.int64)
    for a, (m1, j1) in enumerate(leaders):
        s1 = dens[j1]
        for b, (m2, j2) in enumerate(leaders):
            s2 = dens[j2]
            num = M.add_table[M.act_table[s2, m1], M.act_table[s1, m2]]
            add[a, b] = frac(num, int(R.mul_table[s1, s2]))
    # degree of m/s with m in M_h, s in R_k is k^{-1} h
    G = M.group
    comps = [set() for _ in range(G.order)]
    r_deg = {s: R.degree(s) for s in dens if s != R.zero}
    for h in range(G.order):
        for m in M.component_indices(h):
            for s, k in r_deg.items():
                comps[G.mul(G.inv(k), h)].add(int(frac(int(m), s)))
    zero = int(frac(M.zero, R.one))
    for c in comps:
        c.add(zero)
    return classes, leaders, labels, add, [sorted(c) for c in comps], zero, frac


def localize_ring(S: MultiplicativeSet) -> tuple[GradedRing, np.ndarray]:
    """S^{-1}R and its class table classes[a, j] = a / S.members[j]."""
    R = S.ring
    key = ("localize-ring", S.mask)
    hit = R._cache.get(key)
    if hit is not None:
        return hit
    classes, leaders, labels, add, comps, zero, frac = _localize_carrier(R.self_module, S, None)
    dens = S.members
    n = len(leaders)
    mul = np.empty((n, n), dtype=np.int64)
    for a, (x1, j1) in enumerate(leaders):
        for b, (x2, j2) in enumerate(leaders):
            mul[a, b] = frac(int(R.mul_table[x1, x2]), int(R.mul_table[dens[j1], dens[j2]]))
    one = int(frac(R.one, R.one))
    name = f"S^-1({R.name})"
    if n == 1:
        # S meets a nilpotent (or holds 0): everything collapses to the zero
        # ring, which only fails the one != zero axiom and is kept as a degenerate case
        SR = GradedRing(labels, add, mul, zero, one, R.group, comps, name=name, check=False)
    else:
        try:
            SR = GradedRing(labels, add, mul, zero, one, R.group, comps, name=name)
        except AxiomViolation as exc:
            raise LocalizationError(f"fraction degrees are ambiguous: {exc.report}") from exc
    result = (SR, classes)
    R._cache[key] = result
    return result


def localize(M: GradedModule, S: MultiplicativeSet) -> Localization:
    """S^{-1}M over S^{-1}R, graded by (S^{-1}M)_g = {m/s : m ∈ M_h, s ∈ S ∩ R_{hg^{-1}}}.

    When S contains a nilpotent the result is the zero module over the zero ring.
    """
    key = ("localize", S.mask)
    hit = M._cache.get(key)
    if hit is not None:
        return hit
    R = S.ring
    if M.ring is not R:
        raise MalformedStructure("S must live in the ring of M")
    SR, rclasses = localize_ring(S)
    if M.is_self_module:
        SM = SR.self_module
        result = Localization(SM, M, S, rclasses)
        M._cache[key] = result
        return result
    classes, leaders, labels, add, comps, zero, frac = _localize_carrier(M, S, SR)
    dens = S.members
    # ring leaders: first pair (a, j) of each ring class
    rlead = {}
    for a in range(R.order):
        for j in range(len(dens)):
            rlead.setdefault(int(rclasses[a, j]), (a, j))
    act = np.empty((SR.order, len(leaders)), dtype=np.int64)
    for c in range(SR.order):
        a, ja = rlead[c]
        for b, (m, j) in enumerate(leaders):
            act[c, b] = frac(int(M.act_table[a, m]), int(R.mul_table[dens[ja], dens[j]]))
    try:
        SM = GradedModule(SR, labels, add, act, zero, comps, name=f"S^-1({M.name})",
                          check=SR.order > 1)
    except AxiomViolation as exc:
        raise LocalizationError(f"fraction degrees are ambiguous: {exc.report}") from exc
    result = Localization(SM, M, S, classes)
    M._cache[key] = result
    return result


def localize_submodule(K: GradedSubmodule, loc: Localization) -> GradedSubmodule:
    """S^{-1}K = {k/s : k in K, s in S}."""
    mask = bits.mask_of(np.unique(loc.classes[K.members].reshape(-1)))
    assert check_submodule(loc.module, mask), "S^{-1}K is not a graded submodule"
    return GradedSubmodule(loc.module, mask)


def phi_S(phi: PhiFunction, K: GradedSubmodule, loc: Localization) -> PhiValue:
    """phi_S(S^{-1}K) = S^{-1}phi(K), evaluated at the given K (not just at S^{-1}K)."""
    v = apply_phi(phi, K)
    if v is EMPTY:
        return EMPTY
    return localize_submodule(v, loc)
