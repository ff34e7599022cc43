"""Graded (phi-)prime, primary, 2-absorbing and 2-absorbing primary submodules.

Each family is decided by one exhaustive search over homogeneous elements
(or over R_e and M_g for the g-local variants). Plain and weakly variants are
the phi = empty and phi = zero cases, but are wired directly to the excluded
sets ∅ and {0} so they do not route through the phi machinery.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .core import bits
from .core.kernels import pair_violation, triple_violation
from .core.lattice import (
    GradedSubmodule,
    colon_ideal,
    graded_radical_ideal,
    graded_radical_submodule,
)
from .errors import GComponentImproper, GradedPhiError, ImproperSubmodule
from .phi import PhiFunction, excluded_mask, parse_phi

FAMILIES = ("prime", "primary", "2-absorbing", "2-absorbing-primary")
PAIR_FAMILIES = ("prime", "primary")


@dataclass(frozen=True)
class Verdict:
    """``witness`` is (r, m) or (x, y, m) as carrier indices; present iff not holds."""

    holds: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def _scope(K: GradedSubmodule, g: int | None):
    M = K.module
    R = M.ring
    if g is None:
        if not K.is_proper:
            raise ImproperSubmodule(f"{K} is not a proper submodule of {M.name}")
        return R.homogeneous, M.homogeneous
    comp = M.components[g]
    if comp & ~K.mask == 0:
        raise GComponentImproper(
            f"K_g = M_g for g = {M.group.labels[g]}; the g-local predicates need K_g != M_g")
    return R.component_indices(R.group.identity), M.component_indices(g)


def decide(family: str, K: GradedSubmodule, excluded: int = 0, g: int | None = None, *,
           drop_colon: bool = False) -> Verdict:
    """Decide ``family`` for K where the guard set is K minus the ``excluded`` mask.

    ``drop_colon`` removes the xy ∈ (K :_R M) escape from the 2-absorbing
    families; it exists only to build deliberately broken law variants.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown predicate family {family!r}")
    M = K.module
    excluded &= K.mask
    key = ("verdict", family, K.mask, excluded, g, drop_colon)
    hit = M._cache.get(key)
    if hit is not None:
        return hit
    coefs, elems = _scope(K, g)
    excl = bits.to_bool(excluded, M.order)
    if family in PAIR_FAMILIES:
        col = colon_ideal(K)
        ok = col.bools if family == "prime" else graded_radical_ideal(col).bools
        w = pair_violation(M.act_table, K.bools, excl, ok, coefs, elems)
    else:
        target = K if family == "2-absorbing" else graded_radical_submodule(K)
        colon = colon_ideal(K).bools
        if drop_colon:
            colon = np.zeros_like(colon)
        w = triple_violation(M.ring.mul_table, M.act_table, K.bools, excl, target.bools,
                             colon, coefs, elems)
    verdict = Verdict(w is None, w)
    M._cache[key] = verdict
    return verdict


def decide_phi(family: str, K: GradedSubmodule, phi: PhiFunction, g: int | None = None) -> Verdict:
    _scope(K, g)
    return decide(family, K, excluded_mask(phi, K), g)


def violates(family: str, K: GradedSubmodule, excluded: int, witness: tuple) -> bool:
    """Replay a witness against the defining implication using plain table lookups."""
    M = K.module
    R = M.ring
    in_k = lambda v: bits.contains(K.mask, v)
    guard = lambda v: in_k(v) and not bits.contains(excluded, v)
    colon = colon_ideal(K)
    if family in PAIR_FAMILIES:
        r, m = witness
        ok = colon if family == "prime" else graded_radical_ideal(colon)
        rm = M.act(r, m)
        return guard(rm) and not in_k(m) and r not in ok
    x, y, m = witness
    target = K if family == "2-absorbing" else graded_radical_submodule(K)
    xy = R.mul(x, y)
    return (guard(M.act(xy, m)) and M.act(x, m) not in target and M.act(y, m) not in target
            and xy not in colon)


# -- named entry points ---------------------------------------------------------------

_ZERO = lambda K: 1 << K.module.zero


def is_graded_prime(K):
    return decide("prime", K)


def is_graded_weakly_prime(K):
    return decide("prime", K, _ZERO(K))


def is_graded_phi_prime(K, phi):
    return decide_phi("prime", K, phi)


def is_graded_primary(K):
    return decide("primary", K)


def is_graded_weakly_primary(K):
    return decide("primary", K, _ZERO(K))


def is_graded_phi_primary(K, phi):
    return decide_phi("primary", K, phi)


def is_graded_2_absorbing(K):
    return decide("2-absorbing", K)


def is_graded_weakly_2_absorbing(K):
    return decide("2-absorbing", K, _ZERO(K))


def is_graded_phi_2_absorbing(K, phi):
    return decide_phi("2-absorbing", K, phi)


def is_graded_2_absorbing_primary(K):
    return decide("2-absorbing-primary", K)


def is_graded_weakly_2_absorbing_primary(K):
    return decide("2-absorbing-primary", K, _ZERO(K))


def is_graded_phi_2_absorbing_primary(K, phi):
    return decide_phi("2-absorbing-primary", K, phi)


def is_g_phi_primary(K, g: int, phi):
    return decide_phi("primary", K, phi, g)


def is_g_phi_2_absorbing(K, g: int, phi):
    return decide_phi("2-absorbing", K, phi, g)


def is_g_phi_2_absorbing_primary(K, g: int, phi):
    return decide_phi("2-absorbing-primary", K, phi, g)


# -- predicate specs for search and the CLI -----------------------------------------------


@dataclass(frozen=True)
class PredicateSpec:
    """A family plus a phi, written ``weakly-prime``, ``2-absorbing`` or ``primary@n:2``."""

    family: str
    phi: str = "empty"

    @classmethod
    def parse(cls, text: str) -> "PredicateSpec":
        text = text.strip()
        base, _, phi = text.partition("@")
        if base.startswith("weakly-"):
            if phi:
                raise ValueError(f"{text!r}: weakly- already fixes phi")
            base, phi = base[len("weakly-"):], "zero"
        if base not in FAMILIES:
            raise ValueError(f"unknown predicate {text!r}")
        parse_phi(phi or "empty")
        return cls(base, phi or "empty")

    def __call__(self, K: GradedSubmodule) -> Verdict:
        return decide_phi(self.family, K, parse_phi(self.phi, K.module))

    def __str__(self) -> str:
        if self.phi == "empty":
            return self.family
        if self.phi == "zero":
            return f"weakly-{self.family}"
        return f"{self.family}@{self.phi}"


# -- classification reports -----------------------------------------------------------------


@dataclass
class PredicateEntry:
    name: str
    phi: str
    holds: bool | None
    witness: list[str] | None = None
    skipped: str | None = None

    def render(self) -> str:
        if self.skipped is not None:
            return f"{self.name:<34} {self.phi:<8} skipped ({self.skipped})"
        verdict = "true" if self.holds else "false"
        tail = f" (witness {','.join(self.witness)})" if self.witness else ""
        return f"{self.name:<34} {self.phi:<8} {verdict}{tail}"


@dataclass
class ClassificationReport:
    module: str
    submodule: list[str]
    entries: list[PredicateEntry] = field(default_factory=list)

    def get(self, name: str, phi: str = "empty") -> PredicateEntry:
        for e in self.entries:
            if e.name == name and e.phi == phi:
                return e
        raise KeyError((name, phi))

    def to_dict(self) -> dict:
        return {"module": self.module, "submodule": self.submodule,
                "entries": [vars(e) for e in self.entries]}

    @classmethod
    def from_dict(cls, data: dict) -> "ClassificationReport":
        return cls(data["module"], list(data["submodule"]),
                   [PredicateEntry(**e) for e in data["entries"]])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def render(self) -> str:
        head = f"submodule {{{', '.join(self.submodule)}}} of {self.module}"
        return "\n".join([head] + [e.render() for e in self.entries])


def _entry(name, phi_label, fn, labels) -> PredicateEntry:
    try:
        v = fn()
    except GradedPhiError as exc:
        return PredicateEntry(name, phi_label, None, skipped=f"{type(exc).__name__}: {exc}")
    witness = labels(v.witness) if v.witness else None
    return PredicateEntry(name, phi_label, v.holds, witness)


def classify(K: GradedSubmodule, phis=(), *, local: bool = True) -> ClassificationReport:
    """Evaluate every predicate family for K, plain, weakly, per phi and per degree g."""
    if not K.is_proper:
        raise ImproperSubmodule(f"{K} is not a proper submodule of {K.module.name}")
    M = K.module
    R = M.ring

    def labels(w):
        # the last witness slot is a module element, the others ring elements
        return [R.labels[x] for x in w[:-1]] + [M.labels[w[-1]]]

    report = ClassificationReport(M.name, K.labels)
    zero = _ZERO(K)
    for fam in FAMILIES:
        report.entries.append(_entry(fam, "empty", lambda f=fam: decide(f, K), labels))
        report.entries.append(
            _entry(f"weakly-{fam}", "zero", lambda f=fam: decide(f, K, zero), labels))
    for phi in phis:
        for fam in FAMILIES:
            report.entries.append(_entry(f"phi-{fam}", str(phi),
                                         lambda f=fam, p=phi: decide_phi(f, K, p), labels))
    if local:
        for phi in phis or [PhiFunction.empty()]:
            for g in range(M.group.order):
                for fam in FAMILIES[1:]:
                    name = f"g-phi-{fam}[g={M.group.labels[g]}]"
                    report.entries.append(_entry(name, str(phi),
                                                 lambda f=fam, p=phi, gg=g: decide_phi(f, K, p, gg),
                                                 labels))
    return report
