"""Executable laws about graded phi-prime, -primary, -2-absorbing and -2-absorbing primary submodules.

Every law is a generator over one corpus instance yielding ``Outcome`` (an
implication or identity that was checked) or ``Skip`` (a precondition such as
"M is a multiplication module" failed). A hypothesis that does not hold makes
the outcome vacuous; that is counted, unlike a skip.

Each law has a deliberately weakened variant, selected with ``mutant=True``,
that drops exactly one hypothesis or disjunct. The weakened statements are
false in general, so the variants must produce counterexamples on the default
corpus; that guards against a harness that passes vacuously.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ..constructions import (
    image_submodule,
    localize,
    localize_ring,
    localize_submodule,
    phi_S,
    preimage_submodule,
    product_submodule,
    quotient_module,
)
from ..core import bits
from ..core.lattice import (
    GradedSubmodule,
    colon_ideal,
    enumerate_graded_submodules,
    graded_radical_ideal,
    graded_radical_submodule,
    is_multiplication_module,
    power_chain,
    submodule_power,
    whole,
)
from ..errors import LocalizationError, NotMultiplicationModule, TableMiss
from ..phi import EMPTY, PhiFunction, apply_phi, default_phis, phi_subset
from ..predicates import decide
from .corpus import DEFAULT_MULSET_LIMIT, Corpus, Instance
from .results import Skip, LawResult, equivalence, identity, implication

TWO_ABS = "2-absorbing"
TWO_ABS_PRIMARY = "2-absorbing-primary"


@dataclass
class LawContext:
    corpus: Corpus
    phis: list[str] | None = None
    mutant: bool = False
    mulset_limit: int | None = DEFAULT_MULSET_LIMIT

    def phi_list(self, inst: Instance) -> list[PhiFunction]:
        return self.corpus.phi_list(inst, self.phis)


# -- small helpers -------------------------------------------------------------------


def kdesc(K: GradedSubmodule) -> str:
    return "{" + ",".join(K.labels) + "}"


def vdesc(v) -> str:
    return "∅" if v is EMPTY else kdesc(v)


def holds(family: str, K: GradedSubmodule, excluded: int = 0, g: int | None = None, *,
          drop_colon: bool = False) -> bool:
    return decide(family, K, excluded, g, drop_colon=drop_colon).holds


def evaluate(phi: PhiFunction, K: GradedSubmodule):
    """phi(K), or a Skip when phi is undefined on K's module."""
    try:
        return apply_phi(phi, K)
    except NotMultiplicationModule:
        return Skip(f"phi {phi} needs a multiplication module")
    except TableMiss:
        return Skip(f"phi {phi} has no table entry")


def mask_of(value, K: GradedSubmodule) -> int:
    return 0 if value is EMPTY else value.mask & K.mask


def same_value(a, b) -> bool:
    if a is EMPTY or b is EMPTY:
        return a is b
    return a.mask == b.mask


def zero_mask(M) -> int:
    return 1 << M.zero


# -- hierarchy and almost-chains -------------------------------------------------------


def law_T2_3(inst: Instance, ctx: LawContext):
    """Implications between the phi-variants of one submodule.

    (1) phi-prime ⇒ phi-2-absorbing ⇒ phi-2-absorbing primary;
    (2) in a multiplication module phi-primary ⇒ phi-2-absorbing primary;
    (3), (4) plain ⇒ weakly ⇒ omega ⇒ ... ⇒ (n+1)-almost ⇒ n-almost ⇒ ... ⇒ almost,
        for 2-absorbing and 2-absorbing primary (the power steps on
        multiplication modules only);
    (5) if Grad_M(K) = K, phi-2-absorbing primary ⇔ phi-2-absorbing;
    (6) an idempotent K of a multiplication module is omega- and n-almost for every n;
    (7) n-almost for every n ≥ 2 ⇔ omega, for both families.

    Weakened variant: the conclusion "weakly 2-absorbing" in (3) forgets the
    xy ∈ (K :_R M) escape.
    """
    M = inst.module
    mult = inst.multiplication
    zero = zero_mask(M)
    for K in inst.proper:
        k = kdesc(K)
        for phi in ctx.phi_list(inst):
            v = evaluate(phi, K)
            if isinstance(v, Skip):
                yield v
                continue
            ex = mask_of(v, K)
            p = {"K": k, "phi": str(phi)}
            yield implication("1", {**p, "step": "prime=>2-absorbing"},
                              holds("prime", K, ex), holds(TWO_ABS, K, ex))
            yield implication("1", {**p, "step": "2-absorbing=>2-absorbing-primary"},
                              holds(TWO_ABS, K, ex), holds(TWO_ABS_PRIMARY, K, ex))
            if mult:
                yield implication("2", p, holds("primary", K, ex), holds(TWO_ABS_PRIMARY, K, ex))
            else:
                yield Skip("part 2 needs a multiplication module")
            grad = graded_radical_submodule(K)
            yield implication("5", p, grad.mask == K.mask,
                              holds(TWO_ABS_PRIMARY, K, ex) == holds(TWO_ABS, K, ex))

        for fam, part in ((TWO_ABS, "3"), (TWO_ABS_PRIMARY, "4")):
            mutate = ctx.mutant and fam == TWO_ABS
            yield implication(part, {"K": k, "step": "plain=>weakly"}, holds(fam, K, 0),
                              holds(fam, K, zero, drop_colon=mutate))
        if not mult:
            yield Skip("almost-chain and idempotent parts need a multiplication module")
            continue
        chain = power_chain(K)
        top = len(chain) + 1  # K^n is constant from n = len(chain) on
        power = lambda n: chain[min(n, len(chain)) - 1].mask
        omega = chain[-1].mask
        steps = [("weakly", zero, "omega", omega), ("omega", omega, f"n:{top}", power(top))]
        steps += [(f"n:{n + 1}", power(n + 1), f"n:{n}", power(n)) for n in range(top - 1, 0, -1)]
        for fam, part in ((TWO_ABS, "3"), (TWO_ABS_PRIMARY, "4")):
            for a, ea, b, eb in steps:
                yield implication(part, {"K": k, "step": f"{a}=>{b}"},
                                  holds(fam, K, ea), holds(fam, K, eb))
        idempotent = submodule_power(K, 2).mask == K.mask
        for fam in (TWO_ABS, TWO_ABS_PRIMARY):
            for name, ex in [("omega", omega)] + [(f"n:{n}", power(n)) for n in range(2, top + 1)]:
                yield implication("6", {"K": k, "family": fam, "phi": name}, idempotent,
                                  holds(fam, K, ex))
            every_n = all(holds(fam, K, power(n)) for n in range(2, top + 1))
            yield equivalence("7", {"K": k, "family": fam, "n_max": top}, every_n,
                              holds(fam, K, omega))


# -- quotients by phi(K) ------------------------------------------------------------------

_T2_4_PARTS = {TWO_ABS: "1", TWO_ABS_PRIMARY: "2", "prime": "3", "primary": "4"}


def law_T2_4(inst: Instance, ctx: LawContext):
    """phi-X of K in M ⇔ weakly X of K/phi(K) in M/phi(K), for the four families X.

    The 2-absorbing primary part also checks Grad_M(K)/phi(K) = Grad_{M/phi(K)}(K/phi(K)).
    When phi(K) is the empty marker both sides coincide by definition and the
    check counts as vacuous.

    Weakened variant: the right-hand side uses plain X instead of weakly X.
    """
    M = inst.module
    for K in inst.proper:
        for phi in ctx.phi_list(inst):
            v = evaluate(phi, K)
            if isinstance(v, Skip):
                yield v
                continue
            p = {"K": kdesc(K), "phi": str(phi)}
            if v is EMPTY:
                for fam, part in _T2_4_PARTS.items():
                    yield implication(part, p, False, True)
                continue
            Q, proj = quotient_module(M, v)
            Kbar = image_submodule(proj, K)
            qzero = 0 if ctx.mutant else zero_mask(Q)
            ex = mask_of(v, K)
            for fam, part in _T2_4_PARTS.items():
                yield equivalence(part, p, holds(fam, K, ex), holds(fam, Kbar, qzero),
                                  {"quotient": Q.name})
            gbar = image_submodule(proj, graded_radical_submodule(K))
            gq = graded_radical_submodule(Kbar)
            yield identity("2", {**p, "identity": "Grad_M(K)/phi(K)=Grad(K/phi(K))"},
                           gbar.mask == gq.mask, {"left": kdesc(gbar), "right": kdesc(gq)})


# -- epimorphisms ------------------------------------------------------------------------------


def law_T2_9(inst: Instance, ctx: LawContext):
    """Transfer along the canonical projections f: M -> M/K0 (K0 ≠ M).

    (1) N phi'-2-absorbing primary in L and phi(f⁻¹N) = f⁻¹(phi'(N)) ⇒ f⁻¹N phi-2-absorbing primary;
    (2) K ⊇ Ker f phi-2-absorbing primary and phi'(f(K)) = f(phi(K)) ⇒ f(K) phi'-2-absorbing primary;
    (3), (4) the same for 2-absorbing;
    plus f⁻¹(Grad_L N) = Grad_M(f⁻¹N) and f(Grad_M K) = Grad_L(f(K)) for K ⊇ Ker f.

    Weakened variant: the phi-compatibility hypotheses are ignored.
    """
    M = inst.module
    phis_M = ctx.phi_list(inst)
    for K0 in inst.proper:
        L, f = quotient_module(M, K0)
        k0 = kdesc(K0)
        l_subs = [N for N in enumerate_graded_submodules(L) if N.is_proper]
        above = [K for K in inst.proper if K0 <= K]
        phis_L = phis_M if ctx.phis is not None or ctx.corpus.phis is not None else (
            default_phis(is_multiplication_module(L)[0]))
        for N in l_subs:
            pre = preimage_submodule(f, N)
            gl = preimage_submodule(f, graded_radical_submodule(N))
            gm = graded_radical_submodule(pre)
            yield identity("grad-preimage", {"K0": k0, "N": kdesc(N)}, gl.mask == gm.mask,
                           {"left": kdesc(gl), "right": kdesc(gm)})
        for K in above:
            img = image_submodule(f, K)
            gi = image_submodule(f, graded_radical_submodule(K))
            gl = graded_radical_submodule(img)
            yield identity("grad-image", {"K0": k0, "K": kdesc(K)}, gi.mask == gl.mask,
                           {"left": kdesc(gi), "right": kdesc(gl)})
        for phi in phis_M:
            for psi in phis_L:
                pp = {"K0": k0, "phi": str(phi), "phi_L": str(psi)}
                for N in l_subs:
                    pre = preimage_submodule(f, N)
                    a, b = evaluate(psi, N), evaluate(phi, pre)
                    if isinstance(a, Skip) or isinstance(b, Skip):
                        yield a if isinstance(a, Skip) else b
                        continue
                    back = EMPTY if a is EMPTY else preimage_submodule(f, a)
                    compatible = ctx.mutant or same_value(b, back)
                    for fam, part in ((TWO_ABS_PRIMARY, "1"), (TWO_ABS, "3")):
                        yield implication(part, {**pp, "N": kdesc(N)},
                                          compatible and holds(fam, N, mask_of(a, N)),
                                          holds(fam, pre, mask_of(b, pre)))
                for K in above:
                    img = image_submodule(f, K)
                    a, b = evaluate(phi, K), evaluate(psi, img)
                    if isinstance(a, Skip) or isinstance(b, Skip):
                        yield a if isinstance(a, Skip) else b
                        continue
                    fwd = EMPTY if a is EMPTY else image_submodule(f, a)
                    compatible = ctx.mutant or same_value(b, fwd)
                    for fam, part in ((TWO_ABS_PRIMARY, "2"), (TWO_ABS, "4")):
                        yield implication(part, {**pp, "K": kdesc(K)},
                                          compatible and holds(fam, K, mask_of(a, K)),
                                          holds(fam, img, mask_of(b, img)))


# -- localization ---------------------------------------------------------------------------------


def law_T2_11(inst: Instance, ctx: LawContext):
    """K phi-X and S⁻¹K ≠ S⁻¹M ⇒ S⁻¹K phi_S-X in S⁻¹M, for X = 2-absorbing primary (1), 2-absorbing (2).

    phi_S(S⁻¹K) = S⁻¹phi(K). Also checked: S⁻¹Grad_M(K) ⊆ Grad(S⁻¹K) and
    S⁻¹(K :_R M) ⊆ (S⁻¹K : S⁻¹M). S ranges over the multiplicative subsets of
    h(R) containing 1 (capped per ring).

    Weakened variant: the localized check ignores phi_S (uses the empty marker).
    """
    M = inst.module
    limit = ctx.mulset_limit
    sets = inst.mulsets(None if limit is None else limit + 1)
    if limit is not None and len(sets) > limit:
        sets = sets[:limit]
        yield Skip(f"multiplicative sets of {inst.ring.name} capped at {limit}")
    phis = ctx.phi_list(inst)
    for S in sets:
        try:
            loc = localize(M, S)
            SR, rclasses = localize_ring(S)
        except LocalizationError:
            yield Skip("localization has ambiguous fraction degrees")
            continue
        SM = loc.module
        s = str(S)
        for K in inst.proper:
            SK = localize_submodule(K, loc)
            p = {"S": s, "K": kdesc(K)}
            sg = localize_submodule(graded_radical_submodule(K), loc)
            yield identity("grad", p, sg <= graded_radical_submodule(SK),
                           {"localized": kdesc(sg)})
            col = colon_ideal(K)
            scol = bits.mask_of(np.unique(rclasses[col.members].reshape(-1)))
            lcol = colon_ideal(SK)
            yield identity("colon", p, scol & ~lcol.mask == 0)
            proper = SK.is_proper
            for phi in phis:
                v = evaluate(phi, K)
                if isinstance(v, Skip):
                    yield v
                    continue
                ex = mask_of(v, K)
                if proper:
                    vs = phi_S(phi, K, loc)
                    exs = 0 if ctx.mutant else mask_of(vs, SK)
                for fam, part in ((TWO_ABS_PRIMARY, "1"), (TWO_ABS, "2")):
                    pp = {**p, "phi": str(phi)}
                    if not proper:
                        yield implication(part, pp, False, True)
                        continue
                    yield implication(part, pp, holds(fam, K, ex), holds(fam, SK, exs),
                                      {"S^-1K": kdesc(SK), "phi_S": vdesc(vs),
                                       "localization": SM.name, "order": SM.order})


# -- direct products --------------------------------------------------------------------------------


def _second_factor_phis(M2):
    """The phi_2 choices on the second factor: identity at M2, zero and empty."""
    W = whole(M2)
    return [("identity", W), ("zero", GradedSubmodule(M2, zero_mask(M2))), ("empty", EMPTY)]


def law_products(inst: Instance, ctx: LawContext):
    """K = K1 × M2 in M = M1 × M2 with phi = phi1 × phi2.

    lemma: K phi-X ⇒ K1 phi1-X (X = 2-absorbing, 2-absorbing primary);
    T2.16(1)/T2.17(1): if phi2(M2) = M2, K phi-X ⇔ K1 phi1-X;
    T2.16(2)/T2.17(2): if phi2(M2) ≠ M2, K phi-X ⇔ K1 plain X.
    phi(K) is the empty marker as soon as either factor value is.

    Weakened variant: the (1) equivalences are asserted whatever phi2(M2) is.
    """
    fac = inst.factors
    if fac is None:
        return
    M = inst.module
    M1, M2 = fac
    mult1 = is_multiplication_module(M1)[0]
    phis1 = (default_phis(mult1) if ctx.phis is None and ctx.corpus.phis is None
             else ctx.phi_list(inst))
    W2 = whole(M2)
    for K1 in enumerate_graded_submodules(M1):
        if not K1.is_proper:
            continue
        K = product_submodule(M, K1, W2)
        for phi1 in phis1:
            v1 = evaluate(phi1, K1)
            if isinstance(v1, Skip):
                yield v1
                continue
            for name2, v2 in _second_factor_phis(M2):
                if v1 is EMPTY or v2 is EMPTY:
                    ex = 0
                else:
                    ex = product_submodule(M, v1, v2).mask & K.mask
                ex1 = mask_of(v1, K1)
                full2 = v2 is not EMPTY and v2.mask == W2.mask
                p = {"K1": kdesc(K1), "phi1": str(phi1), "phi2": name2}
                for fam, thm in ((TWO_ABS, "T2.16"), (TWO_ABS_PRIMARY, "T2.17")):
                    big = holds(fam, K, ex)
                    yield implication("lemma", {**p, "family": fam}, big, holds(fam, K1, ex1))
                    case1 = full2 or ctx.mutant
                    if case1:
                        yield equivalence(f"{thm}(1)", p, big, holds(fam, K1, ex1))
                    else:
                        yield implication(f"{thm}(1)", p, False, True)
                    if not full2:
                        yield equivalence(f"{thm}(2)", p, big, holds(fam, K1, 0))
                    else:
                        yield implication(f"{thm}(2)", p, False, True)


# -- g-local witness laws ---------------------------------------------------------------------


def _local_setup(K: GradedSubmodule, g: int, value):
    M = K.module
    R = M.ring
    e = R.group.identity
    Re = R.component_indices(e)
    Mg = M.component_indices(g)
    Kg = np.flatnonzero(K.bools & M.comp_bool[g])
    in_phi = bits.to_bool(mask_of(value, K), M.order)
    rc = np.flatnonzero(colon_ideal(K).bools & R.comp_bool[e])
    return R, M, Re, Mg, Kg, in_phi, rc


def _local_scopes(inst: Instance, ctx: LawContext):
    """(K, g, phi, phi(K)) for every proper K, every g with K_g ≠ M_g and every phi."""
    M = inst.module
    for K in inst.proper:
        for g in range(M.group.order):
            if M.components[g] & ~K.mask == 0:
                continue
            for phi in ctx.phi_list(inst):
                v = evaluate(phi, K)
                yield K, g, phi, v


def law_T2_20(inst: Instance, ctx: LawContext):
    """K g-phi-primary, x ∈ R_e, m ∈ M_g, xm ∈ phi(K), x ∉ Grad((K :_R M)), m ∉ K ⇒
    (1) xK_g ⊆ phi(K), (2) (K :_{R_e} M)m ⊆ phi(K), (3) (K :_{R_e} M)K_g ⊆ phi(K).

    Weakened variant: the witness condition m ∉ K is dropped.
    """
    for K, g, phi, v in _local_scopes(inst, ctx):
        if isinstance(v, Skip):
            yield v
            continue
        R, M, Re, Mg, Kg, in_phi, rc = _local_setup(K, g, v)
        p = {"K": kdesc(K), "g": M.group.labels[g], "phi": str(phi)}
        hyp = holds("primary", K, mask_of(v, K), g)
        grad = graded_radical_ideal(colon_ideal(K)).bools
        xm = M.act_table[np.ix_(Re, Mg)]
        wit = in_phi[xm] & ~grad[Re][:, None]
        if not ctx.mutant:
            wit &= ~K.bools[Mg][None, :]
        pairs = np.argwhere(wit)
        ok1 = in_phi[M.act_table[np.ix_(Re, Kg)]].all(axis=1)
        ok2 = in_phi[M.act_table[np.ix_(rc, Mg)]].all(axis=0)
        ok3 = bool(in_phi[M.act_table[np.ix_(rc, Kg)]].all())
        checks = {"1": lambda i, j: ok1[i], "2": lambda i, j: ok2[j], "3": lambda i, j: ok3}
        for part, ok in checks.items():
            bad = next(((i, j) for i, j in pairs if not ok(i, j)), None)
            data = {} if bad is None else {
                "x": R.labels[Re[bad[0]]], "m": M.labels[Mg[bad[1]]]}
            yield implication(part, p, hyp and len(pairs) > 0, bad is None, data)


def _triple_law(inst: Instance, ctx: LawContext, family: str):
    for K, g, phi, v in _local_scopes(inst, ctx):
        if isinstance(v, Skip):
            yield v
            continue
        R, M, Re, Mg, Kg, in_phi, rc = _local_setup(K, g, v)
        p = {"K": kdesc(K), "g": M.group.labels[g], "phi": str(phi)}
        hyp = holds(family, K, mask_of(v, K), g)
        T = K if family == TWO_ABS else graded_radical_submodule(K)
        in_t = T.bools
        colon = colon_ideal(K).bools
        xy = R.mul_table[np.ix_(Re, Re)]
        xym = M.act_table[xy][:, :, Mg]
        xm = M.act_table[np.ix_(Re, Mg)]
        wit = in_phi[xym] & ~colon[xy][:, :, None]
        if not ctx.mutant:
            wit &= ~in_t[xm][:, None, :] & ~in_t[xm][None, :, :]
        triples = np.argwhere(wit)
        # ok1[z]: z K_g ⊆ phi(K); okx[x, m]: x (K:_{R_e}M) m ⊆ phi(K); ok4[m]: (K:_{R_e}M)^2 m ⊆ phi(K)
        ok1 = in_phi[M.act_table[:, Kg]].all(axis=1)
        xa = R.mul_table[np.ix_(Re, rc)]
        okx = in_phi[M.act_table[xa][:, :, Mg]].all(axis=1)
        ab = R.mul_table[np.ix_(rc, rc)].reshape(-1)
        ok4 = in_phi[M.act_table[np.ix_(ab, Mg)]].all(axis=0)
        checks = {
            "1": lambda i, j, k: ok1[xy[i, j]],
            "2": lambda i, j, k: okx[i, k],
            "3": lambda i, j, k: okx[j, k],
            "4": lambda i, j, k: ok4[k],
        }
        for part, ok in checks.items():
            bad = next(((i, j, k) for i, j, k in triples if not ok(i, j, k)), None)
            data = {} if bad is None else {
                "x": R.labels[Re[bad[0]]], "y": R.labels[Re[bad[1]]], "m": M.labels[Mg[bad[2]]]}
            yield implication(part, p, hyp and len(triples) > 0, bad is None, data)


def law_T2_24(inst: Instance, ctx: LawContext):
    """K g-phi-2-absorbing, x, y ∈ R_e, m ∈ M_g, xym ∈ phi(K), xy ∉ (K :_R M), xm ∉ K, ym ∉ K ⇒
    (1) xyK_g ⊆ phi(K), (2) x(K :_{R_e} M)m ⊆ phi(K), (3) y(K :_{R_e} M)m ⊆ phi(K),
    (4) (K :_{R_e} M)²m ⊆ phi(K).

    Weakened variant: the witness conditions xm ∉ K and ym ∉ K are dropped.
    """
    yield from _triple_law(inst, ctx, TWO_ABS)


def law_T2_24_primary(inst: Instance, ctx: LawContext):
    """The 2-absorbing primary analogue: K g-phi-2-absorbing primary and xm, ym ∉ Grad_M(K).

    Weakened variant: the witness conditions xm, ym ∉ Grad_M(K) are dropped.
    """
    yield from _triple_law(inst, ctx, TWO_ABS_PRIMARY)


def law_T2_25(inst: Instance, ctx: LawContext):
    """K g-phi-2-absorbing primary but not g-2-absorbing primary ⇒ (K :_{R_e} M)²K_g ⊆ phi(K).

    Weakened variant: the hypothesis "not g-2-absorbing primary" is dropped.
    """
    for K, g, phi, v in _local_scopes(inst, ctx):
        if isinstance(v, Skip):
            yield v
            continue
        R, M, Re, Mg, Kg, in_phi, rc = _local_setup(K, g, v)
        p = {"K": kdesc(K), "g": M.group.labels[g], "phi": str(phi)}
        hyp = holds(TWO_ABS_PRIMARY, K, mask_of(v, K), g)
        if not ctx.mutant:
            hyp = hyp and not holds(TWO_ABS_PRIMARY, K, 0, g)
        ab = R.mul_table[np.ix_(rc, rc)].reshape(-1)
        prods = M.act_table[np.ix_(ab, Kg)]
        ok = in_phi[prods].all()
        data = {}
        if not ok:
            a, k = np.argwhere(~in_phi[prods])[0]
            data = {"ab": R.labels[ab[a]], "k": M.labels[Kg[k]]}
        yield implication("1", p, hyp, bool(ok), data)


# -- phi(K) and Grad_M(K) hypotheses -----------------------------------------------------------


def law_P2_34(inst: Instance, ctx: LawContext):
    """K phi-2-absorbing primary and phi(K) 2-absorbing primary ⇒ K 2-absorbing primary.

    The empty marker is not a submodule, so phi(K) = ∅ is vacuous.
    Weakened variant: the hypothesis on phi(K) is dropped.
    """
    for K in inst.proper:
        for phi in ctx.phi_list(inst):
            v = evaluate(phi, K)
            if isinstance(v, Skip):
                yield v
                continue
            p = {"K": kdesc(K), "phi": str(phi)}
            if v is EMPTY:
                yield implication("1", p, False, True)
                continue
            hyp = holds(TWO_ABS_PRIMARY, K, mask_of(v, K))
            if not ctx.mutant:
                hyp = hyp and holds(TWO_ABS_PRIMARY, v, 0)
            yield implication("1", p, hyp, holds(TWO_ABS_PRIMARY, K, 0), {"phi(K)": vdesc(v)})


def law_T2_39(inst: Instance, ctx: LawContext):
    """phi(Grad_M(K)) ⊆ phi(K) and Grad_M(K) phi-prime ⇒ K phi-2-absorbing primary.

    Instances with Grad_M(K) = M are skipped: phi-prime is undefined there.
    Weakened variant: the hypothesis "Grad_M(K) is phi-prime" is dropped.
    (Dropping the containment instead yields no counterexample on the default corpus.)
    """
    for K in inst.proper:
        G = graded_radical_submodule(K)
        if not G.is_proper:
            yield Skip("Grad_M(K) = M")
            continue
        for phi in ctx.phi_list(inst):
            v, w = evaluate(phi, K), evaluate(phi, G)
            if isinstance(v, Skip) or isinstance(w, Skip):
                yield v if isinstance(v, Skip) else w
                continue
            p = {"K": kdesc(K), "phi": str(phi)}
            hyp = phi_subset(w, v)
            if not ctx.mutant:
                hyp = hyp and holds("prime", G, mask_of(w, G))
            yield implication("1", p, hyp, holds(TWO_ABS_PRIMARY, K, mask_of(v, K)),
                              {"Grad_M(K)": kdesc(G), "phi(Grad)": vdesc(w), "phi(K)": vdesc(v)})


# -- registry and runner ----------------------------------------------------------------------

LAWS = {
    "T2.3": law_T2_3,
    "T2.4": law_T2_4,
    "T2.9": law_T2_9,
    "T2.11": law_T2_11,
    "products": law_products,
    "T2.20": law_T2_20,
    "T2.24": law_T2_24,
    "T2.24-primary": law_T2_24_primary,
    "T2.25": law_T2_25,
    "P2.34": law_P2_34,
    "T2.39": law_T2_39,
}

ALIASES = {"lemma": "products", "T2.16": "products", "T2.17": "products",
           "T2.24(1)": "T2.24-primary"}


def resolve_laws(spec: str) -> list[str]:
    """``all`` or a comma-separated list of law ids (aliases allowed)."""
    if spec.strip() == "all":
        return list(LAWS)
    out = []
    for item in spec.split(","):
        item = item.strip()
        item = ALIASES.get(item, item)
        if item not in LAWS:
            raise KeyError(f"unknown law {item!r}; known: {', '.join(LAWS)}")
        if item not in out:
            out.append(item)
    return out


def run_law(law: str, corpus: Corpus, *, phis: list[str] | None = None, mutant: bool = False,
            max_order: int | None = None, mulset_limit: int | None = DEFAULT_MULSET_LIMIT,
            example_limit: int = 5, timing: bool = False) -> LawResult:
    fn = LAWS[ALIASES.get(law, law)]
    ctx = LawContext(corpus, phis, mutant, mulset_limit)
    result = LawResult(ALIASES.get(law, law), mutant)
    start = time.perf_counter()
    for inst in corpus:
        if max_order is not None and inst.order > max_order:
            result.add(Skip(f"|M| > max-order {max_order}"), inst, example_limit)
            continue
        touched = False
        for item in fn(inst, ctx):
            touched = True
            result.add(item, inst, example_limit)
        result.instances += touched
    if result.instances == 0:
        result.notes.append("no instances: vacuous pass")
    if timing:
        result.runtime = time.perf_counter() - start
    return result


def replay(law: str, corpus: Corpus, counterexample: dict, *, phis: list[str] | None = None,
           mutant: bool = False, mulset_limit: int | None = DEFAULT_MULSET_LIMIT) -> bool:
    """Re-run the law on the recorded instance and confirm the same violation recurs."""
    fn = LAWS[ALIASES.get(law, law)]
    ctx = LawContext(corpus, phis, mutant, mulset_limit)
    inst = corpus.get(counterexample["instance"])
    for item in fn(inst, ctx):
        if isinstance(item, Skip) or item.status != "violated":
            continue
        if (item.part == counterexample["part"] and item.params == counterexample["params"]
                and item.data == counterexample["data"]):
            return True
    return False
