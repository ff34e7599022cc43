import numpy as np
import pytest

from gradedphi.constructions import (
    GradedHom,
    MultiplicativeSet,
    direct_product,
    image_submodule,
    localize,
    localize_submodule,
    multiplicative_sets,
    phi_S,
    preimage_submodule,
    product_submodule,
    quotient_module,
    split_submodule,
    zero_module,
)
from gradedphi.core import (
    enumerate_graded_submodules,
    gaussian,
    submodule,
    validate,
    whole,
    zero_submodule,
    zn,
)
from gradedphi.errors import AxiomViolation, MalformedStructure
from gradedphi.phi import EMPTY, PhiFunction

from . import oracles


def sub(M, *labels):
    return submodule(M, [str(x) for x in labels])


Z8 = zn(8).self_module


def test_quotient_examples():
    Q, pi = quotient_module(Z8, sub(Z8, 0, 4))
    assert Q.order == 4 and validate(Q).ok
    assert pi.kernel.labels == ["0", "4"]
    assert pi.is_surjective
    Q0, _ = quotient_module(Z8, sub(Z8, 0))
    assert Q0.order == 8
    Qm, _ = quotient_module(Z8, whole(Z8))
    assert Qm.order == 1


def test_quotient_grading_valid_on_corpus(corpus):
    for inst in corpus:
        if inst.order > 16:
            continue
        for K in inst.submodules:
            Q, pi = quotient_module(inst.module, K)
            assert validate(Q).ok
            assert pi.validate().ok


def test_preimage_and_image():
    Q, pi = quotient_module(Z8, sub(Z8, 0, 4))
    assert preimage_submodule(pi, zero_submodule(Q)).labels == ["0", "4"]
    assert preimage_submodule(pi, whole(Q)).labels == whole(Z8).labels
    assert image_submodule(pi, sub(Z8, 0, 2, 4, 6)).labels == ["[0]", "[2]"]
    assert image_submodule(pi, sub(Z8, 0)).labels == ["[0]"]
    ident = GradedHom.identity(Z8)
    K = sub(Z8, 0, 2, 4, 6)
    assert image_submodule(ident, K).mask == K.mask
    assert preimage_submodule(ident, sub(Z8, 0)).labels == ["0"]


def test_hom_from_generators():
    Z4 = zn(4).self_module
    with pytest.raises(MalformedStructure):
        GradedHom.from_generators(Z8, zn(4).self_module, {"1": "1"})  # different rings
    f = GradedHom.from_generators(Z4, Z4, {"1": "2"})
    assert f.kernel.labels == ["0", "2"]
    with pytest.raises(MalformedStructure):
        GradedHom.from_generators(Z4, Z4, {"2": "1"})


def test_hom_validation_axioms():
    Z4 = zn(4).self_module
    with pytest.raises(AxiomViolation) as info:
        GradedHom(Z4, Z4, [0, 1, 1, 1])
    assert info.value.report.axiom == "additive"
    A = gaussian(2).self_module
    swap = [A.element(x) for x in ("0", "i", "1", "1+i")]
    rep = GradedHom(A, A, swap, check=False).validate()
    assert rep.axiom in ("linear", "degree-preserving")


def test_direct_products():
    Z2 = zn(2).self_module
    P = direct_product(Z2, Z2)
    assert P.order == 4 and validate(P).ok
    Z6 = direct_product(zn(2).self_module, zn(3).self_module)
    subs = enumerate_graded_submodules(Z6)
    assert len(subs) == 4
    for K in subs:
        K1, K2 = split_submodule(Z6, K)
        assert product_submodule(Z6, K1, K2).mask == K.mask
    Z0 = direct_product(Z2, zero_module(zn(2)))
    assert Z0.order == 2 and validate(Z0).ok


def test_multiplicative_sets():
    R = zn(6)
    sets = multiplicative_sets(R)
    assert all(1 in S.members for S in sets)
    assert MultiplicativeSet.generated(R, ["3"]).labels == ["1", "3"]
    A = gaussian(2)
    with pytest.raises(MalformedStructure):
        MultiplicativeSet.generated(A, ["1+i"])
    assert len(multiplicative_sets(zn(16), 3)) == 3


def test_localize_identity_set():
    S = MultiplicativeSet.generated(Z8.ring, [])
    loc = localize(Z8, S)
    assert loc.module.order == 8
    K = sub(Z8, 0, 4)
    assert localize_submodule(K, loc).size == 2


def test_localize_z6_at_3():
    R = zn(6)
    M = R.self_module
    S = MultiplicativeSet.generated(R, ["3"])
    loc = localize(M, S)
    # Z6 = Z2 x Z3 and 3 kills the Z3 factor, so only Z2 survives
    assert loc.module.order == 2 == oracles.localization_order(M, S.members)
    assert localize_submodule(sub(M, 0, 2, 4), loc).size == 1
    assert localize_submodule(sub(M, 0, 3), loc).size == 2


def test_localize_nilpotent_collapses():
    S = MultiplicativeSet.generated(Z8.ring, ["2"])
    assert localize(Z8, S).module.order == 1


def test_phi_S():
    R = zn(12)
    M = R.self_module
    S = MultiplicativeSet.generated(R, ["5"])
    loc = localize(M, S)
    K = sub(M, 0, 4, 8)
    assert phi_S(PhiFunction.empty(), K, loc) is EMPTY
    assert phi_S(PhiFunction.zero(), K, loc).size == 1


@pytest.mark.parametrize("build", [lambda: zn(12).self_module, lambda: gaussian(2).self_module,
                                   lambda: gaussian(3).self_module,
                                   lambda: direct_product(zn(2).self_module, zn(4).self_module)])
def test_localization_matches_oracle(build):
    M = build()
    for S in multiplicative_sets(M.ring):
        loc = localize(M, S)
        assert loc.module.order == oracles.localization_order(M, S.members), S.labels
        for K in enumerate_graded_submodules(M):
            assert localize_submodule(K, loc).size == oracles.localized_members(
                M, S.members, set(K.members))
