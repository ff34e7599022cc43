import numpy as np
import pytest

from gradedphi.core import (
    FiniteGroup,
    GradedModule,
    GradedRing,
    colon_ideal,
    decompose,
    enumerate_graded_submodules,
    free_module,
    gaussian,
    graded_closure,
    graded_prime_submodules,
    graded_radical_ideal,
    graded_radical_submodule,
    homogeneous_elements,
    ideal_times,
    is_multiplication_module,
    poly,
    product_ring,
    submodule,
    ungraded_radical,
    validate,
    whole,
    zn,
)
from gradedphi.errors import AxiomViolation, BoundExceeded, MalformedStructure

from . import oracles

C2 = FiniteGroup.cyclic(2)
Z4 = zn(4)
N = np.arange(4)


def ring_report(add=None, mul=None, zero=0, one=1, group=None, comps=None):
    add = Z4.add_table if add is None else add
    mul = Z4.mul_table if mul is None else mul
    group = group or Z4.group
    comps = comps if comps is not None else Z4.components
    return GradedRing(Z4.labels, add, mul, zero, one, group, comps, check=False).validate()


@pytest.mark.parametrize("kwargs, axiom", [
    (dict(add=np.tile(N[:, None], (1, 4))), "additive-commutativity"),
    (dict(add=np.maximum.outer(N, N)), "additive-inverse"),
    (dict(zero=1), "additive-identity"),
    (dict(mul=np.tile(N[:, None], (1, 4))), "multiplicative-commutativity"),
    (dict(one=3), "multiplicative-identity"),
    (dict(group=C2, comps=[0b0101, 0b0101]), "direct-sum"),
    (dict(group=C2, comps=[0b0111, 0b0001]), "component-subgroup"),
    (dict(group=C2, comps=[0b0001, 0b1111]), "component-product"),
])
def test_ring_axioms_named(kwargs, axiom):
    report = ring_report(**kwargs)
    assert not report.ok
    assert report.axiom == axiom
    assert report.witness


def test_additive_associativity():
    a = Z4.add_table.copy()
    a[1, 1], a[3, 3] = 3, 1
    assert ring_report(add=a).axiom == "additive-associativity"


def test_multiplicative_associativity():
    m = Z4.mul_table.copy()
    m[2, 3] = m[3, 2] = 0
    assert ring_report(mul=m).axiom == "multiplicative-associativity"


def test_distributivity():
    m = Z4.mul_table.copy()
    m[2, 2] = 2
    assert ring_report(mul=m).axiom == "distributivity"


def test_one_nonzero():
    report = GradedRing(["0"], [[0]], [[0]], 0, 0, Z4.group, [1], check=False).validate()
    assert report.axiom == "one-nonzero"


def test_constructor_raises_axiom_violation():
    with pytest.raises(AxiomViolation) as info:
        GradedRing(Z4.labels, Z4.add_table, Z4.mul_table, 0, 3, Z4.group, Z4.components)
    assert info.value.report.axiom == "multiplicative-identity"


def test_malformed_tables():
    with pytest.raises(MalformedStructure):
        GradedRing(Z4.labels, Z4.add_table[:3], Z4.mul_table, 0, 1, Z4.group, Z4.components)
    bad = Z4.add_table.copy()
    bad[0, 0] = 9
    with pytest.raises(MalformedStructure):
        GradedRing(Z4.labels, bad, Z4.mul_table, 0, 1, Z4.group, Z4.components)


# -- modules over the dual numbers Z2[x]/(x^2): elements 0, 1, x, 1+x ---------------------

D = poly(2, 2, 0)


def module_report(f):
    """The additive group of D with x acting by ``f``."""
    act = np.array([[0, 0, 0, 0], [0, 1, 2, 3], f, [D.add(m, f[m]) for m in range(4)]])
    M = GradedModule(D, D.labels, D.add_table, act, 0, D.components, check=False)
    return M.validate()


def test_dual_numbers_labels():
    assert D.labels == ("0", "1", "x", "1+x")


def test_module_distributivity():
    assert module_report([0, 1, 0, 0]).axiom == "action-module-distributivity"


def test_action_associativity():
    assert module_report([0, 1, 2, 3]).axiom == "action-associativity"


def test_action_unital_and_ring_distributivity():
    M = Z4.self_module
    act = M.act_table.copy()
    act[1, 1] = 3
    rep = GradedModule(Z4, M.labels, M.add_table, act, 0, M.components, check=False).validate()
    assert rep.axiom == "action-unital"
    act = M.act_table.copy()
    act[2] = 0
    rep = GradedModule(Z4, M.labels, M.add_table, act, 0, M.components, check=False).validate()
    assert rep.axiom == "action-ring-distributivity"


def test_module_component_product():
    A = gaussian(2)
    M = A.self_module
    rep = GradedModule(A, M.labels, M.add_table, M.act_table, 0, [M.full_mask, 1],
                       check=False).validate()
    assert rep.axiom == "component-product"


def test_group_validation():
    assert C2.validate().ok
    bad = FiniteGroup(["e", "a"], [[0, 1], [1, 1]], check=False)
    assert bad.validate().axiom == "inverse"


def test_from_tables_labels():
    pairs = [(a, b) for a in "01" for b in "01"]
    add = {(a, b): str((int(a) + int(b)) % 2) for a, b in pairs}
    mul = {(a, b): str(int(a) * int(b)) for a, b in pairs}
    R = GradedRing.from_tables(["0", "1"], add, mul, "0", "1", C2,
                               {"0": ["0", "1"], "1": ["0"]}, name="F2")
    assert validate(R).ok


# -- decomposition and homogeneity ----------------------------------------------------------


def test_gaussian_decomposition():
    A = gaussian(2)
    assert homogeneous_elements(A) == ["0", "1", "i"]
    assert decompose("1+i", A) == {"0": "1", "1": "i"}
    for x in range(A.order):
        comps = oracles.decompose(A, x)
        assert [int(A.decomposition[x, g]) for g in range(2)] == list(comps)


def test_product_ring_grading():
    R = product_ring(gaussian(2), zn(2, C2))
    assert validate(R).ok
    assert R.order == 8


@pytest.mark.parametrize("build", [lambda: zn(12).self_module, lambda: gaussian(2).self_module,
                                   lambda: gaussian(3).self_module,
                                   lambda: free_module(zn(2), 2),
                                   lambda: product_ring(zn(2), zn(3)).self_module,
                                   lambda: free_module(gaussian(2), 1)])
def test_enumeration_matches_oracle(build):
    M = build()
    got = {frozenset(K.members) for K in enumerate_graded_submodules(M)}
    assert got == set(oracles.graded_submodules(M))


def test_enumeration_bound():
    with pytest.raises(BoundExceeded):
        enumerate_graded_submodules(zn(16).self_module, bound=8)


def test_closure_and_colon():
    Z16 = zn(16)
    K = graded_closure(["8"], Z16.self_module)
    assert K.labels == ["0", "8"]
    assert colon_ideal(K).labels == ["0", "8"]
    A = gaussian(4)
    K = graded_closure(["1+i"], A.self_module)
    # the graded closure contains both homogeneous components
    assert "1" in K.labels and "i" in K.labels


def test_submodule_rejects_ungraded_set():
    A = gaussian(2)
    with pytest.raises(AxiomViolation):
        submodule(A.self_module, ["0", "1+i"])


def test_radical_against_oracle(corpus):
    for inst in corpus:
        if not inst.module.is_self_module:
            continue
        R = inst.ring
        for I in inst.submodules:
            assert set(graded_radical_ideal(I).members) == oracles.graded_radical(R, set(I.members))


def test_gaussian_radical_divergence():
    A = gaussian(2)
    zero = submodule(A.self_module, ["0"])
    assert graded_radical_ideal(zero).labels == ["0"]
    assert ungraded_radical(zero).labels == ["0", "1+i"]


def test_grad_M_against_oracle():
    for M in (zn(12).self_module, gaussian(2).self_module, free_module(zn(2), 2)):
        subs = oracles.graded_submodules(M)
        for K in enumerate_graded_submodules(M):
            assert set(graded_radical_submodule(K).members) == oracles.grad_M(M, set(K.members), subs)


def test_grad_M_without_primes_is_whole():
    M = zn(2).self_module
    primes = graded_prime_submodules(M)
    assert [P.labels for P in primes] == [["0"]]
    assert graded_radical_submodule(whole(M)).mask == M.full_mask


def test_multiplication_modules():
    assert is_multiplication_module(zn(12).self_module)[0]
    ok, cert = is_multiplication_module(free_module(zn(2), 2))
    assert not ok
    assert cert.labels == ["(0,0)", "(1,0)"]
    assert ideal_times(colon_ideal(cert), whole(cert.module)).labels == ["(0,0)"]


def test_submodule_lattice_operations():
    M = zn(12).self_module
    a = submodule(M, ["0", "4", "8"])
    b = submodule(M, ["0", "6"])
    assert (a & b).labels == ["0"]
    assert (a + b).labels == ["0", "2", "4", "6", "8", "10"]
    assert (a & b) <= a and not a <= b
