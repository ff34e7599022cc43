import pytest

from gradedphi.core import enumerate_graded_submodules, free_module, submodule, zn
from gradedphi.errors import NotMultiplicationModule, TableMiss
from gradedphi.phi import (
    EMPTY,
    PhiFunction,
    apply_phi,
    default_phis,
    excluded_mask,
    load_phi_table,
    parse_phi,
    phi_leq,
    phi_subset,
)
from gradedphi.core.lattice import submodule_power

from . import oracles

Z8 = zn(8).self_module


def sub(M, *labels):
    return submodule(M, [str(x) for x in labels])


def test_empty_marker():
    assert EMPTY is type(EMPTY)()
    assert not EMPTY
    K = sub(Z8, 0, 4)
    assert apply_phi(PhiFunction.empty(), K) is EMPTY
    assert excluded_mask(PhiFunction.empty(), K) == 0


def test_zero_and_powers():
    K = sub(Z8, 0, 2, 4, 6)
    assert PhiFunction.zero()(K).labels == ["0"]
    assert PhiFunction.power(1)(K).labels == K.labels
    assert PhiFunction.power(2)(K).labels == ["0", "4"]
    assert submodule_power(K, 3).labels == ["0"]
    assert PhiFunction.omega()(K).labels == ["0"]


def test_omega_of_idempotent():
    M = zn(6).self_module
    K = sub(M, 0, 3)
    assert PhiFunction.power(2)(K).mask == K.mask
    assert PhiFunction.omega()(K).mask == K.mask


def test_power_against_oracle():
    for n in (8, 12, 16):
        M = zn(n).self_module
        for K in enumerate_graded_submodules(M):
            for k in (1, 2, 3):
                assert set(PhiFunction.power(k)(K).members) == oracles.submodule_power(
                    M, set(K.members), k)


def test_chain_on_multiplication_modules(corpus):
    chain = [PhiFunction.empty(), PhiFunction.zero(), PhiFunction.omega()] + [
        PhiFunction.power(n) for n in (5, 4, 3, 2, 1)]
    for inst in corpus:
        for lo, hi in zip(chain, chain[1:]):
            ok, witness = phi_leq(lo, hi, inst.module)
            assert ok, (inst.name, str(lo), str(hi), witness)


def test_phi1_not_below_phi2():
    ok, witness = phi_leq(PhiFunction.power(1), PhiFunction.power(2), Z8)
    assert not ok
    assert not PhiFunction.power(1)(witness) <= PhiFunction.power(2)(witness)
    K = sub(Z8, 0, 2, 4, 6)
    assert PhiFunction.power(2)(K) < PhiFunction.power(1)(K)


def test_phi_subset_empty():
    K = sub(Z8, 0)
    assert phi_subset(EMPTY, K)
    assert not phi_subset(K, EMPTY)


def test_powers_need_multiplication_module():
    M = free_module(zn(2), 2)
    K = submodule(M, ["(0,0)"])
    with pytest.raises(NotMultiplicationModule):
        PhiFunction.power(2)(K)
    assert PhiFunction.zero()(K).labels == ["(0,0)"]
    assert [str(p) for p in default_phis(False)] == ["empty", "zero"]
    assert [str(p) for p in default_phis(True)] == ["empty", "zero", "n:2", "n:3", "omega"]


def test_parse_phi():
    assert parse_phi("empty").label == "empty"
    assert parse_phi("0").label == "zero"
    assert parse_phi("n:4").n == 4
    assert parse_phi("omega").label == "omega"
    with pytest.raises(ValueError):
        parse_phi("n:0")
    with pytest.raises(ValueError):
        parse_phi("bogus")
    with pytest.raises(ValueError):
        parse_phi("table:x.json")


def test_table_phi(tmp_path):
    path = tmp_path / "phi.json"
    path.write_text('{"entries": [{"submodule": ["0", "4"], "phi": ["0", "4"]},'
                    ' {"submodule": ["0"], "phi": null}]}')
    phi = load_phi_table(path, Z8)
    assert phi(sub(Z8, 0, 4)).labels == ["0", "4"]
    assert phi(sub(Z8, 0)) is EMPTY
    with pytest.raises(TableMiss):
        phi(sub(Z8, 0, 2, 4, 6))
    assert parse_phi(f"table:{path}", Z8).table == phi.table


def test_table_values_intersected_with_K():
    K = sub(Z8, 0, 4)
    phi = PhiFunction.from_table({K: sub(Z8, 0, 2, 4, 6)})
    assert phi(K).labels == ["0", "4"]
