import json

from gradedphi.predicates import PredicateSpec
from gradedphi.suite.search import search_separating_example, verify_separation

P = PredicateSpec.parse


def test_weakly_prime_not_prime(corpus):
    r = search_separating_example(P("weakly-prime"), P("prime"), corpus)
    s = r.first
    assert (s.instance, s.submodule, s.witness) == ("Z4", ["0"], ["2", "2"])
    assert verify_separation(P("weakly-prime"), P("prime"), corpus, s)


def test_2_absorbing_primary_not_2_absorbing(corpus):
    a, b = P("2-absorbing-primary"), P("2-absorbing")
    r = search_separating_example(a, b, corpus, find_all=True)
    hits = {(s.instance, tuple(s.submodule)) for s in r.found}
    assert ("Z16", ("0", "8")) in hits
    # the smallest separating instance comes first
    assert r.first.order == min(s.order for s in r.found)
    assert all(verify_separation(a, b, corpus, s) for s in r.found)


def test_weakly_2_absorbing_not_2_absorbing(corpus):
    a, b = P("weakly-2-absorbing"), P("2-absorbing")
    r = search_separating_example(a, b, corpus, max_order=32)
    assert r.first is not None and r.first.order <= 32
    assert verify_separation(a, b, corpus, r.first)


def test_not_found(corpus):
    r = search_separating_example(P("prime"), P("weakly-prime"), corpus)
    assert r.first is None
    assert r.to_dict()["status"] == "not-found"
    assert r.instances == len(corpus)


def test_instance_filter_and_bound(corpus):
    r = search_separating_example(P("2-absorbing-primary"), P("2-absorbing"), corpus,
                                  instance="Z16")
    assert r.instances == 1 and r.first.instance == "Z16"
    r = search_separating_example(P("weakly-prime"), P("prime"), corpus, max_order=3)
    assert r.first is None


def test_verify_rejects_tampered_witness(corpus):
    a, b = P("weakly-prime"), P("prime")
    s = search_separating_example(a, b, corpus).first
    s.witness = ["1", "1"]
    assert not verify_separation(a, b, corpus, s)


def test_json_is_deterministic(corpus):
    a, b = P("2-absorbing-primary"), P("2-absorbing")
    one = search_separating_example(a, b, corpus, find_all=True).to_json()
    two = search_separating_example(a, b, corpus, find_all=True).to_json()
    assert one == two
    assert json.loads(one)["status"] == "found"
