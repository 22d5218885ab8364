import random

import pytest

from common import SEED, random_distributor, small_categories
from oracles import brute_sieves, lext_sizes
from sitecalc import fixtures as fx
from sitecalc.distributor import classifier, representables
from sitecalc.errors import BaseMismatch, CapExceeded, ShapeMismatch, TargetMismatch
from sitecalc.fincat import FinCategory, op
from sitecalc.presheaf import (Presheaf, PresheafMorphism, Sieve, all_sieves, coequalizer, colimit, compose_morphisms,
                               coproduct, count_nat, equalizer, find_iso, identity_morphism, image_factorization,
                               initial, is_isomorphic, lan, limit, nat_hom, product, pullback, pullback_sieve,
                               quotient, ran, restrict, sieve_inclusion, sieve_presheaf, terminal, transport_along,
                               validate, yoneda)


def random_presheaves(cat, n, seed=SEED):
    rng = random.Random(seed)
    return [classifier(random_distributor(rng, fx.ONE, cat, max_per_pair=3), "*") for _ in range(n)]


def test_x0_validates():
    assert validate(fx.X0).ok
    assert fx.X0.size() == {"U": 2, "V": 1, "W": 1}


@pytest.mark.parametrize("cat", small_categories(), ids=lambda c: c.name)
def test_sieves_match_powerset_scan(cat):
    for c in cat.objects:
        assert {s.arrows for s in all_sieves(cat, c)} == set(brute_sieves(cat, c))
        for s in all_sieves(cat, c):
            assert validate(s).ok


def test_sieve_counts_frozen():
    # COSPAN: 2 on U, 2 on V, 5 on W
    assert sum(len(all_sieves(fx.COSPAN, c)) for c in fx.COSPAN.objects) == 9
    assert [s.render() for s in all_sieves(fx.SPLIT, "B")] == ["B<={}", "B<={e id_B s}", "B<={e s}"]


def test_sieve_closure_violation():
    rep = validate(Sieve(fx.COSPAN, "W", frozenset({"id_W"})))
    assert [(v.law, v.witness) for v in rep] == [("sieve-closure", ("id_W", "i")), ("sieve-closure", ("id_W", "j"))]


def test_generated_sieve_and_pullback():
    s = Sieve.generated(fx.SPLIT, "B", ["s"])
    assert s.arrows == {"s", "e"}
    assert pullback_sieve(s, "s").is_maximal()
    assert pullback_sieve(Sieve.generated(fx.COSPAN, "W", ["i"]), "j").arrows == frozenset()
    with pytest.raises(TargetMismatch):
        Sieve.generated(fx.COSPAN, "W", ["id_U"])


def test_sieve_enumeration_cap():
    with pytest.raises(CapExceeded):
        fan = FinCategory.build(["a", "b", "c", "z"], [("f", "a", "z"), ("g", "b", "z"), ("h", "c", "z")])
        all_sieves(fan, "z", limit=3)


@pytest.mark.parametrize("cat", small_categories(), ids=lambda c: c.name)
def test_yoneda_lemma_counts(cat):
    for x in random_presheaves(cat, 4):
        for c in cat.objects:
            assert count_nat(yoneda(cat, c), x) == len(x.at(c))


@pytest.mark.parametrize("cat", [fx.COSPAN, fx.SPLIT, op(fx.ARROW)], ids=lambda c: c.name)
def test_limit_and_colimit_universal_counts(cat):
    xs = random_presheaves(cat, 3)
    z = random_presheaves(cat, 1, seed=SEED + 1)[0]
    p, _ = product(xs[0], xs[1])
    assert count_nat(z, p) == count_nat(z, xs[0]) * count_nat(z, xs[1])
    s, _ = coproduct(xs[0], xs[1])
    assert count_nat(s, z) == count_nat(xs[0], z) * count_nat(xs[1], z)
    assert count_nat(z, terminal(cat)) == 1
    assert count_nat(initial(cat), z) == 1
    for x in xs:
        assert validate(p).ok and validate(s).ok and validate(x).ok


def test_equalizer_and_coequalizer_of_x0_endomaps():
    maps = nat_hom(fx.X0, fx.X0)
    assert len(maps) == 2
    f, g = maps
    eq, [incl] = equalizer(f, g)
    assert eq.size() == {"U": 1, "V": 1, "W": 1}
    assert validate(incl).ok and incl.is_injective()
    co, [q] = coequalizer(f, g)
    assert co.size() == {"U": 1, "V": 1, "W": 1}
    assert validate(q).ok and q.is_surjective()


def test_pullback_and_shape_errors():
    one = terminal(fx.COSPAN)
    to_one = nat_hom(fx.X0, one)[0]
    pb, projs = pullback(to_one, to_one)
    assert pb.size() == {"U": 4, "V": 1, "W": 1}
    assert len(projs) == 2
    assert limit("terminal", [], base=fx.COSPAN)[0] == one
    with pytest.raises(ShapeMismatch):
        limit("equalizer", [fx.X0])
    with pytest.raises(ShapeMismatch):
        colimit("pushout-of-three", [])
    with pytest.raises(ShapeMismatch):
        product()


def test_quotient_names_classes_by_least_member():
    x = coproduct(yoneda(fx.SPLIT, "B"), yoneda(fx.SPLIT, "B"))[0]
    q, m = quotient(x, {"B": [("(0,id_B)", "(1,id_B)"), ("(0,e)", "(1,e)")],
                             "A": [("(0,s)", "(1,s)")]})
    assert validate(q).ok and validate(m).ok
    assert q.at("B") == ("(0,e)", "(0,id_B)")


def test_image_factorization():
    to_one = nat_hom(fx.X0, terminal(fx.COSPAN))[0]
    img, epi, mono = image_factorization(to_one)
    assert img.size() == {"U": 1, "V": 1, "W": 1}
    assert epi.is_surjective() and mono.is_injective()
    assert compose_morphisms(mono, epi) == to_one


def test_iso_search():
    x = fx.X0
    assert find_iso(x, x) is not None
    assert is_isomorphic(x, x)
    r = is_isomorphic(x, terminal(fx.COSPAN))
    assert not r


def test_sieve_presheaf_inclusion():
    s = Sieve.generated(fx.COSPAN, "W", ["i", "j"])
    sp = sieve_presheaf(s)
    assert sp.size() == {"U": 1, "V": 1, "W": 0}
    assert validate(sieve_inclusion(s)).ok


def test_presheaf_violations():
    a = dict(fx.X0.actions)
    a["i"] = {"w": "z"}
    rep = validate(Presheaf(fx.COSPAN, fx.X0.sets, a))
    assert [(v.law, v.witness) for v in rep] == [("action-typing", ("i", "w"))]
    m = PresheafMorphism(fx.X0, fx.X0, {"U": {"a": "b", "b": "b"}, "V": {"c": "c"}, "W": {"w": "w"}})
    assert [(v.law, v.witness) for v in validate(m)] == [("naturality", ("i", "w"))]
    with pytest.raises(BaseMismatch):
        validate(PresheafMorphism(fx.X0, terminal(fx.SPLIT), {}))


@pytest.mark.parametrize("fname", ["FW", "G1"])
def test_lan_matches_coend_oracle(fname):
    f = getattr(fx, fname)
    h = representables(f, "covariant")
    for x in random_presheaves(f.source, 5):
        assert lan(f, x).size() == lext_sizes(h, x)
        assert validate(lan(f, x)).ok


@pytest.mark.parametrize("fname", ["FW", "G1"])
def test_kan_extension_adjunction_counts(fname):
    f = getattr(fx, fname)
    xs = random_presheaves(f.source, 3)
    ys = random_presheaves(f.target, 3, seed=SEED + 7)
    for x in xs:
        for y in ys:
            assert count_nat(lan(f, x), y) == count_nat(x, restrict(f, y))
            assert count_nat(restrict(f, y), x) == count_nat(y, ran(f, x))
    assert validate(ran(f, xs[0])).ok
    assert transport_along(f, xs[0], "lan") == lan(f, xs[0])
    with pytest.raises(ValueError):
        transport_along(f, xs[0], "sideways")


def test_identity_morphism():
    i = identity_morphism(fx.X0)
    assert i.is_iso() and validate(i).ok
