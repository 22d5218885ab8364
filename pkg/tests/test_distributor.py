import random

import pytest

from common import SEED, random_distributor, small_categories
from oracles import coend_sizes, lext_sizes
from test_presheaf import random_presheaves
from sitecalc import fixtures as fx
from sitecalc.distributor import (DistTransformation, Distributor, as_presheaf, classifier, collage,
                                  elements_category, hom_unit, image_sieve, is_flat, is_isomorphic, lext_apply,
                                  lext_map, representables, rest_apply, rest_map, sheafify_distributor, tensor,
                                  universal_from_cocone, validate)
from sitecalc.errors import BaseMismatch, CoconeMismatch, EndpointMismatch
from sitecalc.fincat import compose_functors, find_isomorphism, identity_functor, validate as validate_cat
from sitecalc.presheaf import Presheaf, Sieve, count_nat, nat_hom, validate as validate_presheaf
from sitecalc.presheaf import is_isomorphic as iso
from sitecalc.topology import is_sheaf, validate_topology


def violations(rep):
    return [(v.law, v.witness) for v in rep]


def composable_triples(n, seed=SEED):
    rng = random.Random(seed)
    cats = small_categories()
    for _ in range(n):
        a, b, c, d = (rng.choice(cats) for _ in range(4))
        yield (random_distributor(rng, a, b, name="H"), random_distributor(rng, b, c, name="G"),
               random_distributor(rng, c, d, name="F"))


@pytest.mark.parametrize("name", ["EH", "ED", "HOMC"])
def test_fixture_distributors_validate(name):
    assert validate(getattr(fx, name)).ok


@pytest.mark.parametrize("cat", small_categories(), ids=lambda c: c.name)
def test_hom_unit_and_representables_validate(cat):
    assert validate(hom_unit(cat)).ok
    for f in (fx.FW, fx.G1):
        for var in ("covariant", "contravariant"):
            assert validate(representables(f, var)).ok


def test_random_distributors_validate():
    rng = random.Random(SEED)
    for _ in range(200):
        C, D = rng.choice(small_categories()), rng.choice(small_categories())
        h = random_distributor(rng, C, D)
        assert validate(h).ok
        assert max(h.size().values()) <= 2


def test_phantom_right_action():
    e = fx.EH
    right = dict(e.right)
    right[("i", "*")] = {"x": "x"}
    rep = validate(Distributor(e.source, e.target, e.het, e.left, right))
    assert violations(rep) == [("right-typing", ("i", "*", "x"))]


def test_left_action_composition_violation():
    h = hom_unit(fx.SPLIT)
    left = {k: dict(v) for k, v in h.left.items()}
    left[("e", "B")]["id_B"] = "id_B"
    rep = validate(Distributor(h.source, h.target, h.het, left, h.right))
    assert violations(rep) == [("left-composition", ("s", "r", "B", "id_B"))]


def test_transformation_naturality_violation():
    h = hom_unit(fx.SPLIT)
    comps = {p: {x: x for x in h.het[p]} for p in h.pairs()}
    comps[("B", "B")] = {"id_B": "id_B", "e": "id_B"}
    rep = validate(DistTransformation(h, h, comps))
    assert rep.laws()[0] == "naturality-left"
    assert violations(rep)[0] == ("naturality-left", ("e", "B", "e"))
    with pytest.raises(EndpointMismatch):
        DistTransformation(h, fx.HOMC, {})


def test_hom_unit_contents():
    h = fx.HOMC
    assert h.at("U", "W") == ("i",)
    assert h.lact("i", "W", "id_W") == "i"
    assert h.ract("i", "U", "id_U") == "i"
    assert sum(h.size().values()) == 5


@pytest.mark.parametrize("name", ["EH", "ED", "HOMC"])
def test_tensor_unit_laws(name):
    h = getattr(fx, name)
    assert is_isomorphic(tensor(hom_unit(h.target), h), h)
    assert is_isomorphic(tensor(h, hom_unit(h.source)), h)


def test_tensor_matches_coend_oracle():
    for h, g, _ in composable_triples(80):
        t = tensor(g, h)
        assert {p: len(t.het[p]) for p in t.pairs()} == coend_sizes(g, h)
        assert validate(t).ok


def test_tensor_associativity():
    for h, g, f in composable_triples(60, seed=SEED + 3):
        assert is_isomorphic(tensor(f, tensor(g, h)), tensor(tensor(f, g), h))


def test_tensor_endpoint_mismatch():
    with pytest.raises(EndpointMismatch):
        tensor(fx.EH, fx.EH)


def test_tensor_of_representables_is_representable_of_composite():
    gf = compose_functors(fx.G1, fx.FW)
    assert is_isomorphic(tensor(representables(fx.G1, "covariant"), representables(fx.FW, "covariant")),
                         representables(gf, "covariant"))


def test_lext_matches_coend_oracle_and_rest_adjunction():
    rng = random.Random(SEED)
    for _ in range(40):
        C, D = rng.choice(small_categories()), rng.choice(small_categories())
        h = random_distributor(rng, C, D)
        xs = random_presheaves(C, 2, seed=rng.randrange(10**6))
        ys = random_presheaves(D, 2, seed=rng.randrange(10**6))
        for x in xs:
            assert lext_apply(h, x).size() == lext_sizes(h, x)
            assert validate_presheaf(lext_apply(h, x)).ok
            for y in ys:
                assert count_nat(lext_apply(h, x), y) == count_nat(x, rest_apply(h, y))
        for y in ys:
            assert validate_presheaf(rest_apply(h, y)).ok


def test_lext_and_rest_maps():
    h = fx.HOMC
    for m in nat_hom(fx.X0, fx.X0):
        assert validate_presheaf(lext_map(h, m)).ok
        assert validate_presheaf(rest_map(h, m)).ok
    # extension along the hom distributor is the identity up to iso
    assert iso(lext_apply(h, fx.X0), fx.X0)
    assert iso(rest_apply(h, fx.X0), fx.X0)


def test_lext_base_mismatch():
    with pytest.raises(BaseMismatch):
        lext_apply(fx.EH, Presheaf(fx.SPLIT, {}))


def test_classifier_and_image_sieve():
    assert classifier(fx.EH, "W").size() == {"*": 1}
    s = Sieve.generated(fx.COSPAN, "W", ["i", "j"])
    sub, mono = image_sieve(fx.EH, s)
    assert sub.size() == {"*": 0}
    assert mono.is_injective()
    sub, _ = image_sieve(fx.HOMC, s)
    assert sub.size() == {"U": 1, "V": 1, "W": 0}


def test_flatness():
    assert is_flat(fx.HOMC)
    assert is_flat(fx.EH)
    r = is_flat(fx.ED)
    assert not r and r.witness == ("U", "nonempty")
    r = is_flat(representables(fx.G1, "covariant"))
    assert not r and r.witness == ("*", "span", "(U,id_*)", "(V,id_*)")
    assert validate_cat(elements_category(fx.HOMC, "W")).ok


def test_as_presheaf_roundtrip_size():
    p = as_presheaf(fx.HOMC)
    assert validate_presheaf(p).ok
    assert sum(p.size().values()) == 5


def test_sheafify_distributor():
    h = hom_unit(fx.SPLIT)
    a, unit = sheafify_distributor(h, fx.JS)
    assert validate(a).ok and validate(unit).ok
    assert len(a.het[("B", "B")]) == 1
    assert not unit.is_iso()
    # the two endomorphisms of B are identified
    assert unit("B", "B", "e") == unit("B", "B", "id_B")
    for c in h.source.objects:
        assert is_sheaf(classifier(a, c), fx.JS)
    a2, unit2 = sheafify_distributor(a, fx.JS)
    assert unit2.is_iso()
    with pytest.raises(BaseMismatch):
        sheafify_distributor(h, fx.JC)


def test_sheafified_element_names_are_nested_families():
    a, _ = sheafify_distributor(hom_unit(fx.SPLIT), fx.JS)
    assert a.het[("B", "B")] == ("{e:{e:e,s:s},s:s}",)


def test_collage_of_hom_one_is_arrow():
    col = collage(hom_unit(fx.ONE), fx.TRIV1, fx.TRIV1)
    assert validate_cat(col.glued).ok
    assert find_isomorphism(col.glued, fx.ARROW) is not None
    assert [m for m, _, _ in col.glued.morphism_list] == ["0/id_*", "1/id_*", "h/id_*"]


def test_collage_of_homc():
    col = collage(fx.HOMC, fx.JC, fx.JC)
    # 5 + 5 arrows on the two sides and one formal arrow per heteromorphism
    assert len(col.glued.arrows) == 15
    assert validate_cat(col.glued).ok
    assert validate_topology(col.topology).ok
    assert validate(col.cocone).ok
    assert validate_cat(col.incl_src).ok and validate_cat(col.incl_tgt).ok
    assert col.het_arrow("U", "W", "i") == "h/i"


def test_collage_topology_degenerate_for_eh():
    col = collage(fx.EH, fx.JC, fx.TRIV1)
    assert col.topology.is_degenerate_at("0/*")


def test_universal_from_canonical_cocone_is_identity():
    for h, j, k in [(fx.HOMC, fx.JC, fx.JC), (hom_unit(fx.ONE), fx.TRIV1, fx.TRIV1), (fx.EH, fx.JC, fx.TRIV1),
                    (representables(fx.FW, "covariant"), fx.TRIV1, fx.JC)]:
        col = collage(h, j, k)
        f = universal_from_cocone(col.incl_src, col.incl_tgt, col.cocone, col)
        assert f == identity_functor(col.glued)


def test_universal_from_cocone_rejects_mismatches():
    col = collage(hom_unit(fx.SPLIT), fx.JS, fx.JS)
    with pytest.raises(EndpointMismatch):
        universal_from_cocone(identity_functor(fx.ONE), col.incl_tgt, col.cocone, col)
    wrong = collage(fx.HOMC, fx.JC, fx.JC).cocone
    with pytest.raises(CoconeMismatch):
        universal_from_cocone(col.incl_src, col.incl_tgt, wrong, col)
    # routing the class of id_B through e is another cocone, giving a different functor
    comps = {p: dict(v) for p, v in col.cocone.components.items()}
    comps[("0/B", "B")]["(id_B,0/id_B)"] = "h/e"
    f = universal_from_cocone(col.incl_src, col.incl_tgt,
                              DistTransformation(col.cocone.source, col.cocone.target, comps), col)
    assert validate_cat(f).ok and f.ar("h/id_B") == "h/e" and f != identity_functor(col.glued)
    # sending the class of e to h/id_B breaks naturality
    comps = {p: dict(v) for p, v in col.cocone.components.items()}
    comps[("0/B", "B")]["(e,0/e)"] = "h/id_B"
    with pytest.raises(CoconeMismatch):
        universal_from_cocone(col.incl_src, col.incl_tgt,
                              DistTransformation(col.cocone.source, col.cocone.target, comps), col)
