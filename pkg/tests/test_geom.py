import pytest

from common import fixture_dos, fixture_sheaves, sheaf_family
from sitecalc import fixtures as fx
from sitecalc.distributor import hom_unit, is_isomorphic as dist_isomorphic, sheafify_distributor, tensor
from sitecalc.errors import ConstructionError, NotASheaf
from sitecalc.geom import (GeomAction, adjunction_check, direct_image_apply, inverse_image_apply, inverse_image_map,
                           lex_spotcheck, reconstructed_distributor, roundtrip_check)
from sitecalc.presheaf import is_isomorphic, nat_hom, validate, yoneda
from sitecalc.siteprops import SiteDistributor
from sitecalc.topology import is_sheaf


def sheaves_on(top):
    return sheaf_family(top)


def composable_pairs():
    dos = fixture_dos()
    for gn, g in dos.items():
        for hn, h in dos.items():
            if h.tgt_top == g.src_top:
                yield f"{gn}.{hn}", g, h


def test_construction_requires_distributor_of_sites():
    with pytest.raises(ConstructionError):
        GeomAction(SiteDistributor(fx.EH, fx.JC, fx.TRIV1))
    with pytest.raises(ConstructionError):
        GeomAction(SiteDistributor(fx.ED, fx.TRIV1, fx.JC))


def test_inverse_image_needs_a_sheaf():
    ga = GeomAction(SiteDistributor(hom_unit(fx.SPLIT), fx.JS, fx.JS))
    with pytest.raises(NotASheaf):
        inverse_image_apply(ga, yoneda(fx.SPLIT, "B"))
    with pytest.raises(NotASheaf):
        direct_image_apply(ga, yoneda(fx.SPLIT, "B"))


@pytest.mark.parametrize("name", list(fixture_dos()))
def test_images_are_sheaves(name):
    sd = fixture_dos()[name]
    ga = GeomAction(sd)
    for e in sheaves_on(sd.src_top):
        out = inverse_image_apply(ga, e)
        assert validate(out).ok and is_sheaf(out, sd.tgt_top)
    for f in sheaves_on(sd.tgt_top):
        out = direct_image_apply(ga, f)
        assert validate(out).ok and is_sheaf(out, sd.src_top)


@pytest.mark.parametrize("name", list(fixture_dos()))
def test_adjunction_on_fixture_sheaf_pairs(name):
    sd = fixture_dos()[name]
    ga = GeomAction(sd)
    for e in sheaves_on(sd.src_top):
        for f in sheaves_on(sd.tgt_top):
            r = adjunction_check(ga, e, f)
            assert r, (name, e.size(), f.size(), r.detail)


@pytest.mark.parametrize("name", list(fixture_dos()))
def test_lex_spotchecks(name):
    sd = fixture_dos()[name]
    ga = GeomAction(sd)
    assert lex_spotcheck(ga, "terminal")
    sh = sheaves_on(sd.src_top)
    for a in sh:
        for b in sh:
            assert lex_spotcheck(ga, "product", [a, b])
            maps = nat_hom(a, b)
            for f in maps[:3]:
                for g in maps[:3]:
                    assert lex_spotcheck(ga, "equalizer", [f, g])


@pytest.mark.parametrize("name", list(fixture_dos()))
def test_roundtrip(name):
    sd = fixture_dos()[name]
    r = roundtrip_check(sd, sheaves_on(sd.src_top))
    assert r, r.detail
    assert r.witness["continuous"] == r.witness["unit_iso"]
    a, _ = sheafify_distributor(sd.dist, sd.tgt_top)
    a2, unit2 = sheafify_distributor(a, sd.tgt_top)
    assert unit2.is_iso()
    assert dist_isomorphic(a, reconstructed_distributor(GeomAction(sd)))


def test_roundtrip_split_not_continuous():
    r = roundtrip_check(SiteDistributor(hom_unit(fx.SPLIT), fx.JS, fx.JS))
    assert r.witness == {"reconstructed": True, "inverse_images": True, "continuous": False, "unit_iso": False}
    r = roundtrip_check(SiteDistributor(fx.HOMC, fx.JC, fx.JC))
    assert r.witness["continuous"] and r.witness["unit_iso"]


@pytest.mark.parametrize("label,g,h", list(composable_pairs()), ids=lambda v: v if isinstance(v, str) else "")
def test_pseudofunctoriality(label, g, h):
    gh = SiteDistributor(tensor(g.dist, h.dist), h.src_top, g.tgt_top)
    gh_sheafified = SiteDistributor(tensor(g.dist, h.dist, sheafified=g.tgt_top), h.src_top, g.tgt_top)
    ga, gg, gc, gs = GeomAction(h), GeomAction(g), GeomAction(gh), GeomAction(gh_sheafified)
    for e in sheaves_on(h.src_top):
        composite = inverse_image_apply(gg, inverse_image_apply(ga, e))
        assert is_isomorphic(inverse_image_apply(gc, e), composite)
        assert is_isomorphic(inverse_image_apply(gs, e), composite)


def test_inverse_image_map_is_functorial_on_identities():
    sd = fixture_dos()["HOMC"]
    ga = GeomAction(sd)
    for e in fixture_sheaves("COSPAN/JC"):
        for m in nat_hom(e, e):
            if m.is_iso():
                assert inverse_image_map(ga, m).is_iso()
