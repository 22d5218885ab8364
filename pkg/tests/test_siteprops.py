import random

import pytest

from common import SEED, candidate_site_distributors, fixture_sites, random_cases, random_topology, small_categories
from oracles import k_flat_by_local_epis
from sitecalc import fixtures as fx
from sitecalc.distributor import hom_unit, is_flat, representables
from sitecalc.errors import BaseMismatch
from sitecalc.fincat import enumerate_functors
from sitecalc.presheaf import Sieve
from sitecalc.siteprops import (SiteDistributor, cone_sieve, functor_site_checks, generating_diagrams,
                                image_of_sieve, is_continuous, is_cover_distributing, is_cover_lifting,
                                is_cover_preserving, is_cover_testing, is_distributor_of_sites, is_K_flat,
                                preimage_sieve)
from sitecalc.topology import trivial_topology


def sd(h, j, k):
    return SiteDistributor(h, j, k)


def test_base_mismatch():
    with pytest.raises(BaseMismatch):
        sd(fx.EH, fx.TRIV1, fx.JC)


def test_eh_exact_witnesses():
    s = sd(fx.EH, fx.JC, fx.TRIV1)
    r = is_cover_distributing(s)
    assert not r
    d, c, x, cover, pb = r.witness
    assert (d, c, x, cover.arrows, pb.arrows) == ("*", "W", "x", {"i", "j"}, frozenset())
    assert is_K_flat(s) and is_K_flat(s, "synthetic")
    r = is_cover_testing(s)
    assert not r and r.witness == ("U", Sieve.empty(fx.COSPAN, "U"))
    r = is_distributor_of_sites(s)
    assert not r and r.witness[0] == "cover-distributing"


def test_ed_exact_witnesses():
    s = sd(fx.ED, fx.TRIV1, fx.JC)
    assert is_cover_distributing(s)
    r = is_K_flat(s)
    assert not r and r.witness == (1, "U", Sieve.empty(fx.COSPAN, "U"))
    r = is_K_flat(s, "synthetic")
    assert not r and r.witness[0] == "empty" and r.witness[1] == "U"
    assert not is_distributor_of_sites(s)


def test_unknown_mode():
    with pytest.raises(ValueError):
        is_K_flat(sd(fx.HOMC, fx.JC, fx.JC), "intuitive")


@pytest.mark.parametrize("name", list(candidate_site_distributors()))
def test_flatness_modes_agree_on_fixtures(name):
    s = candidate_site_distributors()[name]
    a = bool(is_K_flat(s, "definitional"))
    assert a == bool(is_K_flat(s, "synthetic")) == k_flat_by_local_epis(s.dist, s.tgt_top)


def test_flatness_modes_agree_on_random_distributors():
    for h, j, k in random_cases(200, seed=SEED + 11):
        s = sd(h, j, k)
        a = bool(is_K_flat(s, "definitional"))
        assert a == bool(is_K_flat(s, "synthetic")) == k_flat_by_local_epis(h, k), h.name


def test_generating_diagrams_and_cone_sieve():
    shapes = [d[0] for d in generating_diagrams(fx.COSPAN)]
    assert shapes.count("empty") == 1
    assert "pair" in shapes
    h = fx.HOMC
    # the empty diagram: sieve of arrows into W whose source has some heteromorphism
    s = cone_sieve(h, "W", [], [], {})
    assert s.is_maximal()


def test_trivial_topology_k_flat_is_flat():
    for h, _, _ in random_cases(150, seed=SEED + 5):
        s = sd(h, trivial_topology(h.source), trivial_topology(h.target))
        assert bool(is_K_flat(s)) == bool(is_flat(h))


def test_continuity():
    assert is_continuous(sd(fx.HOMC, fx.JC, fx.JC))
    r = is_continuous(sd(hom_unit(fx.SPLIT), fx.JS, fx.JS))
    assert not r
    assert r.witness[0] == "B" and r.witness[4] == 2


def test_functor_checks_fw_g1():
    c = functor_site_checks(fx.FW, fx.TRIV1, fx.JC)
    assert c.cover_preserving and c.covering_flat and c.morphism_of_sites
    assert not c.comorphism_of_sites
    c = functor_site_checks(fx.G1, fx.JC, fx.TRIV1)
    assert c.comorphism_of_sites
    assert not c.covering_flat
    assert set(c.as_dict()) == {"cover_preserving", "cover_lifting", "covering_flat", "morphism_of_sites",
                                "comorphism_of_sites"}


def test_image_and_preimage_sieves():
    s = Sieve.maximal(fx.ONE, "*")
    # the sieve generated by the image
    assert image_of_sieve(fx.FW, s).arrows == {"i", "id_W", "j"}
    r = Sieve.generated(fx.COSPAN, "W", ["i", "j"])
    assert preimage_sieve(fx.FW, r, "*").arrows == frozenset()


@pytest.mark.parametrize("src", list(fixture_sites()))
@pytest.mark.parametrize("tgt", list(fixture_sites()))
def test_subsumption_over_all_functors(src, tgt):
    (C, J), (D, K) = fixture_sites()[src], fixture_sites()[tgt]
    for f in enumerate_functors(C, D):
        cov = representables(f, "covariant")
        contra = representables(f, "contravariant")
        assert bool(is_cover_preserving(f, J, K)) == bool(is_cover_distributing(sd(cov, J, K)))
        assert bool(is_cover_lifting(f, J, K)) == bool(is_cover_distributing(sd(contra, K, J)))


def test_hom_unit_is_cover_distributing_for_random_topologies():
    rng = random.Random(SEED)
    for cat in small_categories():
        for _ in range(8):
            t = random_topology(rng, cat)
            assert is_cover_distributing(sd(hom_unit(cat), t, t))
            assert is_distributor_of_sites(sd(hom_unit(cat), t, t))
