"""Executable theory of distributors of sites on finite data."""
from .distributor import (CollageResult, DistTransformation, Distributor, collage, hom_unit, is_flat,
                          lext_apply, representables, rest_apply, sheafify_distributor, tensor)
from .fincat import FinCategory, FinFunctor, is_cofiltered, op
from .geom import GeomAction, adjunction_check, direct_image_apply, inverse_image_apply, roundtrip_check
from .presheaf import Presheaf, PresheafMorphism, Sieve, nat_hom, yoneda
from .results import Decision, ValidationReport
from .siteprops import (SiteDistributor, functor_site_checks, is_continuous, is_cover_distributing,
                        is_cover_testing, is_distributor_of_sites, is_K_flat)
from .topology import Coverage, GrothendieckTopology, is_sheaf, saturate, sheafify

__version__ = "0.1.0"
