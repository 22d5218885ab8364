"""Site-relative predicates on distributors and functors."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .distributor import Distributor, classifier, het_pullback_sieve, image_sieve, representables
from .errors import BaseMismatch
from .fincat import FinCategory, FinFunctor
from .presheaf import Sieve, all_sieves
from .results import Decision, failed, passed
from .topology import GrothendieckTopology, is_sheaf


@dataclass(frozen=True)
class SiteDistributor:
    dist: Distributor
    src_top: GrothendieckTopology
    tgt_top: GrothendieckTopology

    def __post_init__(self):
        if self.src_top.base != self.dist.source or self.tgt_top.base != self.dist.target:
            raise BaseMismatch("topologies do not live on the distributor's endpoints")


def is_cover_distributing(sd: SiteDistributor) -> Decision:
    """Every x*H[S] with S J-covering is K-covering."""
    h, j, k = sd.dist, sd.src_top, sd.tgt_top
    images = {(c, s): image_sieve(h, s)[0] for c in h.source.objects for s in j.sieves(c)}
    for d in h.target.objects:
        for c in h.source.objects:
            for x in h.at(d, c):
                for s in j.sieves(c):
                    pb = het_pullback_sieve(h, s, d, x, images[(c, s)])
                    if not k.covers(pb):
                        return failed((d, c, x, s, pb),
                                      f"{x}*H[{s.render()}] = {pb.render()} is not covering")
    return passed()


# K-flatness

def _cond_nonempty(h: Distributor, d: str) -> Sieve:
    D, C = h.target, h.source
    inhabited = {d2 for d2 in D.objects if any(h.at(d2, c) for c in C.objects)}
    return Sieve(D, d, frozenset(v for v in D.arrows_into(d) if D.src(v) in inhabited))


def _cond_span(h: Distributor, d: str, c: str, x: str, c2: str, x2: str, spans) -> Sieve:
    D = h.target
    return Sieve(D, d, frozenset(v for v in D.arrows_into(d)
                                 if (h.lact(v, c, x), h.lact(v, c2, x2)) in spans[(D.src(v), c, c2)]))


def _span_table(h: Distributor):
    # (d', c, c') -> pairs (x''.u, x''.u') over all spans u: c'' -> c, u': c'' -> c'
    C = h.source
    table: dict = {}
    for d2 in h.target.objects:
        for c in C.objects:
            for c2 in C.objects:
                pairs = set()
                for c3 in C.objects:
                    for u in C.hom(c3, c):
                        for u2 in C.hom(c3, c2):
                            for x3 in h.at(d2, c3):
                                pairs.add((h.ract(u, d2, x3), h.ract(u2, d2, x3)))
                table[(d2, c, c2)] = pairs
    return table


def _cond_equalize(h: Distributor, d: str, u: str, u2: str, x: str) -> Sieve:
    D, C = h.target, h.source
    c1 = C.src(u)
    ws = [w for w in C.arrows_into(c1) if C.comp(u, w) == C.comp(u2, w)]
    reach = {d2: {h.ract(w, d2, x3) for w in ws for x3 in h.at(d2, C.src(w))} for d2 in D.objects}
    return Sieve(D, d, frozenset(v for v in D.arrows_into(d) if h.lact(v, c1, x) in reach[D.src(v)]))


def _k_flat_definitional(h: Distributor, k: GrothendieckTopology) -> Decision:
    D, C = h.target, h.source
    for d in D.objects:
        s = _cond_nonempty(h, d)
        if not k.covers(s):
            return failed((1, d, s), f"inhabited sieve on {d} is {s.render()}, not covering")
    spans = _span_table(h)
    for d in D.objects:
        for c, c2 in product(C.objects, repeat=2):
            for x in h.at(d, c):
                for x2 in h.at(d, c2):
                    s = _cond_span(h, d, c, x, c2, x2, spans)
                    if not k.covers(s):
                        return failed((2, d, c, x, c2, x2, s), f"span sieve for {x},{x2} is {s.render()}")
    for d in D.objects:
        for u in C.arrows:
            for u2 in C.hom(C.src(u), C.tgt(u)):
                for x in h.at(d, C.src(u)):
                    if h.ract(u, d, x) != h.ract(u2, d, x):
                        continue
                    s = _cond_equalize(h, d, u, u2, x)
                    if not k.covers(s):
                        return failed((3, d, u, u2, x, s), f"equalizer sieve for {u},{u2} at {x} is {s.render()}")
    return passed()


def cone_sieve(h: Distributor, d: str, objects: list[str], arrows: list[tuple[int, int, str]],
               fam: list[str]) -> Sieve:
    """Sieve of v: d' -> d along which ``fam`` factors through some cone over the diagram.

    ``objects[i]`` are the diagram's objects, ``arrows`` triples (i, j, u)
    with u: objects[i] -> objects[j], and ``fam[i]`` in het(d, objects[i])
    a compatible family.
    """
    D, C = h.target, h.source
    cones = []
    for c in C.objects:
        for legs in product(*(C.hom(c, ci) for ci in objects)):
            if all(C.comp(u, legs[i]) == legs[j] for i, j, u in arrows):
                cones.append((c, legs))
    reach = {d2: {tuple(h.ract(leg, d2, x) for leg in legs) for c, legs in cones for x in h.at(d2, c)}
             for d2 in D.objects}
    return Sieve(D, d, frozenset(
        v for v in D.arrows_into(d)
        if tuple(h.lact(v, ci, xi) for ci, xi in zip(objects, fam)) in reach[D.src(v)]))


def generating_diagrams(cat: FinCategory):
    """Empty diagram, discrete pairs, and parallel pairs of the category."""
    yield "empty", [], []
    for c, c2 in product(cat.objects, repeat=2):
        yield "pair", [c, c2], []
    for u in cat.arrows:
        for u2 in cat.hom(cat.src(u), cat.tgt(u)):
            yield "parallel", [cat.src(u), cat.tgt(u)], [(0, 1, u), (0, 1, u2)]


def _k_flat_synthetic(h: Distributor, k: GrothendieckTopology) -> Decision:
    D = h.target
    for shape, objects, arrows in generating_diagrams(h.source):
        for d in D.objects:
            for fam in product(*(h.at(d, ci) for ci in objects)):
                if not all(h.ract(u, d, fam[i]) == fam[j] for i, j, u in arrows):
                    continue
                s = cone_sieve(h, d, objects, arrows, list(fam))
                if not k.covers(s):
                    us = tuple(u for _, _, u in arrows)
                    return failed((shape, d, tuple(objects), us, tuple(fam), s),
                                  f"cone sieve for {shape} diagram at {d} is {s.render()}")
    return passed()


def is_K_flat(sd: SiteDistributor, mode: str = "definitional") -> Decision:
    # only the target topology is consulted
    if mode == "definitional":
        return _k_flat_definitional(sd.dist, sd.tgt_top)
    if mode == "synthetic":
        return _k_flat_synthetic(sd.dist, sd.tgt_top)
    raise ValueError(f"unknown flatness mode {mode!r}")


def is_distributor_of_sites(sd: SiteDistributor) -> Decision:
    r = is_cover_distributing(sd)
    if not r:
        return failed(("cover-distributing",) + tuple(r.witness), r.detail)
    r = is_K_flat(sd)
    if not r:
        return failed(("k-flat",) + tuple(r.witness), r.detail)
    return passed()


def is_continuous(sd: SiteDistributor) -> Decision:
    for c in sd.dist.source.objects:
        r = is_sheaf(classifier(sd.dist, c), sd.tgt_top)
        if not r:
            return failed((c,) + tuple(r.witness), f"classifier at {c}: {r.detail}")
    return passed()


def is_cover_testing(sd: SiteDistributor) -> Decision:
    """A sieve whose heteromorphic pullbacks are all K-covering must be J-covering."""
    h, j, k = sd.dist, sd.src_top, sd.tgt_top
    for c in h.source.objects:
        for s in all_sieves(h.source, c):
            if j.covers(s):
                continue
            img = image_sieve(h, s)[0]
            if all(k.covers(het_pullback_sieve(h, s, d, x, img)) for d in h.target.objects for x in h.at(d, c)):
                return failed((c, s), f"{s.render()} is not covering but all its pullbacks are")
    return passed()


# functors between sites

@dataclass(frozen=True)
class FunctorSiteChecks:
    cover_preserving: Decision
    cover_lifting: Decision
    covering_flat: Decision
    morphism_of_sites: Decision
    comorphism_of_sites: Decision

    def as_dict(self) -> dict[str, Decision]:
        return {"cover_preserving": self.cover_preserving, "cover_lifting": self.cover_lifting,
                "covering_flat": self.covering_flat, "morphism_of_sites": self.morphism_of_sites,
                "comorphism_of_sites": self.comorphism_of_sites}


def image_of_sieve(f: FinFunctor, s: Sieve) -> Sieve:
    return Sieve.generated(f.target, f.ob(s.apex), [f.ar(u) for u in s.arrows])


def preimage_sieve(f: FinFunctor, r: Sieve, c: str) -> Sieve:
    return Sieve(f.source, c, frozenset(u for u in f.source.arrows_into(c) if f.ar(u) in r.arrows))


def is_cover_preserving(f: FinFunctor, j: GrothendieckTopology, k: GrothendieckTopology) -> Decision:
    for c in f.source.objects:
        for s in j.sieves(c):
            img = image_of_sieve(f, s)
            if not k.covers(img):
                return failed((c, s, img), f"image of {s.render()} is {img.render()}, not covering")
    return passed()


def is_cover_lifting(f: FinFunctor, j: GrothendieckTopology, k: GrothendieckTopology) -> Decision:
    for c in f.source.objects:
        for r in k.sieves(f.ob(c)):
            pre = preimage_sieve(f, r, c)
            if not j.covers(pre):
                return failed((c, r, pre), f"preimage of {r.render()} is {pre.render()}, not covering")
    return passed()


def functor_site_checks(f: FinFunctor, j: GrothendieckTopology, k: GrothendieckTopology) -> FunctorSiteChecks:
    if j.base != f.source or k.base != f.target:
        raise BaseMismatch("topologies must live on the functor's source and target")
    pres = is_cover_preserving(f, j, k)
    lift = is_cover_lifting(f, j, k)
    flat = is_K_flat(SiteDistributor(representables(f, "covariant"), j, k))
    morph = pres if not pres else flat
    return FunctorSiteChecks(pres, lift, flat, morph, lift)
