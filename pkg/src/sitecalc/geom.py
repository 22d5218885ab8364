"""Pointwise action of the geometric morphism induced by a distributor of sites.

Geometric morphisms are never stored; a ``GeomAction`` evaluates the
inverse image ``a_K . lext_H`` and the direct image ``rest_H`` on supplied
finite sheaves.
"""
from __future__ import annotations

from .distributor import (Distributor, _lext, classifier, is_isomorphic, lext_apply, lext_map, rest_apply,
                          sheafify_distributor)
from .errors import ConstructionError, InvariantViolation, NotASheaf, ShapeMismatch
from .presheaf import (Presheaf, PresheafMorphism, _render_nat, compose_morphisms, equalizer, nat_hom, product,
                       pullback, terminal, yoneda)
from .presheaf import is_isomorphic as presheaf_isomorphic
from .results import Decision, failed, passed
from .siteprops import SiteDistributor, is_continuous, is_distributor_of_sites
from .topology import GrothendieckTopology, is_sheaf, sheafify, sheafify_map


class GeomAction:
    def __init__(self, sd: SiteDistributor):
        r = is_distributor_of_sites(sd)
        if not r:
            raise ConstructionError(f"not a distributor of sites: {r.detail}")
        self.sd = sd

    @property
    def dist(self) -> Distributor:
        return self.sd.dist


def _inverse(h: Distributor, k: GrothendieckTopology, e: Presheaf) -> Presheaf:
    return sheafify(lext_apply(h, e), k)[0]


def inverse_image_apply(ga: GeomAction, e: Presheaf) -> Presheaf:
    if not is_sheaf(e, ga.sd.src_top):
        raise NotASheaf("inverse image needs a sheaf on the source site")
    return _inverse(ga.dist, ga.sd.tgt_top, e)


def inverse_image_map(ga: GeomAction, m: PresheafMorphism) -> PresheafMorphism:
    return sheafify_map(lext_map(ga.dist, m), ga.sd.tgt_top)


def direct_image_apply(ga: GeomAction, f: Presheaf) -> Presheaf:
    if not is_sheaf(f, ga.sd.tgt_top):
        raise NotASheaf("direct image needs a sheaf on the target site")
    out = rest_apply(ga.dist, f)
    r = is_sheaf(out, ga.sd.src_top)
    if not r:
        raise InvariantViolation(f"direct image is not a sheaf: {r.detail}")
    return out


def adjunction_check(ga: GeomAction, e: Presheaf, f: Presheaf, limit: int | None = None) -> Decision:
    """Transpose every map a_K(lext e) -> f to e -> rest f and check this is a bijection."""
    h, k = ga.dist, ga.sd.tgt_top
    if not is_sheaf(e, ga.sd.src_top) or not is_sheaf(f, k):
        raise NotASheaf("adjunction check needs sheaves on both sides")
    lx, classes = _lext(h, e)
    ax, eta = sheafify(lx, k)
    right_obj = direct_image_apply(ga, f)
    left = nat_hom(ax, f, limit)
    right = nat_hom(e, right_obj, limit)
    if len(left) != len(right):
        return failed(("counts", len(left), len(right)), f"{len(left)} maps on the left, {len(right)} on the right")
    right_keys = {m.key() for m in right}
    seen = set()
    D, C = h.target, h.source
    cls = {c: classifier(h, c) for c in C.objects}
    for theta in left:
        t = compose_morphisms(theta, eta)
        comps = {}
        for c in C.objects:
            comps[c] = {}
            for a in e.at(c):
                inner = {d: {x: t(d, classes[(d, (c, x, a))]) for x in h.at(d, c)} for d in D.objects}
                comps[c][a] = _render_nat(PresheafMorphism(cls[c], f, inner))
        tr = PresheafMorphism(e, right_obj, comps)
        if tr.key() not in right_keys:
            return failed(("not-natural", _render_nat(theta)), "transpose is not a map into the direct image")
        if tr.key() in seen:
            return failed(("not-injective", _render_nat(theta)), "two maps share a transpose")
        seen.add(tr.key())
    return passed((len(left), len(right)))


def _limit_of(shape: str, diagram, base):
    if shape == "terminal":
        if diagram:
            raise ShapeMismatch("terminal diagram takes no data")
        return terminal(base), []
    if shape == "product":
        return product(*diagram, base=base)
    if shape == "equalizer":
        if len(diagram) != 2:
            raise ShapeMismatch("equalizer diagram is a parallel pair")
        lim, [incl] = equalizer(*diagram)
        return lim, [incl]
    if shape == "pullback":
        if len(diagram) != 2:
            raise ShapeMismatch("pullback diagram is a cospan")
        return pullback(*diagram)
    raise ShapeMismatch(f"unknown limit shape {shape!r}")


def lex_spotcheck(ga: GeomAction, shape: str, diagram=()) -> Decision:
    """The comparison map F(lim D) -> lim F(D) is invertible, F the inverse image."""
    diagram = list(diagram)
    src_base, tgt_base = ga.dist.source, ga.dist.target
    lim, projs = _limit_of(shape, diagram, src_base)
    flim = inverse_image_apply(ga, lim)
    fprojs = [inverse_image_map(ga, p) for p in projs]
    if shape in ("terminal", "product"):
        fdiag = [inverse_image_apply(ga, x) for x in diagram]
    else:
        fdiag = [inverse_image_map(ga, m) for m in diagram]
    target, tprojs = _limit_of(shape, fdiag, tgt_base)
    for d in tgt_base.objects:
        lookup = {tuple(q(d, y) for q in tprojs): y for y in target.at(d)}
        images = []
        for x in flim.at(d):
            key = tuple(p(d, x) for p in fprojs)
            if key not in lookup:
                return failed((d, x), f"comparison undefined at {d} on {x}")
            images.append(lookup[key])
        if len(set(images)) != len(images) or len(images) != len(target.at(d)):
            return failed((d, len(flim.at(d)), len(target.at(d))), f"comparison at {d} is not bijective")
    return passed()


def reconstructed_distributor(ga: GeomAction) -> Distributor:
    """(d, c) |-> inverse image of a_J y_c, evaluated at d."""
    h, j = ga.dist, ga.sd.src_top
    C, D = h.source, h.target
    reps = {c: sheafify(yoneda(C, c), j)[0] for c in C.objects}
    images = {c: inverse_image_apply(ga, reps[c]) for c in C.objects}
    het = {(d, c): images[c].at(d) for d in D.objects for c in C.objects}
    left = {(v, c): images[c].actions[v] for v in D.arrows for c in C.objects}
    right = {}
    for u in C.arrows:
        yu = PresheafMorphism(yoneda(C, C.src(u)), yoneda(C, C.tgt(u)),
                              {c2: {w: C.comp(u, w) for w in C.hom(c2, C.src(u))} for c2 in C.objects})
        m = inverse_image_map(ga, sheafify_map(yu, j))
        for d in D.objects:
            right[(u, d)] = m.components[d]
    return Distributor(C, D, het, left, right, name=f"rec({h.name})" if h.name else None)


def roundtrip_check(sd: SiteDistributor, test_sheaves=()) -> Decision:
    """Reconstruction, inverse-image agreement and the continuity/unit link.

    The witness is a dict with keys ``reconstructed``, ``inverse_images``,
    ``continuous`` and ``unit_iso``.
    """
    ga = GeomAction(sd)
    h, k = sd.dist, sd.tgt_top
    a, unit = sheafify_distributor(h, k)
    rec = bool(is_isomorphic(a, reconstructed_distributor(ga)))
    agree = all(bool(presheaf_isomorphic(_inverse(h, k, e), _inverse(a, k, e))) for e in test_sheaves)
    cont = bool(is_continuous(sd))
    unit_iso = unit.is_iso()
    report = {"reconstructed": rec, "inverse_images": agree, "continuous": cont, "unit_iso": unit_iso}
    holds = rec and agree and (unit_iso if cont else True)
    return Decision(holds, report, "" if holds else f"round trip failed: {report}")
