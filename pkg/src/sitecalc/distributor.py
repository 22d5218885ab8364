"""Distributors (profunctors) between finite categories.

A distributor ``H: C -|-> D`` is a functor ``D^op x C -> Set``.  Its
elements ``x in het(d, c)`` are heteromorphisms ``d ~> c``: a D-arrow
``v: d' -> d`` acts on the left, ``het(d, c) -> het(d', c)``, and a
C-arrow ``u: c -> c'`` acts on the right, ``het(d, c) -> het(d, c')``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import BaseMismatch, CoconeMismatch, DanglingReference, EndpointMismatch
from .fincat import FinCategory, FinFunctor, is_cofiltered
from .fincat import validate as validate_functor
from .naming import UnionFind, name_classes, tup
from .presheaf import Presheaf, PresheafMorphism, Sieve, _render_nat, compose_morphisms, nat_hom
from .presheaf import is_isomorphic as presheaf_isomorphic
from .results import Decision, ValidationReport, failed, passed
from .topology import Coverage, GrothendieckTopology, saturate, sheafify, sheafify_map


class Distributor:
    def __init__(self, source: FinCategory, target: FinCategory, het, left=None, right=None, name=None):
        self.source = source
        self.target = target
        self.het: dict[tuple[str, str], tuple[str, ...]] = {k: tuple(sorted(v)) for k, v in het.items()}
        for d in target.objects:
            for c in source.objects:
                self.het.setdefault((d, c), ())
        self.left: dict[tuple[str, str], dict[str, str]] = {k: dict(v) for k, v in (left or {}).items()}
        self.right: dict[tuple[str, str], dict[str, str]] = {k: dict(v) for k, v in (right or {}).items()}
        for d in target.objects:
            for c in source.objects:
                xs = self.het[(d, c)]
                self.left.setdefault((target.ident(d), c), {x: x for x in xs})
                self.right.setdefault((source.ident(c), d), {x: x for x in xs})
        for v in target.arrows:
            for c in source.objects:
                self.left.setdefault((v, c), {})
        for u in source.arrows:
            for d in target.objects:
                self.right.setdefault((u, d), {})
        self.name = name

    def at(self, d: str, c: str) -> tuple[str, ...]:
        return self.het[(d, c)]

    def lact(self, v: str, c: str, x: str) -> str:
        """Left action of v: d' -> d on x in het(d, c)."""
        return self.left[(v, c)][x]

    def ract(self, u: str, d: str, x: str) -> str:
        """Right action of u: c -> c' on x in het(d, c)."""
        return self.right[(u, d)][x]

    def pairs(self):
        for d in self.target.objects:
            for c in self.source.objects:
                yield d, c

    def elements(self):
        for d, c in self.pairs():
            for x in self.het[(d, c)]:
                yield d, c, x

    def size(self) -> dict[tuple[str, str], int]:
        return {k: len(v) for k, v in self.het.items()}

    def key(self):
        return (self.source, self.target, tuple((p, self.het[p]) for p in self.pairs()),
                tuple(sorted((k, tuple(sorted(m.items()))) for k, m in self.left.items())),
                tuple(sorted((k, tuple(sorted(m.items()))) for k, m in self.right.items())))

    def __eq__(self, other):
        return isinstance(other, Distributor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Distributor({self.name or '?'}: {self.source.name} -|-> {self.target.name})"


class DistTransformation:
    def __init__(self, source: Distributor, target: Distributor, components, name=None):
        if source.source != target.source or source.target != target.target:
            raise EndpointMismatch("transformation between distributors with different endpoints")
        self.source = source
        self.target = target
        self.components: dict[tuple[str, str], dict[str, str]] = {k: dict(v) for k, v in components.items()}
        for p in source.pairs():
            self.components.setdefault(p, {})
        self.name = name

    def __call__(self, d: str, c: str, x: str) -> str:
        return self.components[(d, c)][x]

    def is_iso(self) -> bool:
        return all(sorted(self.components[p].values()) == list(self.target.at(*p))
                   and len(set(self.components[p].values())) == len(self.components[p])
                   for p in self.source.pairs())


@dataclass
class CollageResult:
    glued: FinCategory
    incl_src: FinFunctor
    incl_tgt: FinFunctor
    topology: GrothendieckTopology
    cocone: DistTransformation
    dist: Distributor

    def het_arrow(self, d: str, c: str, x: str) -> str:
        return self._het_ids[(d, c, x)]


# validation

def validate(h) -> ValidationReport:
    if isinstance(h, Distributor):
        return _validate_distributor(h)
    if isinstance(h, DistTransformation):
        return _validate_transformation(h)
    return validate_functor(h)


def _validate_distributor(h: Distributor) -> ValidationReport:
    C, D = h.source, h.target
    for d, c in h.het:
        if not D.has_object(d) or not C.has_object(c):
            raise DanglingReference(f"heteromorphisms given at unknown pair ({d},{c})")
    dar, car = set(D.arrows), set(C.arrows)
    for v, c in h.left:
        if v not in dar or not C.has_object(c):
            raise DanglingReference(f"left action given for unknown ({v},{c})")
    for u, d in h.right:
        if u not in car or not D.has_object(d):
            raise DanglingReference(f"right action given for unknown ({u},{d})")
    rep = ValidationReport()
    for p in h.pairs():
        if len(set(h.het[p])) != len(h.het[p]):
            rep.add("unique-elements", p, f"repeated heteromorphism at {p}")
    for v in D.arrows:
        d2, d = D.src(v), D.tgt(v)
        for c in C.objects:
            _check_map(rep, "left", (v, c), h.left[(v, c)], h.het[(d, c)], h.het[(d2, c)])
    for u in C.arrows:
        c, c2 = C.src(u), C.tgt(u)
        for d in D.objects:
            _check_map(rep, "right", (u, d), h.right[(u, d)], h.het[(d, c)], h.het[(d, c2)])
    if not rep.ok:
        return rep
    for d, c, x in h.elements():
        if h.lact(D.ident(d), c, x) != x:
            rep.add("left-identity", (d, c, x), f"identity of {d} moves {x}")
        if h.ract(C.ident(c), d, x) != x:
            rep.add("right-identity", (d, c, x), f"identity of {c} moves {x}")
    for v, w in D.composable_pairs():
        vw = D.comp(v, w)
        for c in C.objects:
            for x in h.het[(D.tgt(v), c)]:
                lhs = h.lact(vw, c, x)
                rhs = h.lact(w, c, h.lact(v, c, x))
                if lhs != rhs:
                    rep.add("left-composition", (v, w, c, x), f"({v}.{w})*{x}={lhs} but {w}*({v}*{x})={rhs}")
    for u2, u in C.composable_pairs():
        uu = C.comp(u2, u)
        for d in D.objects:
            for x in h.het[(d, C.src(u))]:
                lhs = h.ract(uu, d, x)
                rhs = h.ract(u2, d, h.ract(u, d, x))
                if lhs != rhs:
                    rep.add("right-composition", (u2, u, d, x), f"{x}*({u2}.{u})={lhs} but ({x}*{u})*{u2}={rhs}")
    for v in D.arrows:
        d2, d = D.src(v), D.tgt(v)
        for u in C.arrows:
            for x in h.het[(d, C.src(u))]:
                lhs = h.ract(u, d2, h.lact(v, C.src(u), x))
                rhs = h.lact(v, C.tgt(u), h.ract(u, d, x))
                if lhs != rhs:
                    rep.add("actions-commute", (v, u, x), f"left {v} and right {u} disagree on {x}")
    return rep


def _check_map(rep, side, where, mapping, dom, cod):
    cod_set, dom_set = set(cod), set(dom)
    for x in dom:
        if x not in mapping:
            rep.add(f"{side}-total", where + (x,), f"{side} action of {where[0]} undefined on {x}")
        elif mapping[x] not in cod_set:
            rep.add(f"{side}-typing", where + (x,), f"{side} action of {where[0]} sends {x} outside its codomain")
    for x in mapping:
        if x not in dom_set:
            rep.add(f"{side}-typing", where + (x,), f"{side} action of {where[0]} defined on {x} outside its domain")


def _validate_transformation(t: DistTransformation) -> ValidationReport:
    h, k = t.source, t.target
    C, D = h.source, h.target
    for p in t.components:
        if p not in h.het:
            raise DanglingReference(f"component given at unknown pair {p}")
    rep = ValidationReport()
    for p in h.pairs():
        _check_map(rep, "component", p, t.components[p], h.het[p], k.het[p])
    if not rep.ok:
        return rep
    for v in D.arrows:
        d2, d = D.src(v), D.tgt(v)
        for c in C.objects:
            for x in h.het[(d, c)]:
                if t(d2, c, h.lact(v, c, x)) != k.lact(v, c, t(d, c, x)):
                    rep.add("naturality-left", (v, c, x), f"left square for {v} fails at {x}")
    for u in C.arrows:
        c, c2 = C.src(u), C.tgt(u)
        for d in D.objects:
            for x in h.het[(d, c)]:
                if t(d, c2, h.ract(u, d, x)) != k.ract(u, d, t(d, c, x)):
                    rep.add("naturality-right", (u, d, x), f"right square for {u} fails at {x}")
    return rep


# constructions

def hom_unit(cat: FinCategory) -> Distributor:
    het = {(d, c): cat.hom(d, c) for d in cat.objects for c in cat.objects}
    left = {(v, c): {x: cat.comp(x, v) for x in cat.hom(cat.tgt(v), c)} for v in cat.arrows for c in cat.objects}
    right = {(u, d): {x: cat.comp(u, x) for x in cat.hom(d, cat.src(u))} for u in cat.arrows for d in cat.objects}
    return Distributor(cat, cat, het, left, right, name=f"hom({cat.name})" if cat.name else None)


def representables(f: FinFunctor, variance: str) -> Distributor:
    """covariant: ``C -|-> D`` with het(d, c) = D(d, f c); contravariant: ``D -|-> C`` with het(c, d) = D(f c, d)."""
    C, D = f.source, f.target
    if variance == "covariant":
        het = {(d, c): D.hom(d, f.ob(c)) for d in D.objects for c in C.objects}
        left = {(v, c): {x: D.comp(x, v) for x in D.hom(D.tgt(v), f.ob(c))} for v in D.arrows for c in C.objects}
        right = {(u, d): {x: D.comp(f.ar(u), x) for x in D.hom(d, f.ob(C.src(u)))}
                 for u in C.arrows for d in D.objects}
        return Distributor(C, D, het, left, right, name=f"{D.name}(1,{f.name})")
    if variance == "contravariant":
        het = {(c, d): D.hom(f.ob(c), d) for c in C.objects for d in D.objects}
        left = {(w, d): {x: D.comp(x, f.ar(w)) for x in D.hom(f.ob(C.tgt(w)), d)}
                for w in C.arrows for d in D.objects}
        right = {(v, c): {x: D.comp(v, x) for x in D.hom(f.ob(c), D.src(v))} for v in D.arrows for c in C.objects}
        return Distributor(D, C, het, left, right, name=f"{D.name}({f.name},1)")
    raise ValueError(f"unknown variance {variance!r}")


def classifier(h: Distributor, c: str) -> Presheaf:
    """The presheaf het(-, c) on the target category."""
    h.source.check_object(c)
    D = h.target
    sets = {d: h.het[(d, c)] for d in D.objects}
    actions = {v: h.left[(v, c)] for v in D.arrows}
    return Presheaf(D, sets, actions, name=f"{h.name or 'H'}(-,{c})")


def classifier_map(h: Distributor, u: str) -> PresheafMorphism:
    C, D = h.source, h.target
    c, c2 = C.src(u), C.tgt(u)
    return PresheafMorphism(classifier(h, c), classifier(h, c2), {d: h.right[(u, d)] for d in D.objects})


def tensor_with_classes(g: Distributor, h: Distributor):
    """Coend composite ``g (x) h`` plus the class name of every member ``(d, x, y)``.

    Returns (distributor, classes) with ``classes[(e, c, (d, x, y))]`` the
    name of the class of ``x in h(d, c)``, ``y in g(e, d)``.
    """
    if h.target != g.source:
        raise EndpointMismatch("middle categories differ")
    C, M, E = h.source, h.target, g.target
    het, classes = {}, {}
    for e in E.objects:
        for c in C.objects:
            members = [(d, x, y) for d in M.objects for x in h.het[(d, c)] for y in g.het[(e, d)]]
            uf = UnionFind(members)
            for v in M.arrows:
                d2, d = M.src(v), M.tgt(v)
                for x in h.het[(d, c)]:
                    for y in g.het[(e, d2)]:
                        uf.union((d2, h.lact(v, c, x), y), (d, x, g.ract(v, e, y)))
            named = name_classes(uf.classes(), lambda m: tup(m[1], m[2]), lambda m: tup(m[0], m[1], m[2]))
            het[(e, c)] = [n for n, _ in named]
            for n, ms in named:
                for m in ms:
                    classes[(e, c, m)] = n
    left, right = {}, {}
    for w in E.arrows:
        e2, e = E.src(w), E.tgt(w)
        for c in C.objects:
            left[(w, c)] = {classes[(e, c, (d, x, y))]: classes[(e2, c, (d, x, g.lact(w, d, y)))]
                            for d in M.objects for x in h.het[(d, c)] for y in g.het[(e, d)]}
    for u in C.arrows:
        c, c2 = C.src(u), C.tgt(u)
        for e in E.objects:
            right[(u, e)] = {classes[(e, c, (d, x, y))]: classes[(e, c2, (d, h.ract(u, d, x), y))]
                             for d in M.objects for x in h.het[(d, c)] for y in g.het[(e, d)]}
    name = f"{g.name}*{h.name}" if g.name and h.name else None
    return Distributor(C, E, het, left, right, name=name), classes


def tensor(g: Distributor, h: Distributor, sheafified: GrothendieckTopology | None = None) -> Distributor:
    out = tensor_with_classes(g, h)[0]
    if sheafified is not None:
        out = sheafify_distributor(out, sheafified)[0]
    return out


def _lext(h: Distributor, x: Presheaf):
    if x.base != h.source:
        raise BaseMismatch("extension needs a presheaf on the distributor's source")
    C, D = h.source, h.target
    sets, classes = {}, {}
    for d in D.objects:
        members = [(c, a, e) for c in C.objects for a in h.het[(d, c)] for e in x.at(c)]
        uf = UnionFind(members)
        for u in C.arrows:
            c2, c = C.src(u), C.tgt(u)
            for a in h.het[(d, c2)]:
                for e in x.at(c):
                    uf.union((c, h.ract(u, d, a), e), (c2, a, x.act(u, e)))
        named = name_classes(uf.classes(), lambda m: tup(m[1], m[2]), lambda m: tup(m[0], m[1], m[2]))
        sets[d] = [n for n, _ in named]
        for n, ms in named:
            for m in ms:
                classes[(d, m)] = n
    actions = {}
    for w in D.arrows:
        d2, d = D.src(w), D.tgt(w)
        actions[w] = {classes[(d, (c, a, e))]: classes[(d2, (c, h.lact(w, c, a), e))]
                      for c in C.objects for a in h.het[(d, c)] for e in x.at(c)}
    return Presheaf(D, sets, actions, name=f"lext({x.name or '?'})"), classes


def lext_apply(h: Distributor, x: Presheaf) -> Presheaf:
    """(lext X)(d) = coend over c of het(d, c) x X(c)."""
    return _lext(h, x)[0]


def lext_map(h: Distributor, m: PresheafMorphism) -> PresheafMorphism:
    src, cs = _lext(h, m.source)
    tgt, ct = _lext(h, m.target)
    C, D = h.source, h.target
    comps = {d: {cs[(d, (c, a, e))]: ct[(d, (c, a, m(c, e)))]
                 for c in C.objects for a in h.het[(d, c)] for e in m.source.at(c)} for d in D.objects}
    return PresheafMorphism(src, tgt, comps)


def _rest(h: Distributor, y: Presheaf):
    if y.base != h.target:
        raise BaseMismatch("restriction needs a presheaf on the distributor's target")
    C = h.source
    cls = {c: classifier(h, c) for c in C.objects}
    homs = {c: nat_hom(cls[c], y) for c in C.objects}
    names = {c: [_render_nat(t) for t in homs[c]] for c in C.objects}
    actions = {}
    for u in C.arrows:
        c2, c = C.src(u), C.tgt(u)
        hu = classifier_map(h, u)
        table = dict(zip((_render_nat(t) for t in homs[c2]), names[c2]))
        actions[u] = {n: table[_render_nat(compose_morphisms(t, hu))] for t, n in zip(homs[c], names[c])}
    return Presheaf(C, names, actions, name=f"rest({y.name or '?'})"), homs, names


def rest_apply(h: Distributor, y: Presheaf) -> Presheaf:
    """(rest Y)(c) = Nat(het(-, c), Y)."""
    return _rest(h, y)[0]


def rest_map(h: Distributor, m: PresheafMorphism) -> PresheafMorphism:
    src, homs, names = _rest(h, m.source)
    tgt = _rest(h, m.target)[0]
    comps = {c: {n: _render_nat(compose_morphisms(m, t)) for t, n in zip(homs[c], names[c])}
             for c in h.source.objects}
    return PresheafMorphism(src, tgt, comps)


def image_sieve(h: Distributor, s: Sieve) -> tuple[Presheaf, PresheafMorphism]:
    """Heteromorphisms into apex(s) factoring through an arrow of s."""
    c = s.apex
    if s.base != h.source:
        raise BaseMismatch("sieve does not live on the distributor's source")
    h.source.check_object(c)
    full = classifier(h, c)
    D, C = h.target, h.source
    keep = {d: sorted({h.ract(u, d, x) for u in s.arrows for x in h.het[(d, C.src(u))]}) for d in D.objects}
    actions = {v: {x: h.lact(v, c, x) for x in keep[D.tgt(v)]} for v in D.arrows}
    sub = Presheaf(D, keep, actions, name=f"{h.name or 'H'}[{s.render()}]")
    return sub, PresheafMorphism(sub, full, {d: {x: x for x in keep[d]} for d in D.objects})


def het_pullback_sieve(h: Distributor, s: Sieve, d: str, x: str, image: Presheaf | None = None) -> Sieve:
    """The sieve of v: d' -> d whose left action sends x into the image sieve."""
    img = image if image is not None else image_sieve(h, s)[0]
    D = h.target
    members = {d2: set(img.at(d2)) for d2 in D.objects}
    return Sieve(D, d, frozenset(v for v in D.arrows_into(d) if h.lact(v, s.apex, x) in members[D.src(v)]))


def elements_category(h: Distributor, d: str) -> FinCategory:
    """d|H: objects (c, x) with x in het(d, c); arrows u: c -> c' with x*u = x'."""
    C = h.source
    objs = [(c, x) for c in C.objects for x in h.het[(d, c)]]
    oname = {o: tup(*o) for o in objs}
    arrows, ident, compose = [], {}, {}
    by_src: dict = {}
    for c, x in objs:
        for u in C.arrows_from(c):
            tgt = (C.tgt(u), h.ract(u, d, x))
            a = (f"{u}@{oname[(c, x)]}", oname[(c, x)], oname[tgt])
            arrows.append(a)
            by_src.setdefault((c, x), []).append((u, tgt, a[0]))
        ident[oname[(c, x)]] = f"{C.ident(c)}@{oname[(c, x)]}"
    for c, x in objs:
        for u, mid, name1 in by_src[(c, x)]:
            for u2, _, name2 in by_src[mid]:
                compose[(name2, name1)] = f"{C.comp(u2, u)}@{oname[(c, x)]}"
    return FinCategory(oname.values(), arrows, ident, compose, name=f"{d}|{h.name or 'H'}")


def is_flat(h: Distributor) -> Decision:
    for d in h.target.objects:
        r = is_cofiltered(elements_category(h, d))
        if not r:
            return failed((d,) + tuple(r.witness), f"{d}|H fails: {r.detail}")
    return passed()


# product category D x C^op, used to view a distributor as a presheaf

def _pair_category(D: FinCategory, C: FinCategory) -> FinCategory:
    key = ("pair-category", C)
    if key in D.cache:
        return D.cache[key]
    objs = [tup(d, c) for d in D.objects for c in C.objects]
    arrows, ident, compose = [], {}, {}
    for v in D.arrows:
        for u in C.arrows:
            # (v, u): (src v, tgt u) -> (tgt v, src u)
            arrows.append((tup(v, u), tup(D.src(v), C.tgt(u)), tup(D.tgt(v), C.src(u))))
    for d in D.objects:
        for c in C.objects:
            ident[tup(d, c)] = tup(D.ident(d), C.ident(c))
    for v1 in D.arrows:
        for v2 in D.arrows_into(D.src(v1)):
            for u1 in C.arrows:
                for u2 in C.arrows_from(C.tgt(u1)):
                    compose[(tup(v1, u1), tup(v2, u2))] = tup(D.comp(v1, v2), C.comp(u2, u1))
    cat = FinCategory(objs, arrows, ident, compose)
    D.cache[key] = cat
    return cat


def as_presheaf(h: Distributor) -> Presheaf:
    C, D = h.source, h.target
    P = _pair_category(D, C)
    sets = {tup(d, c): h.het[(d, c)] for d, c in h.pairs()}
    actions = {}
    for v in D.arrows:
        for u in C.arrows:
            d, c2 = D.tgt(v), C.src(u)
            actions[tup(v, u)] = {x: h.ract(u, D.src(v), h.lact(v, c2, x)) for x in h.het[(d, c2)]}
    return Presheaf(P, sets, actions)


def is_isomorphic(h1: Distributor, h2: Distributor, limit: int | None = None) -> Decision:
    if h1.source != h2.source or h1.target != h2.target:
        raise EndpointMismatch("distributors with different endpoints")
    for p in h1.pairs():
        if len(h1.het[p]) != len(h2.het[p]):
            return failed(("cardinality",) + p + (len(h1.het[p]), len(h2.het[p])))
    r = presheaf_isomorphic(as_presheaf(h1), as_presheaf(h2), limit)
    if not r:
        return failed(("no-natural-bijection",))
    iso = r.witness
    return passed(DistTransformation(h1, h2, {p: iso.components[tup(*p)] for p in h1.pairs()}))


# sheafification

def sheafify_distributor(h: Distributor, k: GrothendieckTopology) -> tuple[Distributor, DistTransformation]:
    if k.base != h.target:
        raise BaseMismatch("topology does not live on the distributor's target")
    C, D = h.source, h.target
    sheaves = {c: sheafify(classifier(h, c), k) for c in C.objects}
    het = {(d, c): sheaves[c][0].at(d) for d in D.objects for c in C.objects}
    left = {(v, c): sheaves[c][0].actions[v] for v in D.arrows for c in C.objects}
    right = {}
    for u in C.arrows:
        m = sheafify_map(classifier_map(h, u), k)
        for d in D.objects:
            right[(u, d)] = m.components[d]
    a = Distributor(C, D, het, left, right, name=f"a({h.name})" if h.name else None)
    unit = DistTransformation(h, a, {(d, c): sheaves[c][1].components[d] for d in D.objects for c in C.objects})
    return a, unit


# gluing

def collage(h: Distributor, j: GrothendieckTopology, k: GrothendieckTopology) -> CollageResult:
    C, D = h.source, h.target
    if j.base != C or k.base != D:
        raise BaseMismatch("topologies do not match the distributor's endpoints")
    plain = {}
    for d, c, x in h.elements():
        plain.setdefault(x, []).append((d, c))
    unique = all(len(v) == 1 for v in plain.values())
    hid = {(d, c, x): f"h/{x}" if unique else f"h/{d}/{c}/{x}" for d, c, x in h.elements()}

    objects = [f"0/{d}" for d in D.objects] + [f"1/{c}" for c in C.objects]
    morphisms = [(f"0/{v}", f"0/{D.src(v)}", f"0/{D.tgt(v)}") for v in D.arrows]
    morphisms += [(f"1/{u}", f"1/{C.src(u)}", f"1/{C.tgt(u)}") for u in C.arrows]
    morphisms += [(hid[(d, c, x)], f"0/{d}", f"1/{c}") for d, c, x in h.elements()]
    identity = {f"0/{d}": f"0/{D.ident(d)}" for d in D.objects}
    identity.update({f"1/{c}": f"1/{C.ident(c)}" for c in C.objects})
    compose = {}
    for v, w in D.composable_pairs():
        compose[(f"0/{v}", f"0/{w}")] = f"0/{D.comp(v, w)}"
    for u, w in C.composable_pairs():
        compose[(f"1/{u}", f"1/{w}")] = f"1/{C.comp(u, w)}"
    for d, c, x in h.elements():
        for u in C.arrows_from(c):
            compose[(f"1/{u}", hid[(d, c, x)])] = hid[(d, C.tgt(u), h.ract(u, d, x))]
        for v in D.arrows_into(d):
            compose[(hid[(d, c, x)], f"0/{v}")] = hid[(D.src(v), c, h.lact(v, c, x))]
    gl = FinCategory(objects, morphisms, identity, compose, name=f"Gl({h.name})" if h.name else None)

    iota_c = FinFunctor(C, gl, {c: f"1/{c}" for c in C.objects}, {u: f"1/{u}" for u in C.arrows}, name="iota_C")
    iota_d = FinFunctor(D, gl, {d: f"0/{d}" for d in D.objects}, {v: f"0/{v}" for v in D.arrows}, name="iota_D")

    gens: dict = {o: set() for o in objects}
    for d in D.objects:
        for r in k.covering[d]:
            gens[f"0/{d}"].add(Sieve(gl, f"0/{d}", frozenset(f"0/{v}" for v in r.arrows)))
    for c in C.objects:
        for s in j.covering[c]:
            gens[f"1/{c}"].add(Sieve.generated(gl, f"1/{c}", [f"1/{u}" for u in s.arrows]))
            img = image_sieve(h, s)[0]
            for d in D.objects:
                for x in h.het[(d, c)]:
                    pb = het_pullback_sieve(h, s, d, x, img)
                    gens[f"0/{d}"].add(Sieve(gl, f"0/{d}", frozenset(f"0/{v}" for v in pb.arrows)))
    top = saturate(Coverage(gl, gens))

    # cocone: Gl[1, iota_D] (x) H => Gl[1, iota_C], [(x, v)] |-> x.v
    left_rep = representables(iota_d, "covariant")
    tl, classes = tensor_with_classes(left_rep, h)
    tr = representables(iota_c, "covariant")
    comps: dict = {p: {} for p in tl.pairs()}
    for (g, c, (d, x, w)), n in classes.items():
        comps[(g, c)][n] = gl.comp(hid[(d, c, x)], w)
    cocone = DistTransformation(tl, tr, comps, name="phi_H")
    res = CollageResult(gl, iota_c, iota_d, top, cocone, h)
    res._het_ids = hid
    return res


def universal_from_cocone(p: FinFunctor, q: FinFunctor, phi: DistTransformation, col: CollageResult) -> FinFunctor:
    """The functor Gl(H) -> B that is q on the D-side, p on the C-side, and phi on formal arrows."""
    h, gl = col.dist, col.glued
    C, D, B = h.source, h.target, p.target
    if p.source != C or q.source != D or q.target != B:
        raise EndpointMismatch("p and q must start at the two sides and share a target")
    expected, classes = tensor_with_classes(representables(q, "covariant"), h)
    if phi.source != expected or phi.target != representables(p, "covariant"):
        raise CoconeMismatch("phi is not a transformation B[1,q] (x) H => B[1,p]")
    if not validate(phi).ok:
        raise CoconeMismatch("phi is not natural")
    omap = {f"0/{d}": q.ob(d) for d in D.objects}
    omap.update({f"1/{c}": p.ob(c) for c in C.objects})
    mmap = {f"0/{v}": q.ar(v) for v in D.arrows}
    mmap.update({f"1/{u}": p.ar(u) for u in C.arrows})
    for d, c, x in h.elements():
        qd = q.ob(d)
        mmap[col.het_arrow(d, c, x)] = phi(qd, c, classes[(qd, c, (d, x, B.ident(qd)))])
    # whiskering back along phi_H must give phi: phi[(x, w)] = <phi>(x) . w
    for (b, c, (d, x, w)), n in classes.items():
        if phi(b, c, n) != B.comp(mmap[col.het_arrow(d, c, x)], w):
            raise CoconeMismatch(f"phi is not determined by its values at identities ({b},{c},{n})")
    fun = FinFunctor(gl, B, omap, mmap, name="<phi>")
    if not validate_functor(fun).ok:
        raise CoconeMismatch("induced assignment is not a functor")
    return fun
