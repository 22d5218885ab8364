"""Explicit finite categories and functors."""
from __future__ import annotations

from functools import cached_property
from itertools import combinations, product

from . import config
from .errors import CapExceeded, DanglingReference, UnknownObject
from .results import Decision, ValidationReport, failed, passed


def identity_name(obj: str) -> str:
    return f"id_{obj}"


class FinCategory:
    """A finite category given by total tables.

    ``compose[(g, f)]`` is ``g . f`` and must be defined exactly for the
    pairs with ``src(g) == tgt(f)``.
    """

    def __init__(self, objects, morphisms, identity, compose, name: str | None = None):
        self.objects: tuple[str, ...] = tuple(sorted(objects))
        self.morphism_list: tuple[tuple[str, str, str], ...] = tuple(sorted(tuple(m) for m in morphisms))
        self.identity: dict[str, str] = dict(identity)
        self.compose_table: dict[tuple[str, str], str] = dict(compose)
        self.name = name
        self._ends = {m: (s, t) for m, s, t in self.morphism_list}
        self.cache: dict = {}

    @classmethod
    def build(cls, objects, arrows, composes=(), name=None) -> FinCategory:
        """Build from non-identity arrows ``(id, src, tgt)`` and explicit composites.

        Identities are named ``id_<obj>`` and compositions with them are
        filled in; explicit ``composes`` entries ``(g, f, h)`` win.
        """
        objects = list(objects)
        identity = {o: identity_name(o) for o in objects}
        morphisms = [(identity[o], o, o) for o in objects] + [tuple(a) for a in arrows]
        table = {}
        for m, s, t in morphisms:
            if s in identity and t in identity:
                table[(identity[t], m)] = m
                table[(m, identity[s])] = m
        for g, f, h in composes:
            table[(g, f)] = h
        return cls(objects, morphisms, identity, table, name=name)

    # structure

    def key(self):
        return (self.objects, self.morphism_list, tuple(sorted(self.identity.items())),
                tuple(sorted(self.compose_table.items())))

    def __eq__(self, other):
        return isinstance(other, FinCategory) and (self is other or self.key() == other.key())

    @cached_property
    def _hash(self):
        return hash(self.key())

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FinCategory({self.name or '?'}, {len(self.objects)} objects, {len(self.morphism_list)} morphisms)"

    @cached_property
    def arrows(self) -> tuple[str, ...]:
        return tuple(m for m, _, _ in self.morphism_list)

    def src(self, m: str) -> str:
        return self._ends[m][0]

    def tgt(self, m: str) -> str:
        return self._ends[m][1]

    def has_object(self, c) -> bool:
        return c in self._object_set

    @cached_property
    def _object_set(self):
        return frozenset(self.objects)

    def check_object(self, c):
        if c not in self._object_set:
            raise UnknownObject(f"{c!r} is not an object of {self.name or 'the category'}")

    def ident(self, c: str) -> str:
        return self.identity[c]

    def comp(self, g: str, f: str) -> str:
        """g . f"""
        return self.compose_table[(g, f)]

    def is_identity(self, m: str) -> bool:
        return self.identity.get(self.src(m)) == m

    @cached_property
    def _homs(self) -> dict[tuple[str, str], tuple[str, ...]]:
        homs: dict = {}
        for m, s, t in self.morphism_list:
            homs.setdefault((s, t), []).append(m)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._homs.get((a, b), ())

    @cached_property
    def _into(self):
        into: dict = {o: [] for o in self.objects}
        for m, s, t in self.morphism_list:
            into.setdefault(t, []).append(m)
        return {k: tuple(v) for k, v in into.items()}

    @cached_property
    def _out(self):
        out: dict = {o: [] for o in self.objects}
        for m, s, t in self.morphism_list:
            out.setdefault(s, []).append(m)
        return {k: tuple(v) for k, v in out.items()}

    def arrows_into(self, c: str) -> tuple[str, ...]:
        return self._into.get(c, ())

    def arrows_from(self, c: str) -> tuple[str, ...]:
        return self._out.get(c, ())

    def composable_pairs(self):
        for g in self.arrows:
            for f in self.arrows_into(self.src(g)):
                yield g, f


def op(cat: FinCategory) -> FinCategory:
    """Opposite category with the same identifiers; op(op(C)) == C."""
    name = None
    if cat.name:
        name = cat.name[:-3] if cat.name.endswith("^op") else cat.name + "^op"
    return FinCategory(
        cat.objects,
        [(m, t, s) for m, s, t in cat.morphism_list],
        cat.identity,
        {(f, g): h for (g, f), h in cat.compose_table.items()},
        name=name,
    )


def discrete(objects, name=None) -> FinCategory:
    return FinCategory.build(objects, [], name=name)


class FinFunctor:
    def __init__(self, source: FinCategory, target: FinCategory, object_map, morphism_map, name=None):
        self.source = source
        self.target = target
        self.object_map: dict[str, str] = dict(object_map)
        self.morphism_map: dict[str, str] = dict(morphism_map)
        self.name = name

    def __call__(self, x: str) -> str:
        """Apply to an object or a morphism (identifiers are disjoint in practice)."""
        if x in self.morphism_map:
            return self.morphism_map[x]
        return self.object_map[x]

    def ob(self, c: str) -> str:
        return self.object_map[c]

    def ar(self, u: str) -> str:
        return self.morphism_map[u]

    def key(self):
        return (self.source, self.target, tuple(sorted(self.object_map.items())),
                tuple(sorted(self.morphism_map.items())))

    def __eq__(self, other):
        return isinstance(other, FinFunctor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FinFunctor({self.name or '?'}: {self.source.name} -> {self.target.name})"


def identity_functor(cat: FinCategory) -> FinFunctor:
    return FinFunctor(cat, cat, {o: o for o in cat.objects}, {m: m for m in cat.arrows},
                      name=f"id_{cat.name}" if cat.name else None)


def compose_functors(g: FinFunctor, f: FinFunctor) -> FinFunctor:
    """g . f"""
    return FinFunctor(
        f.source, g.target,
        {c: g.ob(f.ob(c)) for c in f.source.objects},
        {u: g.ar(f.ar(u)) for u in f.source.arrows},
        name=f"{g.name}.{f.name}" if g.name and f.name else None,
    )


def constant_functor(source: FinCategory, target: FinCategory, obj: str) -> FinFunctor:
    idt = target.ident(obj)
    return FinFunctor(source, target, {c: obj for c in source.objects}, {u: idt for u in source.arrows})


# validation

def validate(entity) -> ValidationReport:
    if isinstance(entity, FinCategory):
        return _validate_category(entity)
    if isinstance(entity, FinFunctor):
        return _validate_functor(entity)
    raise TypeError(f"cannot validate {type(entity).__name__}")


def _check_references(cat: FinCategory):
    objs = set(cat.objects)
    ids = {m for m, _, _ in cat.morphism_list}
    for m, s, t in cat.morphism_list:
        for o in (s, t):
            if o not in objs:
                raise DanglingReference(f"morphism {m} mentions unknown object {o}")
    for o, m in cat.identity.items():
        if o not in objs:
            raise DanglingReference(f"identity declared for unknown object {o}")
        if m not in ids:
            raise DanglingReference(f"identity {m} of {o} is not a morphism")
    for (g, f), h in cat.compose_table.items():
        for m in (g, f, h):
            if m not in ids:
                raise DanglingReference(f"composition table mentions unknown morphism {m}")


def _validate_category(cat: FinCategory) -> ValidationReport:
    _check_references(cat)
    rep = ValidationReport()
    seen = set()
    for o in cat.objects:
        if o in seen:
            rep.add("unique-ids", (o,), f"object {o} declared twice")
        seen.add(o)
    seen_m = set()
    for m, _, _ in cat.morphism_list:
        if m in seen_m:
            rep.add("unique-ids", (m,), f"morphism {m} declared twice")
        if m in seen:
            rep.add("unique-ids", (m,), f"{m} names both an object and a morphism")
        seen_m.add(m)
    for o in cat.objects:
        m = cat.identity.get(o)
        if m is None:
            rep.add("identity-missing", (o,), f"no identity for {o}")
        elif (cat.src(m), cat.tgt(m)) != (o, o):
            rep.add("identity-typing", (o, m), f"identity {m} of {o} is not an endomorphism of {o}")

    for (g, f), h in sorted(cat.compose_table.items()):
        if cat.src(g) != cat.tgt(f):
            rep.add("composition-domain", (g, f), f"{g}.{f} defined for a non-composable pair")
        elif (cat.src(h), cat.tgt(h)) != (cat.src(f), cat.tgt(g)):
            rep.add("composition-typing", (g, f), f"{g}.{f}={h} has the wrong type")
    for g, f in cat.composable_pairs():
        if (g, f) not in cat.compose_table:
            rep.add("composition-total", (g, f), f"{g}.{f} is undefined")
    if not rep.ok:
        return rep

    for f in cat.arrows:
        i_t, i_s = cat.identity[cat.tgt(f)], cat.identity[cat.src(f)]
        if cat.comp(i_t, f) != f:
            rep.add("identity-left", (i_t, f), f"{i_t}.{f}={cat.comp(i_t, f)} instead of {f}")
        if cat.comp(f, i_s) != f:
            rep.add("identity-right", (f, i_s), f"{f}.{i_s}={cat.comp(f, i_s)} instead of {f}")
    for h in cat.arrows:
        for g in cat.arrows_into(cat.src(h)):
            hg = cat.comp(h, g)
            for f in cat.arrows_into(cat.src(g)):
                lhs = cat.comp(h, cat.comp(g, f))
                rhs = cat.comp(hg, f)
                if lhs != rhs:
                    rep.add("associativity", (h, g, f),
                            f"{h}.({g}.{f})={lhs} but ({h}.{g}).{f}={rhs}")
    return rep


def _validate_functor(fun: FinFunctor) -> ValidationReport:
    src, tgt = fun.source, fun.target
    for c in src.objects:
        if c not in fun.object_map:
            raise DanglingReference(f"functor has no image for object {c}")
        if not tgt.has_object(fun.object_map[c]):
            raise DanglingReference(f"object image {fun.object_map[c]} is not in the target")
    tgt_ids = set(tgt.arrows)
    for u in src.arrows:
        if u not in fun.morphism_map:
            raise DanglingReference(f"functor has no image for morphism {u}")
        if fun.morphism_map[u] not in tgt_ids:
            raise DanglingReference(f"morphism image {fun.morphism_map[u]} is not in the target")
    rep = ValidationReport()
    for u in src.arrows:
        fu = fun.ar(u)
        want = (fun.ob(src.src(u)), fun.ob(src.tgt(u)))
        if (tgt.src(fu), tgt.tgt(fu)) != want:
            rep.add("functor-typing", (u, fu), f"{u} maps to {fu} which is not {want[0]}->{want[1]}")
    if not rep.ok:
        return rep
    for c in src.objects:
        if fun.ar(src.ident(c)) != tgt.ident(fun.ob(c)):
            rep.add("functor-identity", (c,), f"identity of {c} not preserved")
    for g, f in src.composable_pairs():
        lhs = fun.ar(src.comp(g, f))
        rhs = tgt.comp(fun.ar(g), fun.ar(f))
        if lhs != rhs:
            rep.add("functor-composition", (g, f), f"F({g}.{f})={lhs} but F({g}).F({f})={rhs}")
    return rep


# cofilteredness

def is_cofiltered(cat: FinCategory) -> Decision:
    """Nonempty, spans over every pair of objects, and every parallel pair equalized."""
    if not cat.objects:
        return failed(("nonempty",), "no objects")
    for a, b in combinations(cat.objects, 2):
        if not any(cat.hom(c, a) and cat.hom(c, b) for c in cat.objects):
            return failed(("span", a, b), f"no span over {a} and {b}")
    for a, b in product(cat.objects, repeat=2):
        for u, u2 in combinations(cat.hom(a, b), 2):
            if not any(cat.comp(u, w) == cat.comp(u2, w) for w in cat.arrows_into(a)):
                return failed(("equalize", u, u2), f"{u} and {u2} are not equalized")
    return passed()


# functor enumeration

def enumerate_functors(source: FinCategory, target: FinCategory, limit: int | None = None) -> list[FinFunctor]:
    """All functors source -> target, in lexicographic order of their assignments."""
    budget = [config.cap(limit)]
    found = []
    free = [u for u in source.arrows if not source.is_identity(u)]

    def composite_ok(mmap, omap):
        for g, f in source.composable_pairs():
            if g in mmap and f in mmap:
                h = source.comp(g, f)
                if h in mmap and target.comp(mmap[g], mmap[f]) != mmap[h]:
                    return False
        return True

    for images in product(target.objects, repeat=len(source.objects)):
        omap = dict(zip(source.objects, images))
        mmap = {source.ident(c): target.ident(omap[c]) for c in source.objects}

        def extend(k):
            if k == len(free):
                found.append(FinFunctor(source, target, omap, dict(mmap)))
                return
            u = free[k]
            for cand in target.hom(omap[source.src(u)], omap[source.tgt(u)]):
                budget[0] -= 1
                if budget[0] < 0:
                    raise CapExceeded("functor enumeration exceeded the cap")
                mmap[u] = cand
                if composite_ok(mmap, omap):
                    extend(k + 1)
                del mmap[u]

        extend(0)
    return found


def find_isomorphism(a: FinCategory, b: FinCategory) -> FinFunctor | None:
    if len(a.objects) != len(b.objects) or len(a.arrows) != len(b.arrows):
        return None
    for f in enumerate_functors(a, b):
        if len(set(f.object_map.values())) == len(a.objects) and len(set(f.morphism_map.values())) == len(a.arrows):
            return f
    return None
