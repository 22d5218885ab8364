"""Finite presheaves, sieves, pointwise (co)limits and hom enumeration."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

from . import config
from .errors import BaseMismatch, CapExceeded, DanglingReference, ShapeMismatch, TargetMismatch
from .fincat import FinCategory, FinFunctor
from .naming import UnionFind, name_classes, tup
from .results import Decision, ValidationReport, failed, passed


class Presheaf:
    """Contravariant functor from ``base`` to finite sets of string names.

    ``actions[u]`` for ``u: c' -> c`` maps ``sets[c]`` to ``sets[c']``.
    Identity actions are filled in when omitted.
    """

    def __init__(self, base: FinCategory, sets, actions=None, name=None):
        self.base = base
        self.sets: dict[str, tuple[str, ...]] = {c: tuple(sorted(v)) for c, v in sets.items()}
        for c in base.objects:
            self.sets.setdefault(c, ())
        acts = {u: dict(m) for u, m in (actions or {}).items()}
        for c in base.objects:
            ic = base.ident(c)
            if ic not in acts:
                acts[ic] = {e: e for e in self.sets[c]}
        for u in base.arrows:
            acts.setdefault(u, {})
        self.actions: dict[str, dict[str, str]] = acts
        self.name = name

    def at(self, c: str) -> tuple[str, ...]:
        return self.sets[c]

    def act(self, u: str, e: str) -> str:
        return self.actions[u][e]

    def size(self) -> dict[str, int]:
        return {c: len(self.sets[c]) for c in self.base.objects}

    def elements(self):
        for c in self.base.objects:
            for e in self.sets[c]:
                yield c, e

    def key(self):
        return (self.base, tuple((c, self.sets[c]) for c in self.base.objects),
                tuple((u, tuple(sorted(self.actions[u].items()))) for u in self.base.arrows))

    def __eq__(self, other):
        return isinstance(other, Presheaf) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        sizes = ", ".join(f"{c}:{n}" for c, n in self.size().items())
        return f"Presheaf({self.name or '?'}; {sizes})"


class PresheafMorphism:
    def __init__(self, source: Presheaf, target: Presheaf, components, name=None):
        self.source = source
        self.target = target
        self.components: dict[str, dict[str, str]] = {c: dict(m) for c, m in components.items()}
        for c in source.base.objects:
            self.components.setdefault(c, {})
        self.name = name

    def __call__(self, c: str, e: str) -> str:
        return self.components[c][e]

    def key(self):
        objs = self.source.base.objects
        return tuple(tuple(sorted(self.components[c].items())) for c in objs)

    def __eq__(self, other):
        return (isinstance(other, PresheafMorphism) and self.source == other.source
                and self.target == other.target and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"PresheafMorphism({self.source.name or '?'} -> {self.target.name or '?'})"

    def is_injective(self) -> bool:
        return all(len(set(m.values())) == len(m) for m in self.components.values())

    def is_surjective(self) -> bool:
        return all(set(self.components[c].values()) == set(self.target.at(c))
                   for c in self.source.base.objects)

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()


def identity_morphism(x: Presheaf) -> PresheafMorphism:
    return PresheafMorphism(x, x, {c: {e: e for e in x.at(c)} for c in x.base.objects})


def compose_morphisms(g: PresheafMorphism, f: PresheafMorphism) -> PresheafMorphism:
    """g . f"""
    return PresheafMorphism(f.source, g.target, {
        c: {e: g.components[c][f.components[c][e]] for e in f.source.at(c)}
        for c in f.source.base.objects
    })


@dataclass(frozen=True)
class Sieve:
    base: FinCategory
    apex: str
    arrows: frozenset

    @staticmethod
    def generated(cat: FinCategory, apex: str, gens) -> Sieve:
        """Close ``gens`` under precomposition."""
        cat.check_object(apex)
        out = set()
        for g in gens:
            if cat.tgt(g) != apex:
                raise TargetMismatch(f"{g} does not land in {apex}")
            for w in cat.arrows_into(cat.src(g)):
                out.add(cat.comp(g, w))
        return Sieve(cat, apex, frozenset(out))

    @staticmethod
    def maximal(cat: FinCategory, apex: str) -> Sieve:
        cat.check_object(apex)
        return Sieve(cat, apex, frozenset(cat.arrows_into(apex)))

    @staticmethod
    def empty(cat: FinCategory, apex: str) -> Sieve:
        cat.check_object(apex)
        return Sieve(cat, apex, frozenset())

    def sort_key(self):
        return (self.apex, tuple(sorted(self.arrows)))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __le__(self, other):
        return self.arrows <= other.arrows

    def is_maximal(self) -> bool:
        return self.base.ident(self.apex) in self.arrows

    def __and__(self, other: Sieve) -> Sieve:
        return Sieve(self.base, self.apex, self.arrows & other.arrows)

    def __contains__(self, u):
        return u in self.arrows

    def __len__(self):
        return len(self.arrows)

    def render(self) -> str:
        return f"{self.apex}<={{" + " ".join(sorted(self.arrows)) + "}"

    def __repr__(self):
        return f"Sieve({self.render()})"


def pullback_sieve(s: Sieve, v: str) -> Sieve:
    cat = s.base
    if cat.tgt(v) != s.apex:
        raise TargetMismatch(f"{v} does not land in the apex {s.apex}")
    d = cat.src(v)
    return Sieve(cat, d, frozenset(w for w in cat.arrows_into(d) if cat.comp(v, w) in s.arrows))


def all_sieves(cat: FinCategory, c: str, limit: int | None = None) -> tuple[Sieve, ...]:
    """Every sieve on c, sorted; cached on the category."""
    key = ("sieves", c)
    if key in cat.cache:
        return cat.cache[key]
    cat.check_object(c)
    cap = config.cap(limit)
    principal = [Sieve.generated(cat, c, [u]).arrows for u in cat.arrows_into(c)]
    found = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for s in frontier:
            for p in principal:
                t = s | p
                if t not in found:
                    found.add(t)
                    nxt.append(t)
                    if len(found) > cap:
                        raise CapExceeded(f"more than {cap} sieves on {c}")
        frontier = nxt
    out = tuple(sorted((Sieve(cat, c, s) for s in found), key=Sieve.sort_key))
    cat.cache[key] = out
    return out


def yoneda(cat: FinCategory, c: str) -> Presheaf:
    cat.check_object(c)
    sets = {d: cat.hom(d, c) for d in cat.objects}
    actions = {u: {g: cat.comp(g, u) for g in sets[cat.tgt(u)]} for u in cat.arrows}
    return Presheaf(cat, sets, actions, name=f"y({c})")


def sieve_presheaf(s: Sieve) -> Presheaf:
    """The sieve as a subpresheaf of the representable on its apex."""
    cat = s.base
    sets = {d: tuple(u for u in cat.hom(d, s.apex) if u in s.arrows) for d in cat.objects}
    actions = {u: {g: cat.comp(g, u) for g in sets[cat.tgt(u)]} for u in cat.arrows}
    return Presheaf(cat, sets, actions, name=s.render())


def sieve_inclusion(s: Sieve) -> PresheafMorphism:
    sp = sieve_presheaf(s)
    return PresheafMorphism(sp, yoneda(s.base, s.apex), {d: {u: u for u in sp.at(d)} for d in s.base.objects})


def terminal(base: FinCategory) -> Presheaf:
    return Presheaf(base, {c: ("*",) for c in base.objects},
                    {u: {"*": "*"} for u in base.arrows}, name="1")


def initial(base: FinCategory) -> Presheaf:
    return Presheaf(base, {c: () for c in base.objects}, name="0")


def _same_base(items):
    bases = {id(x.base): x.base for x in items}
    if len(bases) > 1:
        first = items[0].base
        if any(x.base != first for x in items):
            raise BaseMismatch("presheaves live on different categories")


# limits

def product(*factors: Presheaf, base: FinCategory | None = None) -> tuple[Presheaf, list[PresheafMorphism]]:
    if not factors:
        if base is None:
            raise ShapeMismatch("empty product needs a base category")
        return terminal(base), []
    _same_base(factors)
    cat = factors[0].base
    tuples = {c: list(cartesian(*(f.at(c) for f in factors))) for c in cat.objects}
    names = {c: {t: tup(*t) for t in tuples[c]} for c in cat.objects}
    sets = {c: list(names[c].values()) for c in cat.objects}
    actions = {}
    for u in cat.arrows:
        c = cat.tgt(u)
        actions[u] = {names[c][t]: names[cat.src(u)][tuple(f.act(u, e) for f, e in zip(factors, t))]
                      for t in tuples[c]}
    p = Presheaf(cat, sets, actions, name="x".join(f.name or "?" for f in factors))
    projs = [PresheafMorphism(p, f, {c: {names[c][t]: t[k] for t in tuples[c]} for c in cat.objects})
             for k, f in enumerate(factors)]
    return p, projs


def _subpresheaf(x: Presheaf, keep: dict[str, set], name=None) -> tuple[Presheaf, PresheafMorphism]:
    cat = x.base
    sets = {c: [e for e in x.at(c) if e in keep[c]] for c in cat.objects}
    actions = {u: {e: x.act(u, e) for e in sets[cat.tgt(u)]} for u in cat.arrows}
    sub = Presheaf(cat, sets, actions, name=name)
    return sub, PresheafMorphism(sub, x, {c: {e: e for e in sets[c]} for c in cat.objects})


def equalizer(f: PresheafMorphism, g: PresheafMorphism) -> tuple[Presheaf, list[PresheafMorphism]]:
    if f.source != g.source or f.target != g.target:
        raise ShapeMismatch("equalizer needs a parallel pair")
    x = f.source
    keep = {c: {e for e in x.at(c) if f(c, e) == g(c, e)} for c in x.base.objects}
    sub, incl = _subpresheaf(x, keep, name="eq")
    return sub, [incl]


def pullback(f: PresheafMorphism, g: PresheafMorphism) -> tuple[Presheaf, list[PresheafMorphism]]:
    if f.target != g.target:
        raise ShapeMismatch("pullback needs a cospan")
    prod, (p1, p2) = product(f.source, g.source)
    cat = prod.base
    keep = {c: {e for e in prod.at(c) if f(c, p1(c, e)) == g(c, p2(c, e))} for c in cat.objects}
    sub, incl = _subpresheaf(prod, keep, name="pb")
    return sub, [compose_morphisms(p1, incl), compose_morphisms(p2, incl)]


def limit(shape: str, diagram, base: FinCategory | None = None):
    """Pointwise limit; ``diagram`` is a list of presheaves or of morphisms, per shape."""
    diagram = list(diagram)
    if shape == "terminal":
        if diagram:
            raise ShapeMismatch("terminal takes an empty diagram")
        if base is None:
            raise ShapeMismatch("terminal needs a base category")
        return terminal(base), []
    if shape == "product":
        if not all(isinstance(x, Presheaf) for x in diagram):
            raise ShapeMismatch("product takes presheaves")
        return product(*diagram, base=base)
    if shape in ("equalizer", "pullback"):
        if len(diagram) != 2 or not all(isinstance(m, PresheafMorphism) for m in diagram):
            raise ShapeMismatch(f"{shape} takes two morphisms")
        return (equalizer if shape == "equalizer" else pullback)(*diagram)
    raise ShapeMismatch(f"unknown limit shape {shape!r}")


# colimits

def coproduct(*summands: Presheaf, base: FinCategory | None = None) -> tuple[Presheaf, list[PresheafMorphism]]:
    if not summands:
        if base is None:
            raise ShapeMismatch("empty coproduct needs a base category")
        return initial(base), []
    _same_base(summands)
    cat = summands[0].base
    sets = {c: [tup(k, e) for k, x in enumerate(summands) for e in x.at(c)] for c in cat.objects}
    actions = {u: {tup(k, e): tup(k, x.act(u, e)) for k, x in enumerate(summands) for e in x.at(cat.tgt(u))}
               for u in cat.arrows}
    s = Presheaf(cat, sets, actions, name="+".join(x.name or "?" for x in summands))
    injs = [PresheafMorphism(x, s, {c: {e: tup(k, e) for e in x.at(c)} for c in cat.objects})
            for k, x in enumerate(summands)]
    return s, injs


def quotient(x: Presheaf, pairs_at: dict[str, list[tuple[str, str]]]) -> tuple[Presheaf, PresheafMorphism]:
    """Quotient of ``x`` by the pointwise equivalence generated by ``pairs_at``.

    The relation must be compatible with the actions (as for a coequalizer
    of natural maps).  Classes are named by their least member.
    """
    cat = x.base
    rep = {}
    for c in cat.objects:
        uf = UnionFind(x.at(c))
        for a, b in pairs_at.get(c, ()):
            uf.union(a, b)
        for name, members in name_classes(uf.classes(), str):
            for m in members:
                rep[(c, m)] = name
    sets = {c: sorted({rep[(c, e)] for e in x.at(c)}) for c in cat.objects}
    actions = {u: {rep[(cat.tgt(u), e)]: rep[(cat.src(u), x.act(u, e))] for e in x.at(cat.tgt(u))}
               for u in cat.arrows}
    q = Presheaf(cat, sets, actions, name=f"{x.name or '?'}/~")
    return q, PresheafMorphism(x, q, {c: {e: rep[(c, e)] for e in x.at(c)} for c in cat.objects})


def coequalizer(f: PresheafMorphism, g: PresheafMorphism) -> tuple[Presheaf, list[PresheafMorphism]]:
    if f.source != g.source or f.target != g.target:
        raise ShapeMismatch("coequalizer needs a parallel pair")
    pairs = {c: [(f(c, e), g(c, e)) for e in f.source.at(c)] for c in f.source.base.objects}
    q, proj = quotient(f.target, pairs)
    return q, [proj]


def colimit(shape: str, diagram, base: FinCategory | None = None):
    diagram = list(diagram)
    if shape == "initial":
        if diagram:
            raise ShapeMismatch("initial takes an empty diagram")
        if base is None:
            raise ShapeMismatch("initial needs a base category")
        return initial(base), []
    if shape == "coproduct":
        if not all(isinstance(x, Presheaf) for x in diagram):
            raise ShapeMismatch("coproduct takes presheaves")
        return coproduct(*diagram, base=base)
    if shape == "coequalizer":
        if len(diagram) != 2 or not all(isinstance(m, PresheafMorphism) for m in diagram):
            raise ShapeMismatch("coequalizer takes two morphisms")
        return coequalizer(*diagram)
    raise ShapeMismatch(f"unknown colimit shape {shape!r}")


def image_factorization(m: PresheafMorphism) -> tuple[Presheaf, PresheafMorphism, PresheafMorphism]:
    cat = m.source.base
    keep = {c: set(m.components[c].values()) for c in cat.objects}
    img, mono = _subpresheaf(m.target, keep, name="im")
    epi = PresheafMorphism(m.source, img, m.components)
    return img, epi, mono


# hom enumeration

def iter_nat(f: Presheaf, g: Presheaf, injective: bool = False, limit: int | None = None):
    """Yield natural transformations f -> g as {(c, e): value} assignments.

    Backtracking over elements of f with forced values propagated along
    restriction maps; every tried candidate counts against the cap.
    """
    if f.base != g.base:
        raise BaseMismatch("nat_hom needs presheaves on one base")
    cat = f.base
    budget = config.cap(limit)
    cells = [(c, e) for c in cat.objects for e in f.at(c)]
    if any(not g.at(c) for c, _ in cells):
        return
    into = {c: cat.arrows_into(c) for c in cat.objects}
    assign: dict = {}
    used: dict = {c: {} for c in cat.objects}
    counter = [0]

    def push(c, e, val, trail) -> bool:
        stack = [(c, e, val)]
        while stack:
            c0, e0, v0 = stack.pop()
            cur = assign.get((c0, e0))
            if cur is not None:
                if cur != v0:
                    return False
                continue
            if injective:
                owner = used[c0].get(v0)
                if owner is not None and owner != e0:
                    return False
                used[c0][v0] = e0
            assign[(c0, e0)] = v0
            trail.append((c0, e0, v0))
            for u in into[c0]:
                stack.append((cat.src(u), f.act(u, e0), g.act(u, v0)))
        return True

    def undo(trail):
        for c0, e0, v0 in reversed(trail):
            del assign[(c0, e0)]
            if injective and used[c0].get(v0) == e0:
                del used[c0][v0]

    def search(k):
        while k < len(cells) and cells[k] in assign:
            k += 1
        if k == len(cells):
            yield dict(assign)
            return
        c, e = cells[k]
        for v in g.at(c):
            counter[0] += 1
            if counter[0] > budget:
                raise CapExceeded(f"hom enumeration exceeded {budget} candidates")
            trail: list = []
            if push(c, e, v, trail):
                yield from search(k + 1)
            undo(trail)

    yield from search(0)


def _as_morphism(f, g, assignment) -> PresheafMorphism:
    comps: dict = {c: {} for c in f.base.objects}
    for (c, e), v in assignment.items():
        comps[c][e] = v
    return PresheafMorphism(f, g, comps)


def nat_hom(f: Presheaf, g: Presheaf, limit: int | None = None) -> list[PresheafMorphism]:
    cells = [(c, e) for c in f.base.objects for e in f.at(c)]
    found = [_as_morphism(f, g, a) for a in iter_nat(f, g, limit=limit)]
    found.sort(key=lambda m: tuple(m.components[c][e] for c, e in cells))
    return found


def count_nat(f: Presheaf, g: Presheaf, limit: int | None = None) -> int:
    return sum(1 for _ in iter_nat(f, g, limit=limit))


def find_iso(x: Presheaf, y: Presheaf, limit: int | None = None) -> PresheafMorphism | None:
    if x.base != y.base or x.size() != y.size():
        return None
    for a in iter_nat(x, y, injective=True, limit=limit):
        return _as_morphism(x, y, a)
    return None


def is_isomorphic(x: Presheaf, y: Presheaf, limit: int | None = None) -> Decision:
    if x.base != y.base:
        raise BaseMismatch("presheaves live on different categories")
    for c in x.base.objects:
        if len(x.at(c)) != len(y.at(c)):
            return failed(("cardinality", c, len(x.at(c)), len(y.at(c))))
    iso = find_iso(x, y, limit)
    if iso is None:
        return failed(("no-natural-bijection",))
    return passed(iso)


# transport along functors

def restrict(f: FinFunctor, y: Presheaf) -> Presheaf:
    if y.base != f.target:
        raise BaseMismatch("restriction needs a presheaf on the functor's target")
    src = f.source
    sets = {c: y.at(f.ob(c)) for c in src.objects}
    actions = {u: y.actions[f.ar(u)] for u in src.arrows}
    return Presheaf(src, sets, actions, name=f"{f.name or 'f'}*{y.name or '?'}")


def restrict_map(f: FinFunctor, m: PresheafMorphism) -> PresheafMorphism:
    return PresheafMorphism(restrict(f, m.source), restrict(f, m.target),
                            {c: m.components[f.ob(c)] for c in f.source.objects})


def lan(f: FinFunctor, x: Presheaf) -> Presheaf:
    """Left Kan extension: (Lan X)(d) = colim over (v: d -> f c, e in X c)."""
    if x.base != f.source:
        raise BaseMismatch("left extension needs a presheaf on the functor's source")
    dcat, ccat = f.target, f.source
    sets, classes = {}, {}
    for d in dcat.objects:
        members = [(c, v, e) for c in ccat.objects for v in dcat.hom(d, f.ob(c)) for e in x.at(c)]
        uf = UnionFind(members)
        for u in ccat.arrows:
            c2, c = ccat.src(u), ccat.tgt(u)
            for v in dcat.hom(d, f.ob(c2)):
                for e in x.at(c):
                    uf.union((c2, v, x.act(u, e)), (c, dcat.comp(f.ar(u), v), e))
        named = name_classes(uf.classes(), lambda m: tup(m[1], m[2]), lambda m: tup(m[0], m[1], m[2]))
        sets[d] = [n for n, _ in named]
        for n, ms in named:
            for m in ms:
                classes[(d, m)] = n
    actions = {}
    for w in dcat.arrows:
        d2, d = dcat.src(w), dcat.tgt(w)
        act = {}
        for (dd, (c, v, e)), n in classes.items():
            if dd == d:
                act[n] = classes[(d2, (c, dcat.comp(v, w), e))]
        actions[w] = act
    return Presheaf(dcat, sets, actions, name=f"lan({x.name or '?'})")


def ran(f: FinFunctor, x: Presheaf) -> Presheaf:
    """Right Kan extension: (Ran X)(d) = Nat(restrict(f, y d), X)."""
    if x.base != f.source:
        raise BaseMismatch("right extension needs a presheaf on the functor's source")
    dcat = f.target
    reps = {d: restrict(f, yoneda(dcat, d)) for d in dcat.objects}
    homs = {d: nat_hom(reps[d], x) for d in dcat.objects}
    names = {d: [_render_nat(t) for t in homs[d]] for d in dcat.objects}
    actions = {}
    for w in dcat.arrows:
        d2, d = dcat.src(w), dcat.tgt(w)
        # precompose with restrict(f, y(w)): y d2 -> y d
        yw = PresheafMorphism(reps[d2], reps[d], {
            c: {v: dcat.comp(w, v) for v in reps[d2].at(c)} for c in f.source.objects})
        table = {_render_nat(t2): n2 for t2, n2 in zip(homs[d2], names[d2])}
        actions[w] = {n: table[_render_nat(compose_morphisms(t, yw))] for t, n in zip(homs[d], names[d])}
    return Presheaf(dcat, names, actions, name=f"ran({x.name or '?'})")


def _render_nat(t: PresheafMorphism) -> str:
    """Name of a transformation: its values listed in the source's element order."""
    src = t.source
    return "<" + ",".join(t.components[c][e] for c, e in src.elements()) + ">"


def transport_along(f: FinFunctor, x: Presheaf, mode: str) -> Presheaf:
    if mode == "restrict":
        return restrict(f, x)
    if mode == "lan":
        return lan(f, x)
    if mode == "ran":
        return ran(f, x)
    raise ValueError(f"unknown transport mode {mode!r}")


# validation

def validate(p) -> ValidationReport:
    if isinstance(p, Presheaf):
        return _validate_presheaf(p)
    if isinstance(p, PresheafMorphism):
        return _validate_morphism(p)
    if isinstance(p, Sieve):
        return _validate_sieve(p)
    raise TypeError(f"cannot validate {type(p).__name__}")


def _validate_presheaf(x: Presheaf) -> ValidationReport:
    cat = x.base
    for c in x.sets:
        if not cat.has_object(c):
            raise DanglingReference(f"set given for unknown object {c}")
    known = set(cat.arrows)
    for u in x.actions:
        if u not in known:
            raise DanglingReference(f"action given for unknown morphism {u}")
    rep = ValidationReport()
    for c in cat.objects:
        if len(set(x.at(c))) != len(x.at(c)):
            rep.add("unique-elements", (c,), f"repeated element at {c}")
    for u in cat.arrows:
        tgt_set, src_set = set(x.at(cat.tgt(u))), set(x.at(cat.src(u)))
        act = x.actions[u]
        for e in x.at(cat.tgt(u)):
            if e not in act:
                rep.add("action-total", (u, e), f"action of {u} undefined on {e}")
            elif act[e] not in src_set:
                rep.add("action-typing", (u, e), f"{u} sends {e} to {act[e]} outside the set at {cat.src(u)}")
        for e in act:
            if e not in tgt_set:
                rep.add("action-typing", (u, e), f"{u} acts on {e} which is not at {cat.tgt(u)}")
    if not rep.ok:
        return rep
    for c in cat.objects:
        ic = cat.ident(c)
        for e in x.at(c):
            if x.act(ic, e) != e:
                rep.add("functoriality-identity", (c, e), f"identity of {c} moves {e}")
    for g, f in cat.composable_pairs():
        gf = cat.comp(g, f)
        for e in x.at(cat.tgt(g)):
            lhs = x.act(gf, e)
            rhs = x.act(f, x.act(g, e))
            if lhs != rhs:
                rep.add("functoriality-composition", (g, f, e),
                        f"X({g}.{f})({e})={lhs} but X({f})(X({g})({e}))={rhs}")
    return rep


def _validate_morphism(m: PresheafMorphism) -> ValidationReport:
    if m.source.base != m.target.base:
        raise BaseMismatch("morphism between presheaves on different categories")
    cat = m.source.base
    for c in m.components:
        if not cat.has_object(c):
            raise DanglingReference(f"component given at unknown object {c}")
    rep = ValidationReport()
    for c in cat.objects:
        comp = m.components[c]
        tgt = set(m.target.at(c))
        for e in m.source.at(c):
            if e not in comp:
                rep.add("component-total", (c, e), f"component at {c} undefined on {e}")
            elif comp[e] not in tgt:
                rep.add("component-typing", (c, e), f"{e} sent outside the target at {c}")
    if not rep.ok:
        return rep
    for u in cat.arrows:
        c2, c = cat.src(u), cat.tgt(u)
        for e in m.source.at(c):
            if m(c2, m.source.act(u, e)) != m.target.act(u, m(c, e)):
                rep.add("naturality", (u, e), f"square for {u} fails at {e}")
    return rep


def _validate_sieve(s: Sieve) -> ValidationReport:
    cat = s.base
    if not cat.has_object(s.apex):
        raise DanglingReference(f"sieve apex {s.apex} is not an object")
    known = set(cat.arrows)
    rep = ValidationReport()
    for u in sorted(s.arrows):
        if u not in known:
            raise DanglingReference(f"sieve mentions unknown morphism {u}")
        if cat.tgt(u) != s.apex:
            rep.add("sieve-target", (u,), f"{u} does not land in {s.apex}")
    if not rep.ok:
        return rep
    for u in sorted(s.arrows):
        for w in cat.arrows_into(cat.src(u)):
            uw = cat.comp(u, w)
            if uw not in s.arrows:
                rep.add("sieve-closure", (u, w), f"{uw}={u}.{w} is missing")
    return rep
