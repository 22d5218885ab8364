"""Coverages, Grothendieck topologies, sheaves and sheafification."""
from __future__ import annotations

from functools import reduce

from .errors import BaseMismatch, NotASheaf, NotMono
from .fincat import FinCategory
from .naming import family
from .presheaf import (Presheaf, PresheafMorphism, Sieve, all_sieves, compose_morphisms, image_factorization,
                       iter_nat, pullback, pullback_sieve, sieve_presheaf)
from .results import Decision, ValidationReport, failed, passed


class Coverage:
    def __init__(self, base: FinCategory, generators=None, name=None):
        self.base = base
        self.generators: dict[str, frozenset[Sieve]] = {
            c: frozenset((generators or {}).get(c, ())) for c in base.objects}
        self.name = name

    def validate(self) -> ValidationReport:
        from .presheaf import validate as validate_sieve
        rep = ValidationReport()
        for c in self.base.objects:
            for s in sorted(self.generators[c]):
                if s.apex != c:
                    rep.add("generator-apex", (c, s), f"generator {s.render()} is not on {c}")
                rep.extend(validate_sieve(s))
        return rep


class GrothendieckTopology:
    def __init__(self, base: FinCategory, covering, name=None):
        self.base = base
        self.covering: dict[str, frozenset[Sieve]] = {
            c: frozenset(covering.get(c, ())) for c in base.objects}
        self.name = name
        self._minimal: dict[str, Sieve] = {}

    def covers(self, s: Sieve) -> bool:
        return s in self.covering.get(s.apex, ())

    def sieves(self, c: str) -> list[Sieve]:
        return sorted(self.covering[c], key=Sieve.sort_key)

    def minimal(self, c: str) -> Sieve:
        """Intersection of all covering sieves on c (itself covering when the axioms hold)."""
        if c not in self._minimal:
            self._minimal[c] = reduce(lambda a, b: a & b, self.covering[c], Sieve.maximal(self.base, c))
        return self._minimal[c]

    def is_degenerate_at(self, c: str) -> bool:
        return Sieve.empty(self.base, c) in self.covering[c]

    def key(self):
        return (self.base, tuple((c, tuple(s.sort_key() for s in self.sieves(c))) for c in self.base.objects))

    def __eq__(self, other):
        return isinstance(other, GrothendieckTopology) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        parts = "; ".join(f"{c}: " + " ".join(s.render() for s in self.sieves(c)) for c in self.base.objects)
        return f"GrothendieckTopology({self.name or '?'}; {parts})"


def trivial_topology(base: FinCategory, name=None) -> GrothendieckTopology:
    return GrothendieckTopology(base, {c: {Sieve.maximal(base, c)} for c in base.objects}, name=name)


def saturate(cov: Coverage) -> GrothendieckTopology:
    """Least Grothendieck topology containing the generators (fixpoint)."""
    cat = cov.base
    cover = {c: {Sieve.maximal(cat, c)} | set(cov.generators[c]) for c in cat.objects}
    changed = True
    while changed:
        changed = False
        for c in cat.objects:
            for s in list(cover[c]):
                for v in cat.arrows_into(c):
                    p = pullback_sieve(s, v)
                    if p not in cover[p.apex]:
                        cover[p.apex].add(p)
                        changed = True
        for c in cat.objects:
            for t in all_sieves(cat, c):
                if t in cover[c]:
                    continue
                if any(all(pullback_sieve(t, u) in cover[cat.src(u)] for u in s.arrows) for s in cover[c]):
                    cover[c].add(t)
                    changed = True
    return GrothendieckTopology(cat, cover, name=cov.name)


def validate_topology(t: GrothendieckTopology) -> ValidationReport:
    from .presheaf import validate as validate_sieve
    cat = t.base
    rep = ValidationReport()
    for c in cat.objects:
        for s in t.sieves(c):
            if s.apex != c:
                rep.add("sieve-apex", (c, s), f"{s.render()} listed at {c}")
            for v in validate_sieve(s):
                rep.add("sieve", (c, s) + v.witness, v.message)
    if not rep.ok:
        return rep
    for c in cat.objects:
        if Sieve.maximal(cat, c) not in t.covering[c]:
            rep.add("maximality", (c,), f"maximal sieve on {c} is not covering")
    for c in cat.objects:
        for s in t.sieves(c):
            for v in cat.arrows_into(c):
                p = pullback_sieve(s, v)
                if not t.covers(p):
                    rep.add("stability", (c, s, v), f"pullback of {s.render()} along {v} is {p.render()}, not covering")
    for c in cat.objects:
        for cand in all_sieves(cat, c):
            if t.covers(cand):
                continue
            for s in t.sieves(c):
                if all(t.covers(pullback_sieve(cand, u)) for u in s.arrows):
                    rep.add("transitivity", (c, cand, s),
                            f"{cand.render()} is locally covering over {s.render()} but not covering")
                    break
    return rep


# matching families

def matching_families(x: Presheaf, s: Sieve) -> list[dict[str, str]]:
    """All matching families for x over s, as {arrow: element}."""
    sp = sieve_presheaf(s)
    out = []
    for a in iter_nat(sp, x):
        out.append({u: v for (_, u), v in a.items()})
    out.sort(key=lambda fam: tuple(fam[u] for u in sorted(fam)))
    return out


def restriction_family(x: Presheaf, s: Sieve, e: str) -> dict[str, str]:
    return {u: x.act(u, e) for u in s.arrows}


def _fam_name(cat: FinCategory, c: str, fam) -> str:
    # a family on the maximal sieve is determined by its value at the identity
    fam = dict(fam)
    ic = cat.ident(c)
    if ic in fam:
        return fam[ic]
    return family(fam.items())


def is_sheaf(x: Presheaf, t: GrothendieckTopology) -> Decision:
    if x.base != t.base:
        raise BaseMismatch("presheaf and topology live on different categories")
    for c in x.base.objects:
        for s in t.sieves(c):
            amalg: dict = {}
            for e in x.at(c):
                amalg.setdefault(tuple(sorted(restriction_family(x, s, e).items())), []).append(e)
            for fam in matching_families(x, s):
                found = amalg.get(tuple(sorted(fam.items())), [])
                if len(found) != 1:
                    return failed((c, s, fam, len(found), tuple(found)),
                                  f"family {family(fam.items())} on {s.render()} has {len(found)} amalgamations")
    return passed()


def plus(x: Presheaf, t: GrothendieckTopology) -> tuple[Presheaf, PresheafMorphism]:
    """Plus construction.

    Covering sieves on c are closed under intersection, so the least one
    M(c) is final in the refinement order and the colimit of matching
    families is the set of matching families on M(c).
    """
    if x.base != t.base:
        raise BaseMismatch("presheaf and topology live on different categories")
    cat = x.base
    fams, names = {}, {}
    for c in cat.objects:
        fams[c] = matching_families(x, t.minimal(c))
        names[c] = {_fam_name(cat, c, f): f for f in fams[c]}
    sets = {c: list(names[c]) for c in cat.objects}
    actions = {}
    for v in cat.arrows:
        c2, c = cat.src(v), cat.tgt(v)
        m2 = t.minimal(c2)
        actions[v] = {n: _fam_name(cat, c2, ((w, f[cat.comp(v, w)]) for w in m2.arrows))
                      for n, f in names[c].items()}
    xp = Presheaf(cat, sets, actions, name=f"{x.name or '?'}+")
    unit = PresheafMorphism(x, xp, {
        c: {e: _fam_name(cat, c, restriction_family(x, t.minimal(c), e)) for e in x.at(c)} for c in cat.objects})
    return xp, unit


def plus_map(m: PresheafMorphism, t: GrothendieckTopology,
             src_plus: Presheaf | None = None, tgt_plus: Presheaf | None = None) -> PresheafMorphism:
    sp = src_plus or plus(m.source, t)[0]
    tp = tgt_plus or plus(m.target, t)[0]
    cat = m.source.base
    comps = {}
    for c in cat.objects:
        comps[c] = {}
        for f in matching_families(m.source, t.minimal(c)):
            comps[c][_fam_name(cat, c, f)] = _fam_name(cat, c, ((u, m(cat.src(u), v)) for u, v in f.items()))
    return PresheafMorphism(sp, tp, comps)


def sheafify(x: Presheaf, t: GrothendieckTopology) -> tuple[Presheaf, PresheafMorphism]:
    x1, u1 = plus(x, t)
    x2, u2 = plus(x1, t)
    x2.name = f"a({x.name or '?'})"
    return x2, compose_morphisms(u2, u1)


def sheafify_map(m: PresheafMorphism, t: GrothendieckTopology) -> PresheafMorphism:
    a, b = plus(m.source, t)[0], plus(m.target, t)[0]
    m1 = plus_map(m, t, a, b)
    m2 = plus_map(m1, t)
    m2.source.name = f"a({m.source.name or '?'})"
    m2.target.name = f"a({m.target.name or '?'})"
    return m2


def _plus_extension(g: PresheafMorphism, t: GrothendieckTopology) -> PresheafMorphism:
    """For g: P -> F with F a sheaf, the map P+ -> F through the plus unit."""
    p, f = g.source, g.target
    cat = p.base
    pp = plus(p, t)[0]
    comps = {}
    for c in cat.objects:
        ms = t.minimal(c)
        amalg = {tuple(sorted(restriction_family(f, ms, e).items())): e for e in f.at(c)}
        comps[c] = {}
        for fam in matching_families(p, ms):
            image = tuple(sorted((u, g(cat.src(u), v)) for u, v in fam.items()))
            if image not in amalg:
                raise NotASheaf(f"target is not a sheaf: no amalgamation at {c}")
            comps[c][_fam_name(cat, c, fam)] = amalg[image]
    return PresheafMorphism(pp, f, comps)


def sheaf_extension(g: PresheafMorphism, t: GrothendieckTopology) -> PresheafMorphism:
    """Unique factorization of g: P -> F (F a sheaf) through the sheafification unit of P."""
    first = _plus_extension(g, t)
    return _plus_extension(first, t)


# local epimorphisms and density

def local_section_sieve(m: PresheafMorphism, c: str, e: str) -> Sieve:
    y, cat = m.target, m.target.base
    images = {c2: set(m.components[c2].values()) for c2 in cat.objects}
    return Sieve(cat, c, frozenset(v for v in cat.arrows_into(c) if y.act(v, e) in images[cat.src(v)]))


def is_local_epi(m: PresheafMorphism, t: GrothendieckTopology) -> Decision:
    cat = m.target.base
    if cat != t.base:
        raise BaseMismatch("morphism and topology live on different categories")
    for c in cat.objects:
        for e in m.target.at(c):
            s = local_section_sieve(m, c, e)
            if not t.covers(s):
                return failed((c, e, s), f"local sections of {e} at {c} form {s.render()}, not covering")
    return passed()


def density_check(m: PresheafMorphism, t: GrothendieckTopology, mode: str) -> Decision:
    if mode == "dense_mono":
        if not m.is_injective():
            raise NotMono("dense_mono check needs a componentwise injective morphism")
        return is_local_epi(m, t)
    if mode == "dense":
        _, _, mono = image_factorization(m)
        return density_check(mono, t, "dense_mono")
    if mode == "bidense":
        d = density_check(m, t, "dense")
        if not d:
            return d
        kp, (p1, p2) = pullback(m, m)
        cat = m.source.base
        diag = {c: {} for c in cat.objects}
        for c in cat.objects:
            for k in kp.at(c):
                if p1(c, k) == p2(c, k):
                    diag[c][p1(c, k)] = k
        r = density_check(PresheafMorphism(m.source, kp, diag), t, "dense_mono")
        if not r:
            return failed(("diagonal",) + tuple(r.witness), "diagonal is not dense")
        return r
    raise ValueError(f"unknown density mode {mode!r}")

