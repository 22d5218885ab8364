"""Turn parsed documents into core objects, and core objects back into declarations."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from ..distributor import DistTransformation, Distributor
from ..errors import SiteFileError
from ..fincat import FinCategory, FinFunctor, validate as validate_category
from ..presheaf import Presheaf, PresheafMorphism, Sieve
from ..topology import Coverage, GrothendieckTopology, saturate
from .nodes import (CategoryDecl, Decl, DistributorDecl, Document, FunctorDecl, PresheafDecl, SiteDecl,
                    TransformationDecl)
from .parser import parse


class IncompleteDeclaration(SiteFileError):
    """A functor declaration leaves an object or a non-identity arrow unmapped."""


@dataclass
class Workspace:
    document: Document
    categories: dict[str, FinCategory] = field(default_factory=dict)
    coverages: dict[str, Coverage] = field(default_factory=dict)
    sites: dict[str, GrothendieckTopology] = field(default_factory=dict)
    functors: dict[str, FinFunctor] = field(default_factory=dict)
    presheaves: dict[str, Presheaf] = field(default_factory=dict)
    distributors: dict[str, Distributor] = field(default_factory=dict)
    transformations: dict[str, object] = field(default_factory=dict)

    def sites_on(self, cat: FinCategory) -> list[str]:
        return sorted(n for n, t in self.sites.items() if t.base == cat)

    def kind_of(self, name: str) -> str | None:
        for kind in ("categories", "sites", "functors", "presheaves", "distributors", "transformations"):
            if name in getattr(self, kind):
                return kind
        return None


def load_document(doc: Document) -> Workspace:
    ws = Workspace(doc)
    for d in doc.decls:
        if isinstance(d, CategoryDecl):
            ws.categories[d.name] = FinCategory.build(d.objects, d.arrows, d.composes, name=d.name)
        elif isinstance(d, SiteDecl):
            cat = ws.categories[d.category]
            gens: dict = {}
            for c, arrows in d.covers:
                gens.setdefault(c, set()).add(Sieve.generated(cat, c, arrows))
            cov = Coverage(cat, gens, name=d.name)
            ws.coverages[d.name] = cov
            # saturation needs total composition; validation reports the broken category
            if validate_category(cat).ok:
                ws.sites[d.name] = saturate(cov)
        elif isinstance(d, FunctorDecl):
            ws.functors[d.name] = _functor(ws, d)
        elif isinstance(d, PresheafDecl):
            cat = ws.categories[d.base]
            actions: dict = {}
            for u, e, e2 in d.maps:
                actions.setdefault(u, {})[e] = e2
            ws.presheaves[d.name] = Presheaf(cat, dict(d.ats), actions, name=d.name)
        elif isinstance(d, DistributorDecl):
            ws.distributors[d.name] = _distributor(ws, d)
        elif isinstance(d, TransformationDecl):
            ws.transformations[d.name] = _transformation(ws, d)
    return ws


def _functor(ws: Workspace, d: FunctorDecl) -> FinFunctor:
    src, tgt = ws.categories[d.source], ws.categories[d.target]
    omap = dict(d.objs)
    for o in src.objects:
        if o not in omap:
            raise IncompleteDeclaration(f"functor {d.name} does not map object {o!r}", d.line, d.col)
    mmap = {src.ident(o): tgt.ident(omap[o]) for o in src.objects}
    mmap.update(dict(d.arrs))
    for u in src.arrows:
        if u not in mmap:
            raise IncompleteDeclaration(f"functor {d.name} does not map arrow {u!r}", d.line, d.col)
    return FinFunctor(src, tgt, omap, mmap, name=d.name)


def _distributor(ws: Workspace, d: DistributorDecl) -> Distributor:
    src, tgt = ws.categories[d.source], ws.categories[d.target]
    het: dict = {}
    where = {}
    for x, a, b in d.hets:
        het.setdefault((a, b), []).append(x)
        where[x] = (a, b)
    left: dict = {}
    for v, x, y in d.lacts:
        left.setdefault((v, where[x][1]), {})[x] = y
    right: dict = {}
    for u, x, y in d.racts:
        right.setdefault((u, where[x][0]), {})[x] = y
    # identity actions come for free unless overridden
    for x, (a, b) in where.items():
        left.setdefault((tgt.ident(a), b), {}).setdefault(x, x)
        right.setdefault((src.ident(b), a), {}).setdefault(x, x)
    return Distributor(src, tgt, het, left, right, name=d.name)


def _transformation(ws: Workspace, d: TransformationDecl):
    if d.source in ws.presheaves:
        comps: dict = {}
        for c, e, e2 in d.cells:
            comps.setdefault(c, {})[e] = e2
        return PresheafMorphism(ws.presheaves[d.source], ws.presheaves[d.target], comps, name=d.name)
    comps = {}
    for a, b, x, y in d.cells:
        comps.setdefault((a, b), {})[x] = y
    return DistTransformation(ws.distributors[d.source], ws.distributors[d.target], comps, name=d.name)


def load(text: bytes | str) -> Workspace:
    return load_document(parse(text))


def load_path(path: str | Path) -> Workspace:
    return load(Path(path).read_bytes())


# core objects back to declarations

def category_decl(cat: FinCategory, name: str | None = None) -> CategoryDecl:
    ids = {cat.ident(o) for o in cat.objects}
    arrows = [(m, s, t) for m, s, t in cat.morphism_list if m not in ids]
    composes = [(g, f, h) for (g, f), h in cat.compose_table.items() if g not in ids and f not in ids]
    return CategoryDecl(name or cat.name, list(cat.objects), arrows, composes)


def site_decl(top: GrothendieckTopology, name: str, category: str, generators: Coverage | None = None) -> SiteDecl:
    """All covering sieves, or just the given generators, as cover clauses (maximal sieves are implicit)."""
    covers = []
    for c in top.base.objects:
        sieves = sorted(generators.generators[c]) if generators is not None else top.sieves(c)
        for s in sieves:
            if not s.is_maximal():
                covers.append((c, tuple(sorted(s.arrows))))
    return SiteDecl(name, category, covers)


def functor_decl(f: FinFunctor, name: str | None = None) -> FunctorDecl:
    src, tgt = f.source, f.target
    objs = [(o, f.ob(o)) for o in src.objects]
    arrs = [(u, f.ar(u)) for u in src.arrows if not (src.is_identity(u) and f.ar(u) == tgt.ident(f.ob(src.src(u))))]
    return FunctorDecl(name or f.name, src.name, tgt.name, objs, arrs)


def presheaf_decl(x: Presheaf, name: str | None = None) -> PresheafDecl:
    cat = x.base
    ats = [(c, x.at(c)) for c in cat.objects if x.at(c)]
    maps = [(u, e, x.act(u, e)) for u in cat.arrows if not cat.is_identity(u) for e in x.at(cat.tgt(u))]
    return PresheafDecl(name or x.name, cat.name, ats, maps)


def unique_het_names(h: Distributor) -> dict[tuple[str, str, str], str]:
    """Heteromorphism names made unique across pairs by qualifying clashing ones."""
    seen: dict = {}
    for d, c, x in h.elements():
        seen.setdefault(x, []).append((d, c))
    return {(d, c, x): x if len(seen[x]) == 1 else f"{x}@({d},{c})" for d, c, x in h.elements()}


def distributor_decl(h: Distributor, name: str | None = None) -> DistributorDecl:
    src, tgt = h.source, h.target
    names = unique_het_names(h)
    hets = [(names[(d, c, x)], d, c) for d, c, x in h.elements()]
    lacts = [(v, names[(tgt.tgt(v), c, x)], names[(tgt.src(v), c, h.lact(v, c, x))])
             for v in tgt.arrows if not tgt.is_identity(v) for c in src.objects for x in h.at(tgt.tgt(v), c)]
    racts = [(u, names[(d, src.src(u), x)], names[(d, src.tgt(u), h.ract(u, d, x))])
             for u in src.arrows if not src.is_identity(u) for d in tgt.objects for x in h.at(d, src.src(u))]
    return DistributorDecl(name or h.name, src.name, tgt.name, hets, lacts, racts)


def document_of(*decls: Decl) -> Document:
    return Document(list(decls))
