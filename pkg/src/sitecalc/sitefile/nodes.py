"""Declarations of a sitefile document.

Clause lists keep source order for diagnostics; equality ignores both the
order and the recorded positions, so a document equals its canonical print.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(eq=False)
class Decl:
    name: str
    line: int = field(default=0, kw_only=True)
    col: int = field(default=0, kw_only=True)

    kind = ""

    def header(self) -> tuple:
        return ()

    def clauses(self) -> dict[str, list[tuple]]:
        return {}

    def key(self):
        body = tuple((k, tuple(sorted(v))) for k, v in sorted(self.clauses().items()))
        return (self.kind, self.name, self.header(), body)

    def __eq__(self, other):
        return isinstance(other, Decl) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


@dataclass(eq=False)
class CategoryDecl(Decl):
    objects: list[str] = field(default_factory=list)
    arrows: list[tuple[str, str, str]] = field(default_factory=list)
    composes: list[tuple[str, str, str]] = field(default_factory=list)

    kind = "category"

    def clauses(self):
        return {"objects": [(o,) for o in self.objects], "arrow": self.arrows, "compose": self.composes}


@dataclass(eq=False)
class SiteDecl(Decl):
    category: str = ""
    covers: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)

    kind = "site"

    def header(self):
        return (self.category,)

    def clauses(self):
        return {"cover": [(c, tuple(sorted(a))) for c, a in self.covers]}


@dataclass(eq=False)
class FunctorDecl(Decl):
    source: str = ""
    target: str = ""
    objs: list[tuple[str, str]] = field(default_factory=list)
    arrs: list[tuple[str, str]] = field(default_factory=list)

    kind = "functor"

    def header(self):
        return (self.source, self.target)

    def clauses(self):
        return {"obj": self.objs, "arr": self.arrs}


@dataclass(eq=False)
class PresheafDecl(Decl):
    base: str = ""
    ats: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)
    maps: list[tuple[str, str, str]] = field(default_factory=list)

    kind = "presheaf"

    def header(self):
        return (self.base,)

    def clauses(self):
        return {"at": [(c, tuple(sorted(es))) for c, es in self.ats], "map": self.maps}


@dataclass(eq=False)
class DistributorDecl(Decl):
    source: str = ""
    target: str = ""
    hets: list[tuple[str, str, str]] = field(default_factory=list)
    lacts: list[tuple[str, str, str]] = field(default_factory=list)
    racts: list[tuple[str, str, str]] = field(default_factory=list)

    kind = "distributor"

    def header(self):
        return (self.source, self.target)

    def clauses(self):
        return {"het": self.hets, "lact": self.lacts, "ract": self.racts}


@dataclass(eq=False)
class TransformationDecl(Decl):
    """Morphism of presheaves (``at c: e -> e'``) or of distributors (``at d ~> c: x -> y``)."""

    source: str = ""
    target: str = ""
    cells: list[tuple[str, ...]] = field(default_factory=list)

    kind = "transformation"

    def header(self):
        return (self.source, self.target)

    def clauses(self):
        return {"at": self.cells}


@dataclass
class Document:
    decls: list[Decl] = field(default_factory=list)

    def __eq__(self, other):
        return isinstance(other, Document) and sorted(d.key() for d in self.decls) == sorted(
            d.key() for d in other.decls)

    def __getitem__(self, name: str) -> Decl:
        for d in self.decls:
            if d.name == name:
                return d
        raise KeyError(name)

    def names(self) -> list[str]:
        return [d.name for d in self.decls]
