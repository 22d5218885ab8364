"""Canonical printer: declarations sorted by (kind, name), sorted members, two-space indent."""
from __future__ import annotations

from .nodes import (CategoryDecl, Decl, DistributorDecl, Document, FunctorDecl, PresheafDecl, SiteDecl,
                    TransformationDecl)
from .parser import NAME_RE


def q(name: str) -> str:
    if NAME_RE.fullmatch(name):
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _ids(names) -> str:
    return " ".join(q(n) for n in sorted(names))


def _lines(d: Decl) -> tuple[str, list[str]]:
    if isinstance(d, CategoryDecl):
        body = [f"objects: {_ids(d.objects)};"]
        body += [f"arrow {q(a)}: {q(s)} -> {q(t)};" for a, s, t in sorted(d.arrows)]
        body += [f"compose {q(g)} . {q(f)} = {q(h)};" for g, f, h in sorted(d.composes)]
        return f"category {q(d.name)}", body
    if isinstance(d, SiteDecl):
        body = [f"cover {q(c)} <= {{{_ids(a)}}};" for c, a in sorted((c, tuple(sorted(a))) for c, a in d.covers)]
        return f"site {q(d.name)} on {q(d.category)}", body
    if isinstance(d, FunctorDecl):
        body = [f"obj {q(a)} -> {q(b)};" for a, b in sorted(d.objs)]
        body += [f"arr {q(a)} -> {q(b)};" for a, b in sorted(d.arrs)]
        return f"functor {q(d.name)}: {q(d.source)} -> {q(d.target)}", body
    if isinstance(d, PresheafDecl):
        body = [f"at {q(c)}: {{{_ids(es)}}};" for c, es in sorted(d.ats)]
        body += [f"map {q(u)}: {q(e)} -> {q(e2)};" for u, e, e2 in sorted(d.maps)]
        return f"presheaf {q(d.name)} on {q(d.base)}", body
    if isinstance(d, DistributorDecl):
        body = [f"het {q(x)}: {q(a)} ~> {q(b)};" for x, a, b in sorted(d.hets)]
        body += [f"lact {q(v)} . {q(x)} = {q(y)};" for v, x, y in sorted(d.lacts)]
        body += [f"ract {q(u)} . {q(x)} = {q(y)};" for u, x, y in sorted(d.racts)]
        return f"distributor {q(d.name)}: {q(d.source)} -|-> {q(d.target)}", body
    if isinstance(d, TransformationDecl):
        body = []
        for cell in sorted(d.cells):
            if len(cell) == 3:
                body.append(f"at {q(cell[0])}: {q(cell[1])} -> {q(cell[2])};")
            else:
                body.append(f"at {q(cell[0])} ~> {q(cell[1])}: {q(cell[2])} -> {q(cell[3])};")
        return f"transformation {q(d.name)}: {q(d.source)} => {q(d.target)}", body
    raise TypeError(f"cannot print {type(d).__name__}")


def print_decl(d: Decl) -> str:
    head, body = _lines(d)
    if not body:
        return head + " {\n}\n"
    return head + " {\n" + "".join(f"  {line}\n" for line in body) + "}\n"


def print_document(doc: Document) -> bytes:
    decls = sorted(doc.decls, key=lambda d: (d.kind, d.name))
    return "\n".join(print_decl(d) for d in decls).encode("utf-8")
