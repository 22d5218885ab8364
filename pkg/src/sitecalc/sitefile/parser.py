"""Lexer and recursive-descent parser for sitefiles."""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import DuplicateName, SiteSyntaxError, UnresolvedReference
from ..fincat import identity_name
from .nodes import (CategoryDecl, Decl, DistributorDecl, Document, FunctorDecl, PresheafDecl, SiteDecl,
                    TransformationDecl)

NAME_RE = re.compile(r"[A-Za-z0-9_*'/@^+]+")
PUNCT = ("-|->", "->", "~>", "=>", "<=", "{", "}", ";", ":", ".", "=")
KEYWORDS = ("category", "site", "functor", "presheaf", "distributor", "transformation")


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "punct" or "eof"
    value: str
    line: int
    col: int
    quoted: bool = False

    def describe(self) -> str:
        if self.kind == "eof":
            return "end of input"
        return f"'{self.value}'"


def tokenize(text: str) -> list[Token]:
    out = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r":
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == '"':
            j, buf = i + 1, []
            while True:
                if j >= n or text[j] == "\n":
                    raise SiteSyntaxError("unterminated quoted name", line, col)
                if text[j] == "\\" and j + 1 < n and text[j + 1] in '"\\':
                    buf.append(text[j + 1])
                    j += 2
                    continue
                if text[j] == '"':
                    break
                buf.append(text[j])
                j += 1
            out.append(Token("name", "".join(buf), line, col, quoted=True))
            col += j + 1 - i
            i = j + 1
            continue
        m = NAME_RE.match(text, i)
        if m:
            out.append(Token("name", m.group(), line, col))
            col += m.end() - i
            i = m.end()
            continue
        for p in PUNCT:
            if text.startswith(p, i):
                out.append(Token("punct", p, line, col))
                i, col = i + len(p), col + len(p)
                break
        else:
            raise SiteSyntaxError(f"unexpected character {ch!r}", line, col)
    out.append(Token("eof", "", line, col))
    return out


class _Scope:
    """What earlier declarations make available to later ones."""

    def __init__(self):
        self.kinds: dict[str, str] = {}
        self.objects: dict[str, set] = {}
        self.arrows: dict[str, dict[str, tuple[str, str]]] = {}
        self.bases: dict[str, str] = {}
        self.ends: dict[str, tuple[str, str]] = {}
        self.elements: dict[str, dict[str, set]] = {}
        self.hets: dict[str, dict[str, tuple[str, str]]] = {}


class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0
        self.scope = _Scope()

    # token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def fail(self, expected, tok: Token | None = None):
        tok = tok or self.tok
        raise SiteSyntaxError(f"unexpected {tok.describe()}", tok.line, tok.col, expected)

    def punct(self, value: str) -> Token:
        t = self.tok
        if t.kind != "punct" or t.value != value:
            self.fail([f"'{value}'"])
        self.pos += 1
        return t

    def at_punct(self, value: str) -> bool:
        return self.tok.kind == "punct" and self.tok.value == value

    def keyword(self, *values: str) -> Token:
        t = self.tok
        if t.kind != "name" or t.quoted or t.value not in values:
            self.fail([f"'{v}'" for v in values])
        self.pos += 1
        return t

    def at_keyword(self, value: str) -> bool:
        t = self.tok
        return t.kind == "name" and not t.quoted and t.value == value

    def name(self) -> Token:
        t = self.tok
        if t.kind != "name":
            self.fail(["NAME"])
        self.pos += 1
        return t

    def idlist(self, close: str) -> list[Token]:
        out = []
        while not self.at_punct(close):
            if self.tok.kind != "name":
                self.fail(["NAME", f"'{close}'"])
            out.append(self.name())
        return out

    # resolution helpers

    def ref(self, tok: Token, known, what: str):
        if tok.value not in known:
            raise UnresolvedReference(f"unknown {what} {tok.value!r}", tok.line, tok.col)

    def decl_ref(self, tok: Token, kinds: tuple[str, ...]):
        k = self.scope.kinds.get(tok.value)
        if k not in kinds:
            detail = f" (it is a {k})" if k else ""
            raise UnresolvedReference(f"no {' or '.join(kinds)} named {tok.value!r}{detail}", tok.line, tok.col)

    @staticmethod
    def unique(tok: Token, seen: set, what: str):
        if tok.value in seen:
            raise DuplicateName(f"duplicate {what} {tok.value!r}", tok.line, tok.col)
        seen.add(tok.value)

    def clause_end(self):
        self.punct(";")

    # document

    def document(self) -> Document:
        decls: list[Decl] = []
        while self.tok.kind != "eof":
            t = self.keyword(*KEYWORDS)
            d = getattr(self, f"_{t.value}")(t)
            decls.append(d)
        return Document(decls)

    def declare(self, tok: Token, kind: str):
        if tok.value in self.scope.kinds:
            raise DuplicateName(f"duplicate declaration name {tok.value!r}", tok.line, tok.col)
        self.scope.kinds[tok.value] = kind

    def _category(self, kw: Token) -> CategoryDecl:
        nt = self.name()
        self.punct("{")
        self.keyword("objects")
        self.punct(":")
        objs = self.idlist(";")
        self.punct(";")
        seen: set = set()
        for o in objs:
            self.unique(o, seen, "object")
        objects = [o.value for o in objs]
        arrows, composes = [], []
        homs = {identity_name(o): (o, o) for o in objects}
        arrow_seen = set(homs)
        pending = []
        while not self.at_punct("}"):
            k = self.keyword("arrow", "compose")
            if k.value == "arrow":
                a = self.name()
                self.punct(":")
                s = self.name()
                self.punct("->")
                t = self.name()
                self.clause_end()
                self.unique(a, arrow_seen, "arrow")
                self.ref(s, seen, "object")
                self.ref(t, seen, "object")
                homs[a.value] = (s.value, t.value)
                arrows.append((a.value, s.value, t.value))
            else:
                g = self.name()
                self.punct(".")
                f = self.name()
                self.punct("=")
                h = self.name()
                self.clause_end()
                pending.append((g, f, h))
        self.punct("}")
        pairs: set = set()
        for g, f, h in pending:
            for t in (g, f, h):
                self.ref(t, homs, "arrow")
            key = (g.value, f.value)
            if key in pairs:
                raise DuplicateName(f"second composite for {g.value}.{f.value}", g.line, g.col)
            pairs.add(key)
            composes.append((g.value, f.value, h.value))
        self.declare(nt, "category")
        self.scope.objects[nt.value] = seen
        self.scope.arrows[nt.value] = homs
        return CategoryDecl(nt.value, objects, arrows, composes, line=kw.line, col=kw.col)

    def _site(self, kw: Token) -> SiteDecl:
        nt = self.name()
        self.keyword("on")
        ct = self.name()
        self.decl_ref(ct, ("category",))
        objs, homs = self.scope.objects[ct.value], self.scope.arrows[ct.value]
        self.punct("{")
        covers = []
        while not self.at_punct("}"):
            self.keyword("cover")
            o = self.name()
            self.ref(o, objs, "object")
            self.punct("<=")
            self.punct("{")
            gens = self.idlist("}")
            self.punct("}")
            self.clause_end()
            seen: set = set()
            for g in gens:
                self.unique(g, seen, "arrow")
                self.ref(g, homs, "arrow")
                if homs[g.value][1] != o.value:
                    raise UnresolvedReference(f"arrow {g.value!r} does not land in {o.value!r}", g.line, g.col)
            covers.append((o.value, tuple(g.value for g in gens)))
        self.punct("}")
        self.declare(nt, "site")
        self.scope.bases[nt.value] = ct.value
        return SiteDecl(nt.value, ct.value, covers, line=kw.line, col=kw.col)

    def _functor(self, kw: Token) -> FunctorDecl:
        nt = self.name()
        self.punct(":")
        st = self.name()
        self.punct("->")
        tt = self.name()
        self.decl_ref(st, ("category",))
        self.decl_ref(tt, ("category",))
        sc = (self.scope.objects[st.value], self.scope.arrows[st.value])
        tc = (self.scope.objects[tt.value], self.scope.arrows[tt.value])
        self.punct("{")
        objs, arrs = [], []
        oseen, aseen = set(), set()
        while not self.at_punct("}"):
            k = self.keyword("obj", "arr")
            a = self.name()
            self.punct("->")
            b = self.name()
            self.clause_end()
            if k.value == "obj":
                self.ref(a, sc[0], "object")
                self.ref(b, tc[0], "object")
                self.unique(a, oseen, "object mapping for")
                objs.append((a.value, b.value))
            else:
                self.ref(a, sc[1], "arrow")
                self.ref(b, tc[1], "arrow")
                self.unique(a, aseen, "arrow mapping for")
                arrs.append((a.value, b.value))
        self.punct("}")
        self.declare(nt, "functor")
        self.scope.ends[nt.value] = (st.value, tt.value)
        return FunctorDecl(nt.value, st.value, tt.value, objs, arrs, line=kw.line, col=kw.col)

    def _presheaf(self, kw: Token) -> PresheafDecl:
        nt = self.name()
        self.keyword("on")
        bt = self.name()
        self.decl_ref(bt, ("category",))
        objs, homs = self.scope.objects[bt.value], self.scope.arrows[bt.value]
        self.punct("{")
        ats, maps, pending = [], [], []
        sets: dict[str, set] = {}
        while not self.at_punct("}"):
            k = self.keyword("at", "map")
            if k.value == "at":
                o = self.name()
                self.ref(o, objs, "object")
                if o.value in sets:
                    raise DuplicateName(f"second element list for {o.value!r}", o.line, o.col)
                self.punct(":")
                self.punct("{")
                es = self.idlist("}")
                self.punct("}")
                self.clause_end()
                seen: set = set()
                for e in es:
                    self.unique(e, seen, "element")
                sets[o.value] = seen
                ats.append((o.value, tuple(e.value for e in es)))
            else:
                u = self.name()
                self.punct(":")
                e = self.name()
                self.punct("->")
                e2 = self.name()
                self.clause_end()
                pending.append((u, e, e2))
        self.punct("}")
        done: set = set()
        for u, e, e2 in pending:
            self.ref(u, homs, "arrow")
            src, tgt = homs[u.value]
            self.ref(e, sets.get(tgt, ()), f"element of {tgt}:")
            self.ref(e2, sets.get(src, ()), f"element of {src}:")
            if (u.value, e.value) in done:
                raise DuplicateName(f"second value for {u.value} on {e.value}", u.line, u.col)
            done.add((u.value, e.value))
            maps.append((u.value, e.value, e2.value))
        self.declare(nt, "presheaf")
        self.scope.bases[nt.value] = bt.value
        self.scope.elements[nt.value] = sets
        return PresheafDecl(nt.value, bt.value, ats, maps, line=kw.line, col=kw.col)

    def _distributor(self, kw: Token) -> DistributorDecl:
        nt = self.name()
        self.punct(":")
        st = self.name()
        self.punct("-|->")
        tt = self.name()
        self.decl_ref(st, ("category",))
        self.decl_ref(tt, ("category",))
        sobj, sarr = self.scope.objects[st.value], self.scope.arrows[st.value]
        tobj, tarr = self.scope.objects[tt.value], self.scope.arrows[tt.value]
        self.punct("{")
        hets, pending = [], []
        where: dict[str, tuple[str, str]] = {}
        while not self.at_punct("}"):
            k = self.keyword("het", "lact", "ract")
            if k.value == "het":
                x = self.name()
                self.punct(":")
                d = self.name()
                self.punct("~>")
                c = self.name()
                self.clause_end()
                self.ref(d, tobj, "object")
                self.ref(c, sobj, "object")
                if x.value in where:
                    raise DuplicateName(f"duplicate heteromorphism {x.value!r}", x.line, x.col)
                where[x.value] = (d.value, c.value)
                hets.append((x.value, d.value, c.value))
            else:
                a = self.name()
                self.punct(".")
                x = self.name()
                self.punct("=")
                y = self.name()
                self.clause_end()
                pending.append((k.value, a, x, y))
        self.punct("}")
        lacts, racts, done = [], [], set()
        for side, a, x, y in pending:
            self.ref(a, tarr if side == "lact" else sarr, "arrow")
            self.ref(x, where, "heteromorphism")
            self.ref(y, where, "heteromorphism")
            if (side, a.value, x.value) in done:
                raise DuplicateName(f"second {side} value for {a.value} on {x.value}", a.line, a.col)
            done.add((side, a.value, x.value))
            (lacts if side == "lact" else racts).append((a.value, x.value, y.value))
        self.declare(nt, "distributor")
        self.scope.ends[nt.value] = (st.value, tt.value)
        self.scope.hets[nt.value] = where
        return DistributorDecl(nt.value, st.value, tt.value, hets, lacts, racts, line=kw.line, col=kw.col)

    def _transformation(self, kw: Token) -> TransformationDecl:
        nt = self.name()
        self.punct(":")
        st = self.name()
        self.punct("=>")
        tt = self.name()
        self.decl_ref(st, ("presheaf", "distributor"))
        self.decl_ref(tt, ("presheaf", "distributor"))
        kind = self.scope.kinds[st.value]
        if self.scope.kinds[tt.value] != kind:
            raise UnresolvedReference(f"{tt.value!r} is not a {kind}", tt.line, tt.col)
        self.punct("{")
        cells, done = [], set()
        while not self.at_punct("}"):
            self.keyword("at")
            o = self.name()
            cell: tuple
            if kind == "distributor":
                self.punct("~>")
                c = self.name()
            self.punct(":")
            x = self.name()
            self.punct("->")
            y = self.name()
            self.clause_end()
            if kind == "presheaf":
                base = self.scope.bases[st.value]
                self.ref(o, self.scope.objects[base], "object")
                self.ref(x, self.scope.elements[st.value].get(o.value, ()), f"element of {o.value}:")
                self.ref(y, self.scope.elements[tt.value].get(o.value, ()), f"element of {o.value}:")
                cell = (o.value, x.value, y.value)
                key = (o.value, x.value)
            else:
                src_h, tgt_h = self.scope.hets[st.value], self.scope.hets[tt.value]
                self.ref(x, src_h, "heteromorphism")
                self.ref(y, tgt_h, "heteromorphism")
                if src_h[x.value] != (o.value, c.value):
                    raise UnresolvedReference(f"{x.value!r} is not a heteromorphism {o.value} ~> {c.value}",
                                              x.line, x.col)
                cell = (o.value, c.value, x.value, y.value)
                key = (x.value,)
            if key in done:
                raise DuplicateName(f"second value for {x.value}", x.line, x.col)
            done.add(key)
            cells.append(cell)
        self.punct("}")
        self.declare(nt, "transformation")
        return TransformationDecl(nt.value, st.value, tt.value, cells, line=kw.line, col=kw.col)


def parse(text: bytes | str) -> Document:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SiteSyntaxError(f"input is not UTF-8 (byte {exc.start})", 1, 1) from None
    return Parser(text).document()
