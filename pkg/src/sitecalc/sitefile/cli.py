"""Command-line driver.

Exit codes: 0 every check passed, 1 a property check failed, 2 semantic
error, 3 syntax error, 4 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .. import distributor as dist
from .. import fincat, presheaf, siteprops, topology
from ..errors import ConstructionError, SitecalcError, SiteSyntaxError
from ..geom import GeomAction, direct_image_apply, inverse_image_apply
from ..naming import term
from .loader import (Workspace, category_decl, distributor_decl, functor_decl, load_path, presheaf_decl,
                     site_decl)
from .nodes import Document
from .printer import print_document

OK, FALSE, SEMANTIC, SYNTAX, USAGE = 0, 1, 2, 3, 4

DIST_PROPS = ("cover-dist", "k-flat", "dos", "continuous", "cover-testing", "flat")
FUNCTOR_PROPS = ("morphism", "comorphism")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


class Output:
    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream
        self.failed = False

    def record(self, check: str, subject: str, ok: bool, witness=None):
        self.failed |= not ok
        w = "-" if ok or witness is None else term(witness)
        fields = {"check": check, "subject": subject, "result": "pass" if ok else "fail", "witness": w}
        if self.fmt == "json":
            self.stream.write(json.dumps(fields) + "\n")
        else:
            self.stream.write(" ".join(f"{k}={v}" for k, v in fields.items()) + "\n")

    def document(self, check: str, subject: str, doc: Document, comment: str = ""):
        text = print_document(doc).decode("utf-8")
        if self.fmt == "json":
            fields = {"check": check, "subject": subject, "result": "pass", "witness": "-", "document": text}
            if comment:
                fields["note"] = comment
            self.stream.write(json.dumps(fields) + "\n")
        else:
            if comment:
                self.stream.write(f"# {comment}\n")
            self.stream.write(text)


# lookups

def _get(ws: Workspace, table: str, name: str):
    found = getattr(ws, table)
    if name not in found:
        raise UsageError(f"no {table[:-1] if table != 'categories' else 'category'} named {name!r} in the file")
    return found[name]


def _site_for(ws: Workspace, cat, explicit: str | None, role: str) -> tuple[str, topology.GrothendieckTopology]:
    if explicit:
        top = _get(ws, "sites", explicit)
        if top.base != cat:
            raise UsageError(f"site {explicit!r} is not on {cat.name}")
        return explicit, top
    cands = ws.sites_on(cat)
    if not cands:
        return "trivial", topology.trivial_topology(cat)
    if len(cands) > 1:
        raise UsageError(f"several sites on {cat.name} ({', '.join(cands)}); choose one with --{role}-site")
    return cands[0], ws.sites[cands[0]]


# validation

def _bases(ws: Workspace, kind: str, name: str):
    if kind == "site":
        return [ws.coverages[name].base]
    if kind == "presheaf":
        return [ws.presheaves[name].base]
    if kind in ("functor", "distributor"):
        obj = ws.functors[name] if kind == "functor" else ws.distributors[name]
        return [obj.source, obj.target]
    if kind == "transformation":
        t = ws.transformations[name]
        src = t.source
        return [src.source, src.target] if isinstance(t, dist.DistTransformation) else [src.base]
    return []


def _validation_records(ws: Workspace):
    bad = {n for n, c in ws.categories.items() if not fincat.validate(c).ok}
    for d in ws.document.decls:
        name, kind = d.name, d.kind
        if kind != "category" and any(b.name in bad for b in _bases(ws, kind, name)):
            # laws over a broken category are meaningless
            yield kind, name, False, ("endpoint-invalid",)
            continue
        if kind == "category":
            rep = fincat.validate(ws.categories[name])
        elif kind == "site":
            rep = ws.coverages[name].validate()
            if rep.ok:
                rep = topology.validate_topology(ws.sites[name])
        elif kind == "functor":
            rep = fincat.validate(ws.functors[name])
        elif kind == "presheaf":
            rep = presheaf.validate(ws.presheaves[name])
        elif kind == "distributor":
            rep = dist.validate(ws.distributors[name])
        else:
            t = ws.transformations[name]
            rep = dist.validate(t) if isinstance(t, dist.DistTransformation) else presheaf.validate(t)
        if rep.ok:
            yield kind, name, True, None
        else:
            v = rep.violations[0]
            yield kind, name, False, (v.law,) + tuple(v.witness)


def _require_valid(ws: Workspace, out: Output) -> bool:
    bad = [r for r in _validation_records(ws) if not r[2]]
    for kind, name, ok, w in bad:
        out.record(f"validate-{kind}", name, ok, w)
    return not bad


def cmd_validate(ws: Workspace, args, out: Output) -> int:
    ok = True
    for kind, name, good, w in _validation_records(ws):
        out.record(f"validate-{kind}", name, good, w)
        ok &= good
    return OK if ok else SEMANTIC


def cmd_saturate(ws: Workspace, args, out: Output) -> int:
    names = [args.site] if args.site else sorted(ws.sites)
    decls = []
    for n in names:
        top = _get(ws, "sites", n)
        decls.append(site_decl(top, n, top.base.name))
    out.document("saturate", ",".join(names), Document(decls))
    return OK


def cmd_sheafify(ws: Workspace, args, out: Output) -> int:
    x = _get(ws, "presheaves", args.presheaf)
    _, top = _site_for(ws, x.base, args.site, "src")
    a, _ = topology.sheafify(x, top)
    sizes = ",".join(f"{c}={n}" for c, n in a.size().items())
    out.document("sheafify", args.presheaf, Document([presheaf_decl(a, args.name or f"{args.presheaf}_a")]),
                 comment=f"sizes {sizes}")
    return OK


def _site_dist(ws: Workspace, args) -> siteprops.SiteDistributor:
    h = _get(ws, "distributors", args.dist)
    _, j = _site_for(ws, h.source, args.src_site, "src")
    _, k = _site_for(ws, h.target, args.tgt_site, "tgt")
    return siteprops.SiteDistributor(h, j, k)


def _dist_prop(sd: siteprops.SiteDistributor, prop: str, mode: str = "definitional"):
    if prop == "cover-dist":
        return siteprops.is_cover_distributing(sd)
    if prop == "k-flat":
        return siteprops.is_K_flat(sd, mode)
    if prop == "dos":
        return siteprops.is_distributor_of_sites(sd)
    if prop == "continuous":
        return siteprops.is_continuous(sd)
    if prop == "cover-testing":
        return siteprops.is_cover_testing(sd)
    return dist.is_flat(sd.dist)


def _functor_prop(f, j, k, prop: str):
    checks = siteprops.functor_site_checks(f, j, k)
    return checks.morphism_of_sites if prop == "morphism" else checks.comorphism_of_sites


def cmd_check(ws: Workspace, args, out: Output) -> int:
    props = [p.strip() for p in args.props.split(",") if p.strip()]
    if not props:
        raise UsageError("--props is empty")
    for p in props:
        if p not in DIST_PROPS + FUNCTOR_PROPS:
            raise UsageError(f"unknown property {p!r}")
    if bool(args.dist) == bool(args.functor):
        raise UsageError("give exactly one of --dist and --functor")
    if args.dist:
        if any(p in FUNCTOR_PROPS for p in props):
            raise UsageError("morphism and comorphism apply to functors")
        sd = _site_dist(ws, args)
        for p in props:
            r = _dist_prop(sd, p, args.mode)
            out.record(p, args.dist, r.holds, r.witness)
    else:
        if any(p in DIST_PROPS for p in props):
            raise UsageError("distributor properties need --dist")
        f = _get(ws, "functors", args.functor)
        _, j = _site_for(ws, f.source, args.src_site, "src")
        _, k = _site_for(ws, f.target, args.tgt_site, "tgt")
        for p in props:
            r = _functor_prop(f, j, k, p)
            out.record(p, args.functor, r.holds, r.witness)
    return FALSE if out.failed else OK


def cmd_tensor(ws: Workspace, args, out: Output) -> int:
    g = _get(ws, "distributors", args.outer)
    h = _get(ws, "distributors", args.inner)
    top = None
    if args.sheafified is not None:
        _, top = _site_for(ws, g.target, args.sheafified or None, "tgt")
    result = dist.tensor(g, h, sheafified=top)
    name = args.name or f"{args.outer}_{args.inner}"
    out.document("tensor", name, Document([distributor_decl(result, name)]))
    return OK


def cmd_glue(ws: Workspace, args, out: Output) -> int:
    sd = _site_dist(ws, args)
    col = dist.collage(sd.dist, sd.src_top, sd.tgt_top)
    gname = args.name or f"Gl_{args.dist}"
    col.glued.name = gname
    ends = [sd.dist.source] + ([sd.dist.target] if sd.dist.target != sd.dist.source else [])
    decls = [category_decl(c) for c in ends] + [category_decl(col.glued, gname), site_decl(col.topology, f"J_{args.dist}", gname),
             functor_decl(col.incl_src, f"iotaC_{args.dist}"), functor_decl(col.incl_tgt, f"iotaD_{args.dist}")]
    out.document("glue", args.dist, Document(decls))
    return OK


def cmd_apply(ws: Workspace, args, out: Output) -> int:
    sd = _site_dist(ws, args)
    try:
        ga = GeomAction(sd)
    except ConstructionError:
        r = siteprops.is_distributor_of_sites(sd)
        out.record("dos", args.dist, False, r.witness)
        return FALSE
    x = _get(ws, "presheaves", args.sheaf)
    result = inverse_image_apply(ga, x) if args.mode == "inverse" else direct_image_apply(ga, x)
    sizes = ",".join(f"{c}={n}" for c, n in result.size().items())
    name = args.name or f"{args.sheaf}_{args.mode}"
    out.document("apply", args.sheaf, Document([presheaf_decl(result, name)]), comment=f"sizes {sizes}")
    return OK


def cmd_report(ws: Workspace, args, out: Output) -> int:
    def site_choices(cat):
        names = ws.sites_on(cat)
        return [(n, ws.sites[n]) for n in names] or [("trivial", topology.trivial_topology(cat))]

    for name in sorted(ws.distributors):
        h = ws.distributors[name]
        for jn, j in site_choices(h.source):
            for kn, k in site_choices(h.target):
                sd = siteprops.SiteDistributor(h, j, k)
                for p in DIST_PROPS:
                    r = _dist_prop(sd, p)
                    out.record(p, f"{name}[{jn},{kn}]", r.holds, r.witness)
    for name in sorted(ws.functors):
        f = ws.functors[name]
        for jn, j in site_choices(f.source):
            for kn, k in site_choices(f.target):
                checks = siteprops.functor_site_checks(f, j, k)
                for field, r in checks.as_dict().items():
                    out.record(field.replace("_", "-"), f"{name}[{jn},{kn}]", r.holds, r.witness)
    return FALSE if out.failed else OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("file", help="sitefile to load")
    common.add_argument("--format", choices=("text", "json"), default="text")

    sites = _Parser(add_help=False)
    sites.add_argument("--src-site", help="site on the source category")
    sites.add_argument("--tgt-site", help="site on the target category")

    p = _Parser(prog="sitecalc", description="Finite sites, sheaves and distributors of sites.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("validate", parents=[common], help="check every declaration's laws")
    s = sub.add_parser("saturate", parents=[common], help="print sites with all covering sieves")
    s.add_argument("--site")
    s = sub.add_parser("sheafify", parents=[common], help="sheafify a presheaf")
    s.add_argument("--presheaf", required=True)
    s.add_argument("--site")
    s.add_argument("--name")
    s = sub.add_parser("check", parents=[common, sites], help="decide properties")
    s.add_argument("--dist")
    s.add_argument("--functor")
    s.add_argument("--props", required=True, help="comma list of " + ",".join(DIST_PROPS + FUNCTOR_PROPS))
    s.add_argument("--mode", choices=("definitional", "synthetic"), default="definitional")
    s = sub.add_parser("tensor", parents=[common], help="compose OUTER (x) INNER")
    s.add_argument("outer")
    s.add_argument("inner")
    s.add_argument("--sheafified", nargs="?", const="", default=None, metavar="SITE")
    s.add_argument("--name")
    s = sub.add_parser("glue", parents=[common, sites], help="collage of a distributor")
    s.add_argument("--dist", required=True)
    s.add_argument("--name")
    s = sub.add_parser("apply", parents=[common, sites], help="inverse or direct image of a sheaf")
    s.add_argument("--dist", required=True)
    s.add_argument("--sheaf", required=True)
    s.add_argument("--mode", choices=("inverse", "direct"), required=True)
    s.add_argument("--name")
    sub.add_parser("report", parents=[common], help="every property of every distributor and functor")
    return p


COMMANDS = {"validate": cmd_validate, "saturate": cmd_saturate, "sheafify": cmd_sheafify, "check": cmd_check,
            "tensor": cmd_tensor, "glue": cmd_glue, "apply": cmd_apply, "report": cmd_report}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    out = Output(args.format, stdout)
    path = Path(args.file)
    try:
        ws = load_path(path)
    except FileNotFoundError:
        stderr.write(f"sitecalc: no such file: {path}\n")
        return USAGE
    except SiteSyntaxError as exc:
        stderr.write(f"{path}:{exc}\n")
        return SYNTAX
    except SitecalcError as exc:
        stderr.write(f"{path}:{exc}\n")
        return SEMANTIC
    try:
        if args.command != "validate" and not _require_valid(ws, out):
            return SEMANTIC
        return COMMANDS[args.command](ws, args, out)
    except UsageError as exc:
        stderr.write(f"sitecalc: {exc}\n")
        return USAGE
    except SitecalcError as exc:
        stderr.write(f"sitecalc: {type(exc).__name__}: {exc}\n")
        return SEMANTIC


def main() -> None:
    sys.exit(run())
