"""Shared fixtures sets and seeded random generators for the test-suite."""
from __future__ import annotations

import random
from functools import cache

from sitecalc import fixtures as fx
from sitecalc.distributor import Distributor, hom_unit, representables
from sitecalc.fincat import op
from sitecalc.naming import UnionFind
from sitecalc.presheaf import Presheaf, all_sieves, initial, terminal, yoneda, coproduct
from sitecalc.siteprops import SiteDistributor, is_distributor_of_sites
from sitecalc.topology import Coverage, saturate, sheafify, trivial_topology

SEED = 20261014


def fixture_sites():
    return {
        "ONE/TRIV1": (fx.ONE, fx.TRIV1),
        "ARROW/TRIV2": (fx.ARROW, fx.TRIV2),
        "COSPAN/JC": (fx.COSPAN, fx.JC),
        "SPLIT/JS": (fx.SPLIT, fx.JS),
    }


@cache
def candidate_site_distributors():
    """Every fixture-derived distributor with a choice of topologies on both ends."""
    out = {
        "hom(ONE)": SiteDistributor(hom_unit(fx.ONE), fx.TRIV1, fx.TRIV1),
        "hom(ARROW)": SiteDistributor(hom_unit(fx.ARROW), fx.TRIV2, fx.TRIV2),
        "HOMC": SiteDistributor(fx.HOMC, fx.JC, fx.JC),
        "HOMC/trivial": SiteDistributor(fx.HOMC, trivial_topology(fx.COSPAN), trivial_topology(fx.COSPAN)),
        "hom(SPLIT)": SiteDistributor(hom_unit(fx.SPLIT), fx.JS, fx.JS),
        "EH": SiteDistributor(fx.EH, fx.JC, fx.TRIV1),
        "ED": SiteDistributor(fx.ED, fx.TRIV1, fx.JC),
        "FW*": SiteDistributor(representables(fx.FW, "covariant"), fx.TRIV1, fx.JC),
        "FW^": SiteDistributor(representables(fx.FW, "contravariant"), fx.JC, fx.TRIV1),
        "G1*": SiteDistributor(representables(fx.G1, "covariant"), fx.JC, fx.TRIV1),
        "G1^": SiteDistributor(representables(fx.G1, "contravariant"), fx.TRIV1, fx.JC),
    }
    return out


@cache
def fixture_dos():
    """The candidates that are distributors of sites."""
    return {n: sd for n, sd in candidate_site_distributors().items() if is_distributor_of_sites(sd)}


def _relabel(x: Presheaf, tag: str) -> Presheaf:
    # short element names, so sizes and not naming drive the tests
    cat = x.base
    ren = {c: {e: f"{tag}{c}{k}" for k, e in enumerate(x.at(c))} for c in cat.objects}
    sets = {c: list(ren[c].values()) for c in cat.objects}
    acts = {u: {ren[cat.tgt(u)][e]: ren[cat.src(u)][x.act(u, e)] for e in x.at(cat.tgt(u))} for u in cat.arrows}
    return Presheaf(cat, sets, acts, name=x.name)


def fixture_sheaves(site: str, cap: int = 3):
    cat, top = fixture_sites()[site]
    return sheaf_family(top, cap)


@cache
def sheaf_family(top, cap: int = 3):
    """A curated family of sheaves with at most ``cap`` elements over each object."""
    cat = top.base
    cands = [initial(cat), terminal(cat)]
    for c in cat.objects:
        cands.append(yoneda(cat, c))
    for c in cat.objects:
        for c2 in cat.objects:
            if c <= c2:
                cands.append(coproduct(yoneda(cat, c), yoneda(cat, c2))[0])
    if cat == fx.COSPAN:
        cands.append(fx.X0)
    out, seen = [], set()
    for k, x in enumerate(cands):
        a = _relabel(sheafify(x, top)[0], f"s{k}")
        sig = tuple(sorted(a.size().items()))
        if max(a.size().values(), default=0) <= cap and sig not in seen:
            seen.add(sig)
            out.append(a)
    return out


# random distributors as quotients of free ones

def random_distributor(rng: random.Random, C, D, max_per_pair: int = 2, name=None) -> Distributor:
    gens = [(rng.choice(D.objects), rng.choice(C.objects)) for _ in range(rng.randint(0, 3))]
    elems = {(d, c): [] for d in D.objects for c in C.objects}
    for g, (d0, c0) in enumerate(gens):
        for d in D.objects:
            for c in C.objects:
                for v in D.hom(d, d0):
                    for u in C.hom(c0, c):
                        elems[(d, c)].append((g, v, u))
    where = {x: p for p, xs in elems.items() for x in xs}

    def lact(v2, x):
        g, v, u = x
        return (g, D.comp(v, v2), u)

    def ract(u2, x):
        g, v, u = x
        return (g, v, C.comp(u2, u))

    uf = UnionFind(where)

    def close(a, b):
        # congruence closure: merged elements keep merging under every action
        todo = [(a, b)]
        while todo:
            a, b = todo.pop()
            if not uf.union(a, b):
                continue
            d, c = where[a]
            for v2 in D.arrows_into(d):
                todo.append((lact(v2, a), lact(v2, b)))
            for u2 in C.arrows_from(c):
                todo.append((ract(u2, a), ract(u2, b)))

    for _ in range(rng.randint(0, 2)):
        p = rng.choice(list(elems))
        if len(elems[p]) >= 2:
            close(*rng.sample(elems[p], 2))
    while True:
        big = [p for p, xs in elems.items() if len({uf.find(x) for x in xs}) > max_per_pair]
        if not big:
            break
        p = rng.choice(big)
        reps = sorted({uf.find(x) for x in elems[p]})
        close(*rng.sample(reps, 2))
    names = {}
    for p in sorted(elems):
        for r in sorted({uf.find(x) for x in elems[p]}):
            names[r] = f"h{len(names)}"
    het = {p: sorted({names[uf.find(x)] for x in xs}) for p, xs in elems.items()}
    pick = {names[uf.find(x)]: x for x in where}
    left = {(v, c): {n: names[uf.find(lact(v, pick[n]))] for n in het[(D.tgt(v), c)]}
            for v in D.arrows for c in C.objects}
    right = {(u, d): {n: names[uf.find(ract(u, pick[n]))] for n in het[(d, C.src(u))]}
             for u in C.arrows for d in D.objects}
    return Distributor(C, D, het, left, right, name=name)


@cache
def small_categories():
    cats = [fx.ONE, fx.ARROW, fx.COSPAN, fx.SPLIT, fx.DISC2]
    return cats + [op(c) for c in (fx.ARROW, fx.COSPAN, fx.SPLIT)]


def random_topology(rng: random.Random, cat):
    gens = {}
    for c in cat.objects:
        sieves = all_sieves(cat, c)
        gens[c] = set(rng.sample(sieves, rng.randint(0, min(2, len(sieves)))))
    return saturate(Coverage(cat, gens))


def random_cases(n: int, seed: int = SEED):
    rng = random.Random(seed)
    cats = small_categories()
    for k in range(n):
        C, D = rng.choice(cats), rng.choice(cats)
        h = random_distributor(rng, C, D, name=f"R{k}")
        yield h, random_topology(rng, C), random_topology(rng, D)
