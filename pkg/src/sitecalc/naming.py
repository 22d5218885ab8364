"""Canonical string names for computed elements and witnesses."""
from __future__ import annotations

from collections.abc import Iterable, Mapping


def tup(*parts) -> str:
    return "(" + ",".join(term(p) for p in parts) + ")"


def family(pairs: Iterable[tuple[str, str]]) -> str:
    """Name of an arrow-indexed family such as a matching family."""
    return "{" + ",".join(f"{k}:{v}" for k, v in sorted(pairs)) + "}"


def term(x) -> str:
    """Render a witness or element as a canonical one-line term."""
    from .presheaf import Sieve

    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if x is None:
        return "-"
    if isinstance(x, Sieve):
        return x.render()
    if isinstance(x, Mapping):
        return "{" + ",".join(f"{term(k)}:{term(v)}" for k, v in sorted(x.items(), key=lambda kv: term(kv[0]))) + "}"
    if isinstance(x, (frozenset, set)):
        return "{" + ",".join(sorted(term(e) for e in x)) + "}"
    if isinstance(x, (tuple, list)):
        return "(" + ",".join(term(e) for e in x) + ")"
    return str(x)


class UnionFind:
    def __init__(self, items: Iterable = ()):
        self.parent = {}
        for item in items:
            self.add(item)

    def add(self, item):
        self.parent.setdefault(item, item)

    def find(self, item):
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True

    def classes(self) -> list[list]:
        groups: dict = {}
        for item in self.parent:
            groups.setdefault(self.find(item), []).append(item)
        return list(groups.values())


def name_classes(classes: list[list], render, qualified=None) -> list[tuple[str, list]]:
    """Name each class by its lexicographically least rendered member.

    Falls back to ``qualified`` renderings when two classes would share a name.
    Returns (name, members) pairs sorted by name.
    """
    named = [(min(render(m) for m in cls), cls) for cls in classes]
    if len({n for n, _ in named}) != len(named) and qualified is not None:
        named = [(min(qualified(m) for m in cls), cls) for cls in classes]
    return sorted(named, key=lambda p: p[0])
