"""Canonical small sites, presheaves and distributors, loaded from the shipped sitefiles."""
from __future__ import annotations

from functools import cache
from importlib import resources

from ..sitefile import Workspace, load

FILES = ("arrow", "cospan", "disc2", "ed", "eh", "fw", "one", "split")


def text(name: str) -> bytes:
    return resources.files(__name__).joinpath(f"{name}.site").read_bytes()


@cache
def workspace(name: str) -> Workspace:
    return load(text(name))


def path(name: str):
    return resources.files(__name__).joinpath(f"{name}.site")


def __getattr__(attr: str):
    from ..distributor import hom_unit

    table = {
        "ONE": ("one", "categories"), "TRIV1": ("one", "sites"),
        "ARROW": ("arrow", "categories"), "TRIV2": ("arrow", "sites"),
        "COSPAN": ("cospan", "categories"), "JC": ("cospan", "sites"), "X0": ("cospan", "presheaves"),
        "SPLIT": ("split", "categories"), "JS": ("split", "sites"),
        "EH": ("eh", "distributors"), "ED": ("ed", "distributors"),
        "FW": ("fw", "functors"), "G1": ("fw", "functors"),
        "DISC2": ("disc2", "categories"),
    }
    if attr == "HOMC":
        return hom_unit(workspace("cospan").categories["COSPAN"])
    if attr in table:
        f, kind = table[attr]
        return getattr(workspace(f), kind)[attr]
    raise AttributeError(attr)
