"""Regression fixtures: the hand-checked example maps, coverings, and mergings
that the CLI and test suite use as frozen inputs.

The same objects are shipped as JSON under steinforge/fixtures/ (regenerate
with scripts/build_fixtures.py); the constructors here are the source of
truth.
"""

from __future__ import annotations

import importlib.resources
import json

from .dyadic import Covering, brick
from .groupsv import DyadicMap


def covering_fig2(panel: str) -> Covering:
    """The three non-elementary example coverings of the unit square."""
    if panel == "left":
        return Covering(2, 1, [
            brick(1, (1, 0), (2, 2)),
            brick(1, (1, 0), (2, 3)),
            brick(1, (1, 1), (1, 1)),
            brick(1, (1, 0), (1, 0)),
            brick(1, (1, 1), (2, 1)),
            brick(1, (2, 2), (2, 0)),
            brick(1, (2, 3), (2, 0)),
        ])
    if panel == "mid":
        return Covering(2, 1, [
            brick(1, (1, 0), (0, 0)),
            brick(1, (1, 1), (1, 1)),
            brick(1, (2, 2), (2, 1)),
            brick(1, (2, 2), (2, 0)),
            brick(1, (2, 3), (1, 0)),
        ])
    if panel == "right":
        return Covering(2, 1, [
            brick(1, (0, 0), (1, 1)),
            brick(1, (0, 0), (2, 1)),
            brick(1, (2, 0), (2, 0)),
            brick(1, (2, 1), (2, 0)),
            brick(1, (1, 1), (2, 0)),
        ])
    raise ValueError(f"unknown panel {panel!r}")


def map_f1() -> DyadicMap:
    """Self-map of the unit square presented on five brick pairs."""
    dom = [
        brick(1, (1, 0), (2, 3), label=1),
        brick(1, (2, 0), (2, 2), label=2),
        brick(1, (2, 1), (2, 2), label=3),
        brick(1, (1, 1), (1, 1), label=4),
        brick(1, (0, 0), (1, 0), label=5),
    ]
    cod = [
        brick(1, (1, 0), (2, 2), label=1),
        brick(1, (1, 0), (1, 0), label=2),
        brick(1, (2, 2), (0, 0), label=3),
        brick(1, (1, 0), (2, 3), label=4),
        brick(1, (2, 3), (0, 0), label=5),
    ]
    pairs = [(d, c) for d, c in zip(dom, cod)]
    return DyadicMap(Covering(2, 1, dom), Covering(2, 1, cod), pairs)


def map_f2() -> DyadicMap:
    """map_f1 followed by the splitting along the horizontal halves."""
    dom = [
        brick(1, (1, 0), (2, 3), label=1),
        brick(1, (2, 0), (2, 2), label=2),
        brick(1, (2, 1), (3, 5), label=3),
        brick(1, (1, 1), (1, 1), label=4),
        brick(1, (0, 0), (2, 1), label=5),
        brick(1, (2, 1), (3, 4), label=6),
        brick(1, (0, 0), (2, 0), label=7),
    ]
    cod = [
        brick(1, (1, 0), (1, 0), label=1),
        brick(2, (1, 0), (0, 0), label=2),
        brick(1, (2, 2), (0, 0), label=3),
        brick(1, (1, 0), (1, 1), label=4),
        brick(1, (2, 3), (0, 0), label=5),
        brick(2, (2, 2), (0, 0), label=6),
        brick(2, (2, 3), (0, 0), label=7),
    ]
    pairs = [(d, c) for d, c in zip(dom, cod)]
    return DyadicMap(Covering(2, 1, dom), Covering(2, 2, cod), pairs)


def horizontal_halves_splitting_covering() -> Covering:
    """The two-brick covering along which map_f2 splits off map_f1."""
    return Covering(2, 1, [brick(1, (0, 0), (1, 1)), brick(1, (0, 0), (1, 0))])


def merging_fig3():
    """Five labeled bricks merged into three blocks: one pair stacked
    vertically (5 below 2), one singleton (4), one pair side by side (1, 3)."""
    from .steinlocal import Merging, merging_part

    return Merging(2, 5, (
        merging_part(2, {5: ((0, 0), (1, 0)), 2: ((0, 0), (1, 1))}),
        merging_part(2, {4: ((0, 0), (0, 0))}),
        merging_part(2, {1: ((1, 0), (0, 0)), 3: ((1, 1), (0, 0))}),
    ))


def merging_fig4() -> dict:
    """The four mergings of the build-up step: u has a fully merged grid part
    plus a merged pair B = {5,6}; v splits everything, v0 spares B, and z_B is
    the maximal splitting sparing B."""
    from .steinlocal import Merging, merging_part

    grid = merging_part(2, {
        1: ((1, 0), (1, 1)), 2: ((1, 1), (1, 1)),
        3: ((1, 0), (1, 0)), 4: ((1, 1), (1, 0)),
    })
    pair_b = merging_part(2, {5: ((1, 0), (0, 0)), 6: ((1, 1), (0, 0))})
    top = merging_part(2, {1: ((1, 0), (0, 0)), 2: ((1, 1), (0, 0))})
    bottom = merging_part(2, {3: ((1, 0), (0, 0)), 4: ((1, 1), (0, 0))})
    singles = {i: merging_part(2, {i: ((0, 0), (0, 0))}) for i in range(1, 7)}
    u = Merging(2, 6, (grid, pair_b))
    v = Merging(2, 6, (top, bottom, singles[5], singles[6]))
    v0 = Merging(2, 6, (top, bottom, pair_b))
    z_b = Merging(2, 6, (singles[1], singles[2], singles[3], singles[4], pair_b))
    return {"u": u, "v": v, "v0": v0, "z_b": z_b}


FIXTURE_BUILDERS = {
    "f1": lambda: map_f1(),
    "f2": lambda: map_f2(),
    "fig2-left": lambda: covering_fig2("left"),
    "fig2-mid": lambda: covering_fig2("mid"),
    "fig2-right": lambda: covering_fig2("right"),
    "fig3": lambda: merging_fig3(),
}


def fixture_path(name: str):
    return importlib.resources.files("steinforge") / "fixtures" / f"{name}.json"


def load_fixture_json(name: str) -> dict:
    with importlib.resources.as_file(fixture_path(name)) as p:
        return json.loads(p.read_text())
