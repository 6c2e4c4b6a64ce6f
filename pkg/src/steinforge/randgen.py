"""Seeded random generators for coverings, group elements, and vertices.

Every generator takes an explicit seed (or a random.Random) so that suites
are reproducible; nothing here touches global random state.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .dyadic import Brick, Covering, trivial_covering


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_covering(seed, s: int, m: int, max_bricks: int = 10,
                    exact_bricks: int | None = None, max_exp: int = 4) -> Covering:
    """Random covering of I^s(m) built by repeated halving of random bricks."""
    rng = _rng(seed)
    cap = m * (1 << (max_exp * s))
    if exact_bricks is not None:
        target = exact_bricks
    else:
        target = rng.randint(m, max_bricks)
    if target < m or target > cap:
        raise ValueError(f"cannot make {target} bricks in I^{s}({m})")
    bricks = list(trivial_covering(s, m).bricks)
    while len(bricks) < target:
        idx = rng.randrange(len(bricks))
        b = bricks[idx]
        dims = [d for d in range(s) if b.edges[d].exp < max_exp]
        if not dims:
            continue
        d = rng.choice(dims)
        lo, hi = b.edges[d].halves()
        e1 = list(b.edges)
        e2 = list(b.edges)
        e1[d] = lo
        e2[d] = hi
        bricks[idx] = Brick(b.block, tuple(e1))
        bricks.append(Brick(b.block, tuple(e2)))
    return Covering(s, m, bricks)


def random_point(seed, s: int) -> tuple[Fraction, ...]:
    """Random rational point in [0,1)^s with mixed (mostly non-dyadic) denominators."""
    rng = _rng(seed)
    coords = []
    for _ in range(s):
        den = rng.choice([3, 5, 7, 9, 27, 81, 16, 64])
        coords.append(Fraction(rng.randrange(0, den), den))
    return tuple(coords)


def random_map(seed, s: int, m: int = 1, n: int = 1, max_bricks: int = 6,
               max_exp: int = 3):
    """Random dyadic map I^s(m) -> I^s(n) via a random brick bijection."""
    from .groupsv import DyadicMap

    rng = _rng(seed)
    k = rng.randint(max(m, n), max(m, n, max_bricks))
    dom = random_covering(rng, s, m, exact_bricks=k, max_exp=max_exp)
    cod = random_covering(rng, s, n, exact_bricks=k, max_exp=max_exp)
    cod_bricks = list(cod.bricks)
    rng.shuffle(cod_bricks)
    return DyadicMap(dom, cod, tuple(zip(dom.bricks, cod_bricks)))


def random_group_element(seed, s: int, max_bricks: int = 6):
    """Random element of the dyadic self-map group of I^s."""
    return random_map(seed, s, 1, 1, max_bricks=max_bricks)


def random_vertex(seed, s: int, t: int, max_bricks: int = 6):
    """Random canonical vertex with t codomain blocks."""
    from .groupsv import canonicalize, split_vertex

    rng = _rng(seed)
    base = canonicalize(random_group_element(rng, s, max_bricks=max_bricks))
    if t == 1:
        return base
    w = random_covering(rng, s, 1, exact_bricks=t)
    return split_vertex(base, w)
