"""Dyadic maps between block spaces, and the vertex poset they generate.

A dyadic map is presented by a pair of coverings plus a brick bijection; each
matched pair of bricks determines the unique product of positive-slope affine
interval maps between them.  Presentations are not unique: two maps are equal
iff they agree after refining to a common domain covering, and that is the
equality test used everywhere (`equals`).

Vertices are maps from a single block, taken up to permutation of the
codomain blocks; `canonicalize` picks a canonical block order.  The order
x <= y holds when y is obtained from x by a splitting, i.e. when y o x^{-1}
maps the preimage of every codomain block affinely onto that block.  Since
that condition is invariant under permuting codomain blocks, the quotient
order needs no permutation search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .dyadic import (
    Brick,
    Covering,
    DyadicInterval,
    bounding_brick,
    classify,
    enumerate_coarsenings,
    join,
    maximal_elementary,
    meet,
    trivial_covering,
    validate_covering,
    covering_from_dict,
    covering_to_dict,
)
from .errors import (
    GuardExceededError,
    NotComparableError,
    PreconditionError,
    SpaceMismatchError,
)
from .guards import active_guards, check_guard


def _image_interval(c: DyadicInterval, a: DyadicInterval, b: DyadicInterval) -> DyadicInterval:
    """Image of c under the affine map sending interval a onto interval b."""
    d = c.exp - a.exp
    if d < 0 or (c.num >> d) != a.num:
        raise ValueError("interval not inside the domain edge")
    return DyadicInterval(d + b.exp, c.num + (b.num - a.num) * (1 << d))


def image_brick(c: Brick, dom: Brick, cod: Brick) -> Brick:
    """Image of the sub-brick c under the affine map dom -> cod."""
    return Brick(
        cod.block,
        tuple(_image_interval(ci, a, b) for ci, a, b in zip(c.edges, dom.edges, cod.edges)),
    )


def preimage_brick(c: Brick, dom: Brick, cod: Brick) -> Brick:
    return image_brick(c, cod, dom)


@dataclass(frozen=True)
class DyadicMap:
    """A dyadic map presented by a compatible covering pair and a brick pairing."""

    domain: Covering
    codomain: Covering
    pairs: tuple[tuple[Brick, Brick], ...]

    def __init__(self, domain: Covering, codomain: Covering, pairs):
        pairs = tuple(sorted(pairs, key=lambda p: p[0].key()))
        if domain.s != codomain.s:
            raise SpaceMismatchError("domain and codomain dimensions differ")
        if tuple(p[0] for p in pairs) != domain.bricks:
            raise ValueError("pairing does not enumerate the domain bricks")
        if sorted((p[1].key() for p in pairs)) != [b.key() for b in codomain.bricks]:
            raise ValueError("pairing does not enumerate the codomain bricks")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "pairs", pairs)

    @property
    def s(self) -> int:
        return self.domain.s

    @property
    def m(self) -> int:
        return self.domain.m

    @property
    def n(self) -> int:
        return self.codomain.m


def identity_map(s: int, m: int = 1, on: Optional[Covering] = None) -> DyadicMap:
    cov = on if on is not None else trivial_covering(s, m)
    return DyadicMap(cov, cov, tuple((b, b) for b in cov.bricks))


def evaluate(f: DyadicMap, point: Sequence[Fraction], block: int = 1):
    """Apply f to an exact rational point; returns (block, point)."""
    point = tuple(Fraction(p) for p in point)
    if any(not 0 <= p < 1 for p in point):
        raise ValueError("coordinates must lie in [0,1)")
    for dp, cp in f.pairs:
        if dp.contains_point(block, point):
            out = tuple(
                b.lo + (p - a.lo) * Fraction(1 << a.exp, 1 << b.exp)
                for a, b, p in zip(dp.edges, cp.edges, point)
            )
            return cp.block, out
    raise ValueError(f"point {point} not in any domain brick of block {block}")


def compose(g: DyadicMap, f: DyadicMap) -> DyadicMap:
    """The composite g o f, presented on the common refinement."""
    if (f.s, f.n) != (g.s, g.m):
        raise SpaceMismatchError(
            f"cannot compose: f maps into {(f.s, f.n)}, g maps from {(g.s, g.m)}"
        )
    middle = join(f.codomain, g.domain)
    new_pairs = []
    for piece in middle.bricks:
        dp, cp = next(p for p in f.pairs if p[1].contains(piece))
        dg, cg = next(p for p in g.pairs if p[0].contains(piece))
        new_pairs.append(
            (preimage_brick(piece, dp, cp), image_brick(piece, dg, cg))
        )
    dom = Covering(f.s, f.m, (p[0] for p in new_pairs))
    cod = Covering(f.s, g.n, (p[1] for p in new_pairs))
    return DyadicMap(dom, cod, new_pairs)


def inverse(f: DyadicMap) -> DyadicMap:
    return DyadicMap(f.codomain, f.domain, tuple((c, d) for d, c in f.pairs))


def equals(f: DyadicMap, g: DyadicMap) -> bool:
    """Equality as maps: agree brick-by-brick on a common domain refinement."""
    if (f.s, f.m, f.n) != (g.s, g.m, g.n):
        raise SpaceMismatchError("maps live between different spaces")
    common = join(f.domain, g.domain)
    for piece in common.bricks:
        dpf, cpf = next(p for p in f.pairs if p[0].contains(piece))
        dpg, cpg = next(p for p in g.pairs if p[0].contains(piece))
        if image_brick(piece, dpf, cpf) != image_brick(piece, dpg, cpg):
            return False
    return True


def permute_codomain_blocks(f: DyadicMap, perm: Sequence[int]) -> DyadicMap:
    """Relabel codomain blocks; perm[i-1] is the new index of block i."""
    if sorted(perm) != list(range(1, f.n + 1)):
        raise ValueError("not a permutation of the codomain blocks")

    def move(b: Brick) -> Brick:
        return Brick(perm[b.block - 1], b.edges, b.label)

    cod = Covering(f.s, f.n, (move(b) for b in f.codomain.bricks))
    return DyadicMap(f.domain, cod, tuple((d, move(c)) for d, c in f.pairs))


def block_permutation_map(s: int, n: int, perm: Sequence[int]) -> DyadicMap:
    return permute_codomain_blocks(identity_map(s, n), perm)


def split_map(w: Covering) -> DyadicMap:
    """The splitting along w: each brick of w is sent onto its own block.

    Blocks of the codomain are numbered by the canonical brick order of w.
    """
    unit = trivial_covering(w.s, len(w.bricks))
    pairs = tuple(
        (b.geometry(), unit.bricks[i]) for i, b in enumerate(w.bricks)
    )
    return DyadicMap(w.geometry(), unit, pairs)


def merge_map(w: Covering) -> DyadicMap:
    """The merging along w (inverse of the splitting)."""
    return inverse(split_map(w))


@dataclass(frozen=True)
class ArrowClass:
    is_splitting: bool
    is_merging: bool
    nontrivial: bool
    splitting_covering: Optional[Covering] = None
    merging_covering: Optional[Covering] = None
    elementary: bool = False
    very_elementary: bool = False


def _splitting_covering(f: DyadicMap) -> Optional[Covering]:
    """The covering along which f splits, or None if f is not a splitting.

    f is a splitting iff the preimage of every codomain block is a single
    brick mapped affinely onto that block; this is presentation-independent.
    """
    hulls = []
    for i in range(1, f.n + 1):
        pieces = [(dp, cp) for dp, cp in f.pairs if cp.block == i]
        try:
            hull = bounding_brick([dp.geometry() for dp, _ in pieces])
        except ValueError:
            return None
        if sum(dp.volume for dp, _ in pieces) != hull.volume:
            return None
        target = Brick(i, (DyadicInterval(0, 0),) * f.s)
        for dp, cp in pieces:
            if image_brick(dp.geometry(), hull, target) != cp.geometry():
                return None
        hulls.append(hull)
    return Covering(f.s, f.m, hulls)


def classify_arrow(f: DyadicMap) -> ArrowClass:
    split_cov = _splitting_covering(f)
    merge_cov = _splitting_covering(inverse(f))
    is_split = split_cov is not None
    is_merge = merge_cov is not None
    flags = None
    if is_split:
        flags = classify(split_cov)
    elif is_merge:
        flags = classify(merge_cov)
    return ArrowClass(
        is_splitting=is_split,
        is_merging=is_merge,
        nontrivial=(f.n > f.m) if is_split else (f.m > f.n) if is_merge else False,
        splitting_covering=split_cov,
        merging_covering=merge_cov,
        elementary=flags.elementary if flags else False,
        very_elementary=flags.very_elementary if flags else False,
    )


def reduce_presentation(f: DyadicMap) -> DyadicMap:
    """Best-effort coarsening of the presentation by merging glueable pairs.

    Two pairs merge when both their domain and codomain bricks are siblings
    (differ in exactly one halved direction) and the affine maps glue to one
    affine map.  Greedy, for compactness only; equality testing never relies
    on reduced forms.
    """

    def glue(x: Brick, y: Brick) -> Optional[Brick]:
        if x.block != y.block:
            return None
        diff = [i for i, (a, b) in enumerate(zip(x.edges, y.edges)) if a != b]
        if len(diff) != 1:
            return None
        a, b = x.edges[diff[0]], y.edges[diff[0]]
        if a.exp != b.exp or a.num > b.num:
            a, b = b, a
        if a.exp != b.exp or b.num != a.num + 1 or a.num % 2 != 0:
            return None
        edges = list(x.edges)
        edges[diff[0]] = DyadicInterval(a.exp - 1, a.num // 2)
        return Brick(x.block, tuple(edges))

    pairs = [(d.geometry(), c.geometry()) for d, c in f.pairs]
    changed = True
    while changed:
        changed = False
        for i, j in itertools.combinations(range(len(pairs)), 2):
            di, ci = pairs[i]
            dj, cj = pairs[j]
            dm = glue(di, dj)
            cm = glue(ci, cj)
            if dm is None or cm is None:
                continue
            if image_brick(di, dm, cm) != ci or image_brick(dj, dm, cm) != cj:
                continue
            pairs = [p for k, p in enumerate(pairs) if k not in (i, j)]
            pairs.append((dm, cm))
            changed = True
            break
    dom = Covering(f.s, f.m, (p[0] for p in pairs))
    cod = Covering(f.s, f.n, (p[1] for p in pairs))
    return DyadicMap(dom, cod, pairs)


# --- vertices ----------------------------------------------------------------

@dataclass(frozen=True)
class PVertex:
    """A map from one block, with the codomain blocks in canonical order."""

    map: DyadicMap

    @property
    def t(self) -> int:
        return self.map.n

    @property
    def s(self) -> int:
        return self.map.s


def canonicalize(f: DyadicMap) -> PVertex:
    """Quotient by codomain block permutations: reorder blocks canonically."""
    if f.m != 1:
        raise PreconditionError("vertices are maps from a single block")
    f = DyadicMap(
        f.domain.geometry(),
        f.codomain.geometry(),
        tuple((d.geometry(), c.geometry()) for d, c in f.pairs),
    )

    def block_key(i: int):
        return tuple(
            sorted(
                (tuple((e.exp, e.num) for e in cp.edges),
                 tuple((e.exp, e.num) for e in dp.edges))
                for dp, cp in f.pairs
                if cp.block == i
            )
        )

    order = sorted(range(1, f.n + 1), key=block_key)
    perm = [0] * f.n
    for new_index, old in enumerate(order, start=1):
        perm[old - 1] = new_index
    return PVertex(permute_codomain_blocks(f, perm))


def same_vertex(x: PVertex, y: PVertex) -> bool:
    """Semantic equality: equal maps up to codomain block permutation."""
    if x.t != y.t or x.s != y.s:
        return False
    if x.map == y.map:
        return True
    check_guard(x.t, active_guards().perm_blocks, "block permutation search")
    for perm in itertools.permutations(range(1, x.t + 1)):
        if equals(permute_codomain_blocks(y.map, perm), x.map):
            return True
    return False


@dataclass(frozen=True)
class LeResult:
    holds: bool
    witness: Optional[DyadicMap] = None
    covering: Optional[Covering] = None

    def __bool__(self) -> bool:
        return self.holds


def vertex_le(x: PVertex, y: PVertex) -> LeResult:
    """x <= y iff y is obtained from x by a splitting (trivial one allowed).

    The witness z = y o x^{-1} and the covering it splits along are returned.
    Splitting-ness is invariant under permuting codomain blocks, so the
    quotient by block order needs no search here.
    """
    if x.s != y.s:
        raise SpaceMismatchError("vertices of different dimension")
    if x.t > y.t:
        return LeResult(False)
    z = compose(y.map, inverse(x.map))
    cov = _splitting_covering(z)
    if cov is None:
        return LeResult(False)
    return LeResult(True, z, cov)


def vertex_lt(x: PVertex, y: PVertex) -> LeResult:
    res = vertex_le(x, y)
    if res.holds and y.t > x.t:
        return res
    return LeResult(False)


def vertex_elem_le(x: PVertex, y: PVertex) -> LeResult:
    """x <= y by an elementary splitting."""
    res = vertex_le(x, y)
    if res.holds and classify(res.covering).elementary:
        return res
    return LeResult(False)


def vertex_velem_le(x: PVertex, y: PVertex) -> LeResult:
    """x <= y by a very elementary splitting."""
    res = vertex_le(x, y)
    if res.holds and classify(res.covering).very_elementary:
        return res
    return LeResult(False)


def split_vertex(x: PVertex, w: Covering) -> PVertex:
    """The vertex obtained from x by splitting along w (a covering of x's codomain)."""
    if (w.s, w.m) != (x.s, x.t):
        raise SpaceMismatchError("covering does not live in the codomain space of x")
    return canonicalize(compose(split_map(w), x.map))


def elementary_core(x: PVertex, y: PVertex) -> PVertex:
    """The unique maximal elementary-splitting stage inside [x, y].

    Computed as x split along the finest common coarsening of the witness
    covering with the maximal elementary covering of x's codomain space.
    """
    res = vertex_le(x, y)
    if not res:
        raise NotComparableError("need x <= y")
    core_cov = meet(maximal_elementary(x.s, x.t), res.covering)
    return split_vertex(x, core_cov)


def interval_coverings(x: PVertex, y: PVertex) -> list[tuple[Covering, PVertex]]:
    """The closed interval [x, y]: one vertex per coarsening of the witness."""
    res = vertex_le(x, y)
    if not res:
        raise NotComparableError("need x <= y")
    return [(w, split_vertex(x, w)) for w in enumerate_coarsenings(res.covering)]


def act(x: PVertex, g: DyadicMap) -> PVertex:
    """Right action of the self-map group: precompose the vertex map with g."""
    if (g.s, g.m, g.n) != (x.s, 1, 1):
        raise SpaceMismatchError("group elements are self-maps of one block")
    return canonicalize(compose(x.map, g))


def stabilizer(x: PVertex) -> list[DyadicMap]:
    """The full stabilizer of x under the action: conjugates of block permutations."""
    n = x.t
    check_guard(n, active_guards().stab_blocks, "stabilizer enumeration")
    f = x.map
    finv = inverse(f)
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        g = compose(finv, compose(block_permutation_map(x.s, n, perm), f))
        out.append(g)
    return out


def transporter(x: PVertex, y: PVertex) -> DyadicMap:
    """g with x . g = y, for level-1 vertices (the action is transitive there)."""
    if x.t != 1 or y.t != 1:
        raise PreconditionError("transporter is defined at level 1")
    return compose(inverse(x.map), y.map)


def directedness_witness(x: PVertex, y: PVertex, bound: int = 64) -> PVertex:
    """A common upper bound of x and y, by splitting along a joined covering."""
    if x.s != y.s:
        raise SpaceMismatchError("vertices of different dimension")
    common = join(x.map.domain, y.map.domain)
    if len(common.bricks) > bound:
        raise GuardExceededError(f"upper bound would need {len(common.bricks)} blocks")
    images = []
    for piece in common.bricks:
        dp, cp = next(p for p in x.map.pairs if p[0].contains(piece))
        images.append(image_brick(piece, dp, cp))
    pushed = Covering(x.s, x.t, images)
    z = split_vertex(x, pushed)
    for low in (x, y):
        if not vertex_le(low, z):
            raise AssertionError("constructed bound fails verification")
    return z


# --- JSON ---------------------------------------------------------------------

def map_to_dict(f: DyadicMap) -> dict:
    dom = f.domain if f.domain.labeled else f.domain.with_canonical_labels()
    cod = f.codomain if f.codomain.labeled else f.codomain.with_canonical_labels()
    dlabel = {b.geometry(): b.label for b in dom.bricks}
    clabel = {b.geometry(): b.label for b in cod.bricks}
    pairs = sorted(
        (dlabel[d.geometry()], clabel[c.geometry()]) for d, c in f.pairs
    )
    return {
        "domain": covering_to_dict(dom),
        "codomain": covering_to_dict(cod),
        "pairs": [list(p) for p in pairs],
    }


def map_from_dict(d: dict) -> DyadicMap:
    dom = covering_from_dict(d["domain"])
    cod = covering_from_dict(d["codomain"])
    pairs = tuple(
        (dom.brick_with_label(int(a)), cod.brick_with_label(int(b)))
        for a, b in d["pairs"]
    )
    return DyadicMap(dom, cod, pairs)


def vertex_to_dict(x: PVertex) -> dict:
    return map_to_dict(x.map)


def vertex_from_dict(d: dict) -> PVertex:
    return canonicalize(map_from_dict(d))
