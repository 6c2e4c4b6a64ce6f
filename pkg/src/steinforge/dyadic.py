"""Exact geometry of dyadic intervals, bricks, and coverings.

All coordinates are dyadic rationals k/2^l stored as integer pairs; there is
no floating point anywhere.  Intervals are half-open, [k/2^l, (k+1)/2^l), so
every point of [0,1)^s lies in exactly one brick of a covering and point
location is unambiguous.

A covering of I^s(m) is a finite set of bricks that partitions each of the m
blocks.  Coverings of a fixed space form a lattice under refinement: the join
is the coarsest common refinement (pairwise intersections) and the meet is
the finest common coarsening (computed by an overlap-component fixpoint and
cross-checked in the tests against exhaustive coarsening enumeration).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import InvalidCoveringError, SpaceMismatchError
from .guards import active_guards, check_guard


class Dyadic(NamedTuple):
    """A dyadic rational num/2^exp in [0, 1], in lowest terms."""

    num: int
    exp: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def __str__(self) -> str:
        return f"{self.num}/2^{self.exp}"


def dyadic(num: int, exp: int = 0) -> Dyadic:
    """Normalize num/2^exp: num odd, or num == 0 and exp == 0."""
    if num < 0 or exp < 0 or num > (1 << exp):
        raise ValueError(f"{num}/2^{exp} is not a dyadic number in [0, 1]")
    while num and num % 2 == 0:
        num //= 2
        exp -= 1
    if num == 0:
        exp = 0
    return Dyadic(num, exp)


class DyadicInterval(NamedTuple):
    """The half-open interval [num/2^exp, (num+1)/2^exp)."""

    exp: int
    num: int

    @property
    def lo(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    @property
    def hi(self) -> Fraction:
        return Fraction(self.num + 1, 1 << self.exp)

    @property
    def length(self) -> Fraction:
        return Fraction(1, 1 << self.exp)

    def contains_point(self, p: Fraction) -> bool:
        scaled = p * (1 << self.exp)
        return self.num <= scaled < self.num + 1

    def contains(self, other: "DyadicInterval") -> bool:
        d = other.exp - self.exp
        return d >= 0 and (other.num >> d) == self.num

    def intersect(self, other: "DyadicInterval") -> Optional["DyadicInterval"]:
        # Dyadic intervals are nested or disjoint.
        if self.contains(other):
            return other
        if other.contains(self):
            return self
        return None

    def halves(self) -> tuple["DyadicInterval", "DyadicInterval"]:
        return (
            DyadicInterval(self.exp + 1, 2 * self.num),
            DyadicInterval(self.exp + 1, 2 * self.num + 1),
        )

    def ancestor(self, exp: int) -> "DyadicInterval":
        if exp > self.exp:
            raise ValueError("ancestor must be coarser")
        return DyadicInterval(exp, self.num >> (self.exp - exp))

    def key(self) -> tuple[Fraction, int]:
        """Sort key matching lexicographic order of binary addresses."""
        return (self.lo, self.exp)


UNIT = DyadicInterval(0, 0)


def interval_hull(intervals: Sequence[DyadicInterval]) -> DyadicInterval:
    """Smallest dyadic interval containing all inputs (common address prefix)."""
    cur = intervals[0]
    for other in intervals[1:]:
        while not cur.contains(other):
            cur = cur.ancestor(cur.exp - 1)
    return cur


class Brick(NamedTuple):
    """A product of dyadic intervals inside one block of I^s(m)."""

    block: int
    edges: tuple[DyadicInterval, ...]
    label: Optional[int] = None

    @property
    def s(self) -> int:
        return len(self.edges)

    @property
    def volume_exp(self) -> int:
        return sum(e.exp for e in self.edges)

    @property
    def volume(self) -> Fraction:
        return Fraction(1, 1 << self.volume_exp)

    @property
    def is_elementary(self) -> bool:
        return all(e.exp <= 1 for e in self.edges)

    @property
    def is_very_elementary(self) -> bool:
        return self.volume_exp <= 1

    def geometry(self) -> "Brick":
        return self if self.label is None else Brick(self.block, self.edges)

    def with_label(self, label: Optional[int]) -> "Brick":
        return Brick(self.block, self.edges, label)

    def contains(self, other: "Brick") -> bool:
        return self.block == other.block and all(
            a.contains(b) for a, b in zip(self.edges, other.edges)
        )

    def intersect(self, other: "Brick") -> Optional["Brick"]:
        if self.block != other.block:
            return None
        cuts = []
        for a, b in zip(self.edges, other.edges):
            c = a.intersect(b)
            if c is None:
                return None
            cuts.append(c)
        return Brick(self.block, tuple(cuts))

    def contains_point(self, block: int, point: Sequence[Fraction]) -> bool:
        return self.block == block and all(
            e.contains_point(p) for e, p in zip(self.edges, point)
        )

    def key(self):
        return (self.block, tuple(e.key() for e in self.edges))


def brick(block: int, *edges: tuple[int, int], label: Optional[int] = None) -> Brick:
    """Convenience constructor from (exp, num) pairs."""
    return Brick(block, tuple(DyadicInterval(l, k) for l, k in edges), label)


def bounding_brick(bricks: Sequence[Brick]) -> Brick:
    """Smallest brick containing all inputs (same block required)."""
    if not bricks:
        raise ValueError("bounding_brick of empty set")
    block = bricks[0].block
    if any(b.block != block for b in bricks):
        raise ValueError("bounding_brick: bricks from different blocks")
    s = bricks[0].s
    edges = tuple(interval_hull([b.edges[i] for b in bricks]) for i in range(s))
    return Brick(block, edges)


@dataclass(frozen=True)
class Covering:
    """A set of bricks tiling the m blocks of I^s(m), in canonical order."""

    s: int
    m: int
    bricks: tuple[Brick, ...]

    def __init__(self, s: int, m: int, bricks: Iterable[Brick]):
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "m", m)
        object.__setattr__(
            self, "bricks", tuple(sorted(bricks, key=lambda b: b.key()))
        )

    def __len__(self) -> int:
        return len(self.bricks)

    @property
    def space(self) -> tuple[int, int]:
        return (self.s, self.m)

    def block(self, i: int) -> tuple[Brick, ...]:
        return tuple(b for b in self.bricks if b.block == i)

    @property
    def labeled(self) -> bool:
        return all(b.label is not None for b in self.bricks)

    def geometry(self) -> "Covering":
        return Covering(self.s, self.m, (b.geometry() for b in self.bricks))

    def with_canonical_labels(self) -> "Covering":
        return Covering(
            self.s, self.m,
            (b.with_label(i + 1) for i, b in enumerate(self.bricks)),
        )

    def brick_with_label(self, label: int) -> Brick:
        for b in self.bricks:
            if b.label == label:
                return b
        raise KeyError(label)

    def locate(self, block: int, point: Sequence[Fraction]) -> Brick:
        for b in self.bricks:
            if b.contains_point(block, point):
                return b
        raise ValueError(f"point {point} in block {block} not covered")


def trivial_covering(s: int, m: int) -> Covering:
    return Covering(s, m, (Brick(i, (UNIT,) * s) for i in range(1, m + 1)))


def maximal_elementary(s: int, m: int) -> Covering:
    """The finest elementary covering: every block cut in half in every direction."""
    halves = [DyadicInterval(1, 0), DyadicInterval(1, 1)]
    bricks = [
        Brick(i, edges)
        for i in range(1, m + 1)
        for edges in itertools.product(halves, repeat=s)
    ]
    return Covering(s, m, bricks)


@dataclass(frozen=True)
class CoveringVerdict:
    ok: bool
    reason: Optional[str] = None
    detail: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def validate_covering(c: Covering) -> CoveringVerdict:
    """Check the covering invariants; reports the first violation found."""
    if c.s < 1 or c.m < 1:
        return CoveringVerdict(False, "space", f"bad space s={c.s} m={c.m}")
    for b in c.bricks:
        if len(b.edges) != c.s:
            return CoveringVerdict(False, "edge-count", f"brick {b} has {len(b.edges)} edges")
        if not 1 <= b.block <= c.m:
            return CoveringVerdict(False, "missing-block", f"brick block {b.block} outside 1..{c.m}")
        for e in b.edges:
            if e.exp < 0 or not 0 <= e.num < (1 << e.exp):
                return CoveringVerdict(False, "interval", f"bad interval {e}")
    blocks_seen = {b.block for b in c.bricks}
    for i in range(1, c.m + 1):
        if i not in blocks_seen:
            return CoveringVerdict(False, "missing-block", f"block {i} has no bricks")
    for i in range(1, c.m + 1):
        in_block = c.block(i)
        for a, b in itertools.combinations(in_block, 2):
            if a.intersect(b) is not None:
                return CoveringVerdict(False, "overlap", f"bricks overlap: {a} and {b}")
        total = sum(x.volume for x in in_block)
        if total != 1:
            return CoveringVerdict(
                False, "volume", f"block {i} volumes sum to {total}, deficit {1 - total}"
            )
    labels = [b.label for b in c.bricks if b.label is not None]
    if labels and sorted(labels) != list(range(1, len(c.bricks) + 1)):
        return CoveringVerdict(False, "label", f"labels {sorted(labels)} not a bijection with 1..n")
    return CoveringVerdict(True)


def _require_same_space(u: Covering, v: Covering) -> None:
    if u.space != v.space:
        raise SpaceMismatchError(f"coverings live in {u.space} vs {v.space}")


def refines(u: Covering, v: Covering) -> bool:
    """True iff every brick of u is contained in a brick of v (same block)."""
    _require_same_space(u, v)
    for b in u.bricks:
        if not any(big.contains(b) for big in v.bricks if big.block == b.block):
            return False
    return True


def join(u: Covering, v: Covering) -> Covering:
    """Coarsest common refinement: nonempty pairwise intersections."""
    _require_same_space(u, v)
    pieces = []
    for a in u.bricks:
        for b in v.bricks:
            c = a.geometry().intersect(b.geometry())
            if c is not None:
                pieces.append(c)
    return Covering(u.s, u.m, pieces)


def meet(u: Covering, v: Covering) -> Covering:
    """Finest common coarsening.

    Per block: group bricks of u and v by overlap, grow each group to its
    bounding brick, and re-merge groups whose bounding bricks overlap, to a
    fixpoint.  At the fixpoint the bounding bricks partition the block.
    """
    _require_same_space(u, v)
    out = []
    for i in range(1, u.m + 1):
        u_geo = {b.geometry() for b in u.block(i)}
        items = sorted(u_geo | {b.geometry() for b in v.block(i)}, key=lambda b: b.key())
        groups = [[b] for b in items]
        merged = True
        while merged:
            merged = False
            hulls = [bounding_brick(g) for g in groups]
            for a, b in itertools.combinations(range(len(groups)), 2):
                if hulls[a].intersect(hulls[b]) is not None:
                    groups[a] = groups[a] + groups[b]
                    del groups[b]
                    merged = True
                    break
        for g in groups:
            hull = bounding_brick(g)
            covered = sum(b.volume for b in g if b in u_geo)
            if covered != hull.volume:
                raise InvalidCoveringError("meet fixpoint failed to tile a hull")
            out.append(hull)
    return Covering(u.s, u.m, out)


def _ancestor_bricks(b: Brick) -> Iterable[Brick]:
    """All bricks containing b (products of per-dimension ancestors)."""
    choices = [[e.ancestor(x) for x in range(e.exp + 1)] for e in b.edges]
    for edges in itertools.product(*choices):
        yield Brick(b.block, tuple(edges))


def _block_partitions(bricks: tuple[Brick, ...]) -> Iterable[tuple[Brick, ...]]:
    """All partitions of a disjoint brick family into brick-shaped groups.

    Yields, for every way of grouping the input bricks such that each group
    tiles a brick exactly, the tuple of group hulls.  The group containing the
    canonically first brick is chosen first, so each partition appears once.
    """
    if not bricks:
        yield ()
        return
    first = bricks[0]
    for hull in _ancestor_bricks(first):
        members = tuple(b for b in bricks if hull.contains(b))
        if sum(b.volume for b in members) != hull.volume:
            continue
        rest = tuple(b for b in bricks if not hull.contains(b))
        for tail in _block_partitions(rest):
            yield (hull,) + tail


def enumerate_coarsenings(u: Covering, max_bricks: Optional[int] = None) -> list[Covering]:
    """All coverings W refined by u, including u itself and the trivial one."""
    bound = max_bricks if max_bricks is not None else active_guards().max_bricks
    check_guard(len(u.bricks), bound, "enumerate_coarsenings brick count")
    per_block = []
    for i in range(1, u.m + 1):
        block_bricks = tuple(b.geometry() for b in u.block(i))
        per_block.append(list(_block_partitions(block_bricks)))
    out = []
    for combo in itertools.product(*per_block):
        out.append(Covering(u.s, u.m, itertools.chain.from_iterable(combo)))
    return sorted(out, key=lambda c: tuple(b.key() for b in c.bricks))


@dataclass(frozen=True)
class CoveringClass:
    elementary: bool
    very_elementary: bool
    brick_volumes: tuple[Fraction, ...]


def classify(c: Covering) -> CoveringClass:
    """Elementary/very-elementary flags plus per-brick volumes.

    Elementary is decided by the edge-length criterion and cross-checked
    against refinement by the maximal elementary covering; the two
    characterizations always agree.
    """
    by_edges = all(b.is_elementary for b in c.bricks)
    by_refinement = refines(maximal_elementary(c.s, c.m), c)
    if by_edges != by_refinement:
        raise AssertionError("elementary characterizations disagree")
    very = all(b.is_very_elementary for b in c.bricks)
    return CoveringClass(by_edges, very, tuple(b.volume for b in c.bricks))


def enumerate_elementary(
    s: int, labeled: bool = False, n: Optional[int] = None
) -> list[Covering]:
    """All elementary coverings of a single block, optionally with n labeled bricks."""
    check_guard(s, active_guards().elementary_s, "enumerate_elementary dimension")
    shapes = enumerate_coarsenings(maximal_elementary(s, 1))
    if n is not None:
        shapes = [c for c in shapes if len(c.bricks) == n]
    if not labeled:
        return shapes
    out = []
    for shape in shapes:
        k = len(shape.bricks)
        for perm in itertools.permutations(range(1, k + 1)):
            out.append(
                Covering(s, 1, (b.with_label(p) for b, p in zip(shape.bricks, perm)))
            )
    return out


# --- JSON -------------------------------------------------------------------

def interval_to_dict(e: DyadicInterval) -> dict:
    return {"l": e.exp, "k": e.num}


def interval_from_dict(d: dict) -> DyadicInterval:
    return DyadicInterval(int(d["l"]), int(d["k"]))


def brick_to_dict(b: Brick) -> dict:
    out = {"block": b.block, "edges": [interval_to_dict(e) for e in b.edges]}
    if b.label is not None:
        out["label"] = b.label
    return out


def brick_from_dict(d: dict) -> Brick:
    return Brick(
        int(d["block"]),
        tuple(interval_from_dict(e) for e in d["edges"]),
        int(d["label"]) if "label" in d else None,
    )


def covering_to_dict(c: Covering) -> dict:
    return {"s": c.s, "m": c.m, "bricks": [brick_to_dict(b) for b in c.bricks]}


def covering_from_dict(d: dict) -> Covering:
    c = Covering(int(d["s"]), int(d["m"]), (brick_from_dict(b) for b in d["bricks"]))
    verdict = validate_covering(c)
    if not verdict:
        raise InvalidCoveringError(f"{verdict.reason}: {verdict.detail}")
    return c
