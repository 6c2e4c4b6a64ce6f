import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinforge.dyadic import (
    Brick,
    Covering,
    DyadicInterval,
    bounding_brick,
    brick,
    classify,
    dyadic,
    enumerate_coarsenings,
    enumerate_elementary,
    interval_hull,
    join,
    maximal_elementary,
    meet,
    refines,
    trivial_covering,
    validate_covering,
    covering_from_dict,
    covering_to_dict,
)
from steinforge.errors import GuardExceededError, SpaceMismatchError
from steinforge.randgen import random_covering


# Seven bricks of the left-panel regression covering, normalized.
FIG2_LEFT = Covering(2, 1, [
    brick(1, (1, 0), (2, 2)),   # [0,1/2) x [1/2,3/4)
    brick(1, (1, 0), (2, 3)),   # [0,1/2) x [3/4,1)
    brick(1, (1, 1), (1, 1)),   # [1/2,1) x [1/2,1)
    brick(1, (1, 0), (1, 0)),   # [0,1/2) x [0,1/2)
    brick(1, (1, 1), (2, 1)),   # [1/2,1) x [1/4,1/2)
    brick(1, (2, 2), (2, 0)),   # [1/2,3/4) x [0,1/4)
    brick(1, (2, 3), (2, 0)),   # [3/4,1) x [0,1/4)
])

FIG2_RIGHT = Covering(2, 1, [
    brick(1, (0, 0), (1, 1)),   # [0,1) x [1/2,1)
    brick(1, (0, 0), (2, 1)),   # [0,1) x [1/4,1/2)
    brick(1, (2, 0), (2, 0)),   # [0,1/4) x [0,1/4)
    brick(1, (2, 1), (2, 0)),   # [1/4,1/2) x [0,1/4)
    brick(1, (1, 1), (2, 0)),   # [1/2,1) x [0,1/4)
])


def quarters():
    return maximal_elementary(2, 1)


def vertical_halves():
    return Covering(2, 1, [brick(1, (1, 0), (0, 0)), brick(1, (1, 1), (0, 0))])


def horizontal_halves():
    return Covering(2, 1, [brick(1, (0, 0), (1, 0)), brick(1, (0, 0), (1, 1))])


def test_dyadic_canonical_form():
    assert dyadic(4, 3) == (1, 1)
    assert dyadic(0, 5) == (0, 0)
    assert dyadic(3, 2).value == Fraction(3, 4)
    with pytest.raises(ValueError):
        dyadic(5, 2)


def test_interval_basics():
    half = DyadicInterval(1, 0)
    assert half.contains_point(Fraction(1, 3))
    assert not half.contains_point(Fraction(1, 2))
    assert half.contains(DyadicInterval(2, 1))
    assert half.intersect(DyadicInterval(1, 1)) is None
    assert interval_hull([DyadicInterval(2, 1), DyadicInterval(2, 2)]) == DyadicInterval(0, 0)


def test_bounding_brick():
    b = brick(1, (2, 0), (0, 0))
    assert bounding_brick([b]) == b.geometry()
    assert bounding_brick([brick(1, (2, 0), (0, 0)), brick(1, (2, 1), (0, 0))]) == brick(1, (1, 0), (0, 0))
    # no common prefix: hull is the whole interval
    assert bounding_brick([brick(1, (2, 1), (0, 0)), brick(1, (2, 2), (0, 0))]) == brick(1, (0, 0), (0, 0))
    with pytest.raises(ValueError):
        bounding_brick([])


def test_validate_trivial_and_fig2():
    assert validate_covering(trivial_covering(2, 1))
    assert validate_covering(FIG2_LEFT)
    assert validate_covering(FIG2_RIGHT)


def test_validate_volume_deficit():
    short = Covering(2, 1, [b for b in FIG2_LEFT.bricks if b != brick(1, (1, 0), (2, 3))])
    verdict = validate_covering(short)
    assert not verdict
    assert verdict.reason == "volume"
    assert "1/8" in verdict.detail


def test_validate_overlap_and_missing_block():
    v = validate_covering(Covering(2, 1, [brick(1, (0, 0), (0, 0)), brick(1, (1, 0), (0, 0))]))
    assert v.reason == "overlap"
    v = validate_covering(Covering(2, 2, [brick(1, (0, 0), (0, 0))]))
    assert v.reason == "missing-block"


def test_refines_examples():
    t1 = trivial_covering(2, 1)
    assert refines(maximal_elementary(2, 1), t1)
    assert refines(FIG2_LEFT, FIG2_LEFT)
    assert not refines(vertical_halves(), horizontal_halves())
    with pytest.raises(SpaceMismatchError):
        refines(t1, trivial_covering(2, 2))


def test_join_examples():
    four = join(vertical_halves(), horizontal_halves())
    assert four == quarters()
    assert join(FIG2_LEFT, FIG2_LEFT) == FIG2_LEFT
    # FIG2_LEFT refines the quarters brick-by-brick, so the join is itself:
    # quarters with the top-left and bottom-right quarters split as in the panel.
    j = join(FIG2_LEFT, maximal_elementary(2, 1))
    assert j == FIG2_LEFT
    assert len(j.bricks) == 7


def test_meet_examples():
    t1 = trivial_covering(2, 1)
    assert meet(FIG2_LEFT, t1) == t1
    assert meet(maximal_elementary(2, 1), FIG2_LEFT) == quarters()
    assert meet(FIG2_LEFT, maximal_elementary(2, 1)) == quarters()
    assert meet(maximal_elementary(2, 1), FIG2_RIGHT) == horizontal_halves()


def test_enumerate_coarsenings_counts():
    assert len(enumerate_coarsenings(maximal_elementary(2, 1))) == 8
    assert len(enumerate_coarsenings(maximal_elementary(1, 1))) == 2
    t3 = trivial_covering(2, 3)
    assert enumerate_coarsenings(t3) == [t3]
    with pytest.raises(GuardExceededError):
        enumerate_coarsenings(maximal_elementary(2, 4))


def brute_force_coarsenings(u):
    """Oracle: filter all set partitions of the bricks (per block)."""
    def partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for sub in partitions(rest):
            for i in range(len(sub)):
                yield sub[:i] + [[first] + sub[i]] + sub[i + 1:]
            yield [[first]] + sub
    per_block = []
    for i in range(1, u.m + 1):
        blocks = []
        for part in partitions(list(u.block(i))):
            hulls = [bounding_brick(g) for g in part]
            if all(sum(b.volume for b in g) == h.volume for g, h in zip(part, hulls)):
                blocks.append(tuple(sorted(hulls, key=lambda b: b.key())))
        per_block.append(set(blocks))
    out = set()
    for combo in itertools.product(*per_block):
        out.add(Covering(u.s, u.m, itertools.chain.from_iterable(combo)))
    return out


def test_coarsenings_match_brute_force():
    for cov in [maximal_elementary(2, 1), FIG2_RIGHT, maximal_elementary(1, 2), FIG2_LEFT]:
        fast = set(enumerate_coarsenings(cov))
        assert fast == brute_force_coarsenings(cov)


def test_classify_examples():
    c = classify(quarters())
    assert c.elementary and not c.very_elementary
    c = classify(vertical_halves())
    assert c.elementary and c.very_elementary
    c = classify(FIG2_LEFT)
    assert not c.elementary and not c.very_elementary
    assert classify(trivial_covering(3, 2)).very_elementary


def test_maximal_elementary_counts():
    assert [b.edges for b in maximal_elementary(1, 1).bricks] == [
        (DyadicInterval(1, 0),), (DyadicInterval(1, 1),)]
    e = maximal_elementary(2, 1)
    assert len(e.bricks) == 4
    assert all(b.volume == Fraction(1, 4) for b in e.bricks)
    assert len(maximal_elementary(3, 2).bricks) == 16


def test_enumerate_elementary_counts():
    assert len(enumerate_elementary(2)) == 8
    by_count = {n: len(enumerate_elementary(2, n=n)) for n in range(1, 5)}
    assert by_count == {1: 1, 2: 2, 3: 4, 4: 1}
    assert len(enumerate_elementary(2, labeled=True, n=2)) == 4
    assert len(enumerate_elementary(1, labeled=True, n=2)) == 2
    with pytest.raises(GuardExceededError):
        enumerate_elementary(4)


def test_covering_json_roundtrip():
    d = covering_to_dict(FIG2_LEFT)
    assert covering_from_dict(d) == FIG2_LEFT
    labeled = FIG2_LEFT.with_canonical_labels()
    assert covering_from_dict(covering_to_dict(labeled)) == labeled


# --- randomized lattice laws --------------------------------------------------

@st.composite
def covering_pairs(draw):
    s = draw(st.integers(1, 3))
    m = draw(st.integers(1, 2))
    seed_u = draw(st.integers(0, 2**30))
    seed_v = draw(st.integers(0, 2**30))
    u = random_covering(seed_u, s, m, max_bricks=8)
    v = random_covering(seed_v, s, m, max_bricks=8)
    return u, v


@settings(max_examples=60, deadline=None)
@given(covering_pairs())
def test_lattice_laws(pair):
    u, v = pair
    j = join(u, v)
    w = meet(u, v)
    assert validate_covering(j)
    assert validate_covering(w)
    assert refines(j, u) and refines(j, v)
    assert refines(u, w) and refines(v, w)
    # absorption
    assert meet(u, join(u, v)) == u.geometry()
    assert join(u, meet(u, v)) == u.geometry()
    # trivial covering is the unique minimum
    assert refines(u, trivial_covering(u.s, u.m))


@settings(max_examples=40, deadline=None)
@given(covering_pairs())
def test_meet_matches_exhaustive_oracle(pair):
    u, v = pair
    w = meet(u, v)
    candidates = [c for c in enumerate_coarsenings(u) if refines(v, c)]
    finest = [c for c in candidates if all(refines(c, other) for other in candidates)]
    assert len(finest) == 1
    assert w == finest[0]


@settings(max_examples=30, deadline=None)
@given(covering_pairs())
def test_refines_partial_order(pair):
    u, v = pair
    if refines(u, v) and refines(v, u):
        assert u.geometry() == v.geometry()
    w = meet(u, v)
    # transitivity instance: join(u,v) refines u refines meet(u,v)
    assert refines(join(u, v), w)
