import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hslink import braid as br
from hslink import geometry as geo
from hslink import operad as op
from hslink import stringlink as sl
from hslink.errors import IllFormedInputError, IntervalError, RankMismatchError

from helpers import random_pure

seeds = st.integers(0, 10**6)


def random_intervals(rng, k, dyadic=False):
    """k intervals with disjoint interiors, randomly ordered, some touching."""
    if dyadic:
        cuts = sorted(rng.sample(range(1, 64), 2 * k - 1))
        pts = [0.0] + [c / 64 for c in cuts] + [1.0]
    else:
        pts = sorted([0.0, 1.0] + [rng.random() for _ in range(2 * k - 2)])
    ivs = []
    for j in range(k):
        lo, hi = pts[2 * j], pts[2 * j + 1]
        if rng.random() < 0.3 and j + 1 < k:
            hi = pts[2 * j + 2]  # touch the next interval
        if hi > lo:
            ivs.append((lo, hi))
    if len(ivs) < k:
        ivs = [(j / k, (j + 1) / k) for j in range(k)]
    rng.shuffle(ivs)
    return op.Intervals(tuple(ivs))


def test_interval_validation():
    with pytest.raises(IntervalError):
        op.Intervals(((0.5, 0.5),))
    with pytest.raises(IntervalError):
        op.Intervals(((0.0, 0.6), (0.5, 1.0)))
    with pytest.raises(IntervalError):
        op.Intervals(((-0.1, 0.5),))
    op.Intervals(((0.0, 0.5), (0.5, 1.0)))


def test_interval_text():
    ivs = op.parse_intervals("k=2: [0,1/2] [0.5, 1]")
    assert ivs == op.STACKING
    assert op.parse_intervals(op.format_intervals(ivs)) == ivs
    for bad in ("[0,1]", "k=2: [0,1]", "k=1: [0,1] junk", "k=1: [a,1]"):
        with pytest.raises(IntervalError):
            op.parse_intervals(bad)


def test_compose_intervals_examples():
    inner = op.Intervals(((0.1, 0.2), (0.5, 0.9)))
    assert op.compose_intervals(op.UNIT, [inner]) == inner
    assert op.compose_intervals(op.STACKING, [op.UNIT, op.UNIT]) == op.STACKING
    quarters = op.compose_intervals(op.STACKING, [op.STACKING, op.STACKING])
    assert quarters.intervals == ((0.0, 0.25), (0.25, 0.5), (0.5, 0.75), (0.75, 1.0))
    with pytest.raises(IntervalError):
        op.compose_intervals(op.STACKING, [op.UNIT])


def test_identity_action_on_links_and_maps():
    g = geo.realize(br.parse("n=3: A1,3 A2,3^-1"))
    h = op.act_on_links(op.UNIT, [g])
    assert np.array_equal(h.ts, g.ts) and np.array_equal(h.disk, g.disk)
    f = geo.KappaMap(g)
    T = np.random.default_rng(1).random((200, 3))
    assert np.array_equal(op.act_on_maps(op.UNIT, [f])(T), f(T))


def test_stacking_recovers_braid_product():
    a, b = br.parse("n=3: A1,3"), br.parse("n=3: A2,3^-1 A1,2")
    h = op.act_on_links(op.STACKING, [geo.realize(a), geo.realize(b)])
    assert geo.read_braid(h) == br.compose(a, b)


def test_action_mismatch_errors():
    g2, g3 = geo.realize(sl.identity(2)), geo.realize(sl.identity(3))
    with pytest.raises(RankMismatchError):
        op.act_on_links(op.STACKING, [g2, g3])
    with pytest.raises(IntervalError):
        op.act_on_links(op.STACKING, [g2])
    shifted = geo.realize(sl.identity(2), basepoints=np.array([[-0.5, 0.0], [0.6, 0.0]]))
    with pytest.raises(IntervalError):
        op.act_on_links(op.STACKING, [g2, shifted])


def test_ill_formed_input_detected():
    g = geo.realize(br.a_ij(2, 1, 2))
    f = geo.kappa_sample(g, 4)
    values = f.values.copy()
    values[4, :, 0, :2] += 0.2  # strand 1 leaves its basepoint on the top face
    bad = geo.GridMap(f.basepoints, values)
    acted = op.act_on_maps(op.STACKING, [bad, geo.KappaMap(g)])
    with pytest.raises(IllFormedInputError):
        acted([0.5, 0.25])


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(2, 4))
def test_stacking_maps_equal_product(seed, n):
    rng = random.Random(seed)
    f, g = (geo.KappaMap(geo.realize(random_pure(rng, n, 6))) for _ in range(2))
    acted = op.sample_map(op.act_on_maps(op.STACKING, [f, g]), 4)
    prod = op.sample_map(op.map_product(f, g), 4)
    assert np.array_equal(acted.values, prod.values)
    assert geo.verify_conditions(acted).ok


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(2, 4), st.integers(1, 4))
def test_symmetry(seed, n, k):
    rng = random.Random(seed)
    ivs = random_intervals(rng, k)
    links = [geo.realize(random_pure(rng, n, 6)) for _ in range(k)]
    perm = list(range(k))
    rng.shuffle(perm)
    a = op.act_on_links(ivs, links)
    b = op.act_on_links(ivs.permuted(perm), [links[p] for p in perm])
    assert np.array_equal(a.ts, b.ts) and np.array_equal(a.disk, b.disk)
    maps = [geo.KappaMap(g) for g in links]
    T = np.random.default_rng(seed).random((100, n))
    assert np.array_equal(
        op.act_on_maps(ivs, maps)(T), op.act_on_maps(ivs.permuted(perm), [maps[p] for p in perm])(T)
    )


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(2, 3), st.booleans())
def test_associativity(seed, n, dyadic):
    rng = random.Random(seed)
    outer = random_intervals(rng, 2, dyadic)
    inners = [random_intervals(rng, rng.randint(1, 2), dyadic) for _ in range(2)]
    counts = [iv.k for iv in inners]
    links = [geo.realize(random_pure(rng, n, 4)) for _ in range(sum(counts))]
    groups = [links[: counts[0]], links[counts[0]:]]
    lhs = op.act_on_links(op.compose_intervals(outer, inners), links)
    rhs = op.act_on_links(outer, [op.act_on_links(iv, grp) for iv, grp in zip(inners, groups)])
    if dyadic:
        # nesting leaves extra vertices on stationary vertical stretches; the polylines agree exactly
        ls, rs = lhs.simplified(), rhs.simplified()
        assert np.array_equal(ls.ts, rs.ts) and np.array_equal(ls.disk, rs.disk)
        ts = np.union1d(lhs.ts, rhs.ts)
        for i in range(1, n + 1):
            assert np.array_equal(lhs.evaluate(i, ts), rhs.evaluate(i, ts))
    maps = [geo.KappaMap(g) for g in links]
    mgroups = [maps[: counts[0]], maps[counts[0]:]]
    lf = op.act_on_maps(op.compose_intervals(outer, inners), maps)
    rf = op.act_on_maps(outer, [op.act_on_maps(iv, grp) for iv, grp in zip(inners, mgroups)])
    T = np.random.default_rng(seed).random((200, n))
    assert np.max(np.abs(lf(T) - rf(T))) <= 1e-12


def test_reflected_map_is_evaluable():
    f = geo.KappaMap(geo.realize(br.a_ij(2, 1, 2)))
    r = op.ReflectedMap(f)
    assert r([0.0, 0.0]).shape == (2, 3)
    # the bottom corner comes from the top of f, reflected back to height 0
    assert np.array_equal(r([0.0, 0.0])[:, :2], f.basepoints)
    assert np.all(r([0.0, 0.0])[:, 2] == 0.0)
