import math
import random

import pytest

from echidx.core import MonodromyAngle, OrbitClass, validate_angle
from echidx.errors import DegenerateRegion, HorizonExceeded
from echidx.partitions import (
    Partition,
    brute_force_extremal_path,
    ce1_sides,
    in_path,
    out_path,
    p_in,
    p_out,
    partitions_of,
    pick_stats,
    pick_stats_polygon,
    staircase,
)

E = OrbitClass.elliptic(3, 10, 9, id="e")
HP = OrbitClass.positive_hyperbolic(2, id="p")
HM = OrbitClass.negative_hyperbolic(1, id="n")


def test_p_out_examples():
    assert p_out(E, 3)[0].parts == (1, 1, 1)
    assert p_out(E, 4)[0].parts == (4,)
    assert p_out(HM, 5)[0].parts == (2, 2, 1)
    assert p_out(HM, 4)[0].parts == (2, 2)
    assert p_out(HP, 4)[0].parts == (1, 1, 1, 1)


def test_p_in_examples():
    assert p_in(E, 3)[0].parts == (3,)
    assert p_in(E, 4)[0].parts == (3, 1)
    assert p_in(HP, 7)[0].parts == (1,) * 7
    assert p_in(HM, 5)[0].parts == (2, 2, 1)


def test_paths_subdivided_and_sided():
    path = out_path(E.angle, 3)
    assert path.vertices == ((0, 0), (1, 0), (2, 0), (3, 0))
    path4 = out_path(E.angle, 4)
    assert path4.vertices == ((0, 0), (4, 1))
    ipath = in_path(E.angle, 4)
    assert ipath.vertices == ((0, 0), (3, 1), (4, 2))


def test_path_stays_on_admissible_side():
    rng = random.Random(3)
    for _ in range(50):
        q = rng.choice((11, 13, 31))
        p = rng.randrange(1, q)
        if math.gcd(p, q) != 1:
            continue
        ang = MonodromyAngle(p, q, 10)
        m = rng.randint(1, 10)
        for x, y in out_path(ang, m).vertices:
            assert y * q <= x * p
        for x, y in in_path(ang, m).vertices:
            assert y * q >= x * p


def test_horizon_guard():
    with pytest.raises(HorizonExceeded):
        p_out(E, 10)


def test_duality_small():
    for q in (11, 13):
        for p in range(1, q):
            if math.gcd(p, q) != 1:
                continue
            ang = MonodromyAngle(p, q, 10)
            for m in range(1, 11):
                assert p_in(
                    OrbitClass(kind="elliptic", id="x", angle=ang), m
                )[0] == p_out(
                    OrbitClass(kind="elliptic", id="x", angle=ang.negated()), m
                )[0]


def test_hull_matches_brute_force_small():
    for p, q in ((3, 10), (7, 10), (2, 7), (5, 7)):
        ang = validate_angle(p, q, 6)
        for m in range(1, 7):
            assert out_path(ang, m).vertices == brute_force_extremal_path(ang, m, "out").vertices
            assert in_path(ang, m).vertices == brute_force_extremal_path(ang, m, "in").vertices


def test_staircase_examples():
    th7 = MonodromyAngle(7, 10, 9)
    r = staircase((2, 1), th7)
    assert r.path_vertices == ((0, 0), (2, 1), (3, 1))
    assert r.polygon() == ((0, 0), (2, 1), (3, 1), (3, 0))
    assert not r.degenerate
    th3 = MonodromyAngle(3, 10, 9)
    r2 = staircase((1, 1, 1), th3)
    assert r2.degenerate
    r3 = staircase((3,), th7)
    assert r3.polygon() == ((0, 0), (3, 2), (3, 0))


def test_staircase_ordering():
    # ratio ordering puts floor(q*theta)/q descending
    th = MonodromyAngle(7, 10, 9)
    r = staircase((1, 2), th)
    assert r.parts == (2, 1)


def test_pick_stats_examples():
    th7 = MonodromyAngle(7, 10, 9)
    assert pick_stats(staircase((2, 1), th7)) == (4, 6, 6)
    assert pick_stats(staircase((3,), th7)) == (6, 7, 6)
    with pytest.raises(DegenerateRegion):
        pick_stats(staircase((1, 1), MonodromyAngle(3, 10, 9)))


def test_pick_stats_polygon_unit_square():
    assert pick_stats_polygon([(0, 0), (1, 0), (1, 1), (0, 1)]) == (2, 4, 4)


def test_pick_stats_polygon_matches_staircase():
    # column counting against bounding-box enumeration, across a small
    # exhaustive family
    for p, q in ((3, 11), (7, 11), (5, 13), (7, 10)):
        ang = validate_angle(p, q, 7)
        for m in range(1, 8):
            for qs in partitions_of(m):
                region = staircase(qs, ang)
                if region.degenerate:
                    continue
                assert pick_stats(region) == pick_stats_polygon(region.polygon())


def test_ce1_examples():
    th3 = MonodromyAngle(3, 10, 9)
    assert ce1_sides((1, 1, 1), th3) == (0, 0, True)
    assert ce1_sides((3,), th3) == (0, 2, False)
    assert ce1_sides((4,), th3) == (4, 4, True)


def test_ce1_equality_iff_outgoing_partition():
    for p, q in ((3, 10), (7, 10), (4, 7)):
        ang = validate_angle(p, q, 6)
        for m in range(1, 7):
            expected = p_out(OrbitClass(kind="elliptic", id="x", angle=ang), m)[0].parts
            for qs in partitions_of(m):
                sides = ce1_sides(qs, ang)
                assert sides.lhs <= sides.rhs
                assert sides.equality == (qs == expected)


def test_ce1_normalization_invariance():
    # both sides shift equally under theta -> theta + 1
    a = validate_angle(3, 10, 9)
    b = validate_angle(13, 10, 9)
    for qs in ((2, 1), (3,), (1, 1, 1)):
        sa = ce1_sides(qs, a)
        sb = ce1_sides(qs, b)
        assert sa.equality == sb.equality
        assert sa.rhs - sa.lhs == sb.rhs - sb.lhs


def test_partitions_depend_only_on_class_mod_one():
    for m in range(1, 10):
        a = OrbitClass.elliptic(3, 10, 9, id="x")
        b = OrbitClass.elliptic(-7, 10, 9, id="x")
        c = OrbitClass.elliptic(13, 10, 9, id="x")
        assert p_out(a, m)[0] == p_out(b, m)[0] == p_out(c, m)[0]
        assert p_in(a, m)[0] == p_in(b, m)[0] == p_in(c, m)[0]


def test_partition_canonical_form():
    p = Partition((1, 3, 2))
    assert p.parts == (3, 2, 1)
    assert p.total == 6
    with pytest.raises(ValueError):
        Partition((0, 1))


def test_partitions_of_count():
    assert sum(1 for _ in partitions_of(10)) == 42
    assert list(partitions_of(0)) == [()]
