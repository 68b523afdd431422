from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facelab.geom import (
    CCW,
    COLLINEAR,
    CW,
    EMPTY,
    Overlap,
    Point,
    Segment,
    Single,
    intersect,
    orientation,
    point,
    point_on_segment,
    rat,
    segment,
)


def test_orientation_examples():
    assert orientation(point(0, 0), point(1, 0), point(0, 1)) == CCW
    assert orientation(point(0, 0), point(1, 1), point(2, 2)) == COLLINEAR
    assert orientation(point(0, 0), point(0, 1), point(1, 0)) == CW


def test_intersect_examples():
    x = intersect(segment("a", 0, 0, 2, 2), segment("b", 0, 2, 2, 0))
    assert x == Single(point(1, 1))
    assert intersect(segment("a", 0, 0, 1, 0), segment("b", 2, 0, 3, 0)) == EMPTY
    ov = intersect(segment("a", 0, 0, 2, 0), segment("b", 1, 0, 3, 0))
    assert ov == Overlap(point(1, 0), point(2, 0))


def test_point_on_segment_examples():
    s = segment("a", 0, 0, 2, 2)
    assert point_on_segment(point(1, 1), s)
    assert not point_on_segment(point(3, 3), s)
    assert point_on_segment(point(0, 0), s)


def test_touch_and_shared_endpoint():
    # endpoint of b interior to a
    t = intersect(segment("a", 0, 0, 4, 0), segment("b", 2, 0, 2, 3))
    assert t == Single(point(2, 0))
    # shared endpoint
    t = intersect(segment("a", 0, 0, 1, 1), segment("b", 1, 1, 2, 0))
    assert t == Single(point(1, 1))
    # collinear touching at one point
    t = intersect(segment("a", 0, 0, 1, 0), segment("b", 1, 0, 2, 0))
    assert t == Single(point(1, 0))


def test_identical_segments_overlap_fully():
    out = intersect(segment("a", 0, 0, 2, 2), segment("b", 0, 0, 2, 2))
    assert out == Overlap(point(0, 0), point(2, 2))


def test_rat_parsing():
    assert rat("3/4") == Fraction(3, 4)
    assert rat(5) == Fraction(5)
    assert rat("-7") == Fraction(-7)
    with pytest.raises(TypeError):
        rat(1.5)


def test_zero_length_segment_rejected():
    with pytest.raises(ValueError):
        segment("z", 1, 1, 1, 1)


rationals = st.fractions(
    min_value=-(10**18), max_value=10**18, max_denominator=10**12
)
points = st.builds(Point, rationals, rationals)


@given(points, points, points)
@settings(max_examples=200)
def test_orientation_antisymmetry(p, q, r):
    assert orientation(p, q, r) == -orientation(p, r, q)


@given(points, points, points)
@settings(max_examples=200)
def test_orientation_matches_integer_determinant(p, q, r):
    # independent exact route: clear denominators and use integer arithmetic
    d = (
        p.x.denominator * p.y.denominator
        * q.x.denominator * q.y.denominator
        * r.x.denominator * r.y.denominator
    )
    px, py = int(p.x * d), int(p.y * d)
    qx, qy = int(q.x * d), int(q.y * d)
    rx, ry = int(r.x * d), int(r.y * d)
    det = (qx - px) * (ry - py) - (qy - py) * (rx - px)
    expected = (det > 0) - (det < 0)
    assert orientation(p, q, r) == expected


segs = st.builds(
    lambda a, b: Segment("s", a, b) if a != b else None, points, points
).filter(lambda s: s is not None)


@given(segs, segs)
@settings(max_examples=150, deadline=None)
def test_intersect_symmetric(a, b):
    ia = intersect(a, b)
    ib = intersect(b, a)
    if isinstance(ia, Overlap):
        assert isinstance(ib, Overlap)
        assert {ia.start, ia.end} == {ib.start, ib.end}
    else:
        assert ia == ib


@given(segs, segs)
@settings(max_examples=150, deadline=None)
def test_single_intersection_lies_on_both(a, b):
    out = intersect(a, b)
    if isinstance(out, Single):
        assert point_on_segment(out.point, a)
        assert point_on_segment(out.point, b)
    elif isinstance(out, Overlap):
        for p in (out.start, out.end):
            assert point_on_segment(p, a)
            assert point_on_segment(p, b)
