import random
from fractions import Fraction

from facelab.geom import Point, Segment, point
from facelab.sweep import split_points_quadratic, split_points_sweep

from conftest import lattice_segment


def test_sweep_matches_quadratic_on_random_lattice():
    rng = random.Random(42)
    for trial in range(80):
        n = rng.randrange(2, 14)
        segs = [lattice_segment(rng, 12, 12, i) for i in range(n)]
        assert split_points_sweep(segs) == split_points_quadratic(segs), trial


def test_sweep_matches_quadratic_on_degenerate_families():
    rng = random.Random(99)
    for trial in range(150):
        n = rng.randrange(2, 9)
        segs = []
        for i in range(n):
            if segs and rng.random() < 0.35:
                base = rng.choice(segs)
                dx, dy = base.direction
                k1 = Fraction(rng.randrange(-2, 3), rng.choice([1, 2]))
                k2 = k1 + Fraction(rng.randrange(1, 4), rng.choice([1, 2]))
                a = Point(base.source.x + k1 * dx, base.source.y + k1 * dy)
                b = Point(base.source.x + k2 * dx, base.source.y + k2 * dy)
                if a != b:
                    segs.append(Segment(i, a, b))
                    continue
            segs.append(lattice_segment(rng, 5, 5, i))
        assert split_points_sweep(segs) == split_points_quadratic(segs), trial


def test_sweep_verticals_and_concurrency():
    segs = [
        Segment("v1", point(2, -3), point(2, 5)),
        Segment("v2", point(2, 1), point(2, 9)),  # collinear overlap with v1
        Segment("h", point(-1, 2), point(6, 2)),  # crosses both at (2, 2)
        Segment("d1", point(0, 0), point(4, 4)),  # through (2, 2) too
        Segment("d2", point(0, 4), point(4, 0)),  # and again
    ]
    assert split_points_sweep(segs) == split_points_quadratic(segs)
    sp = split_points_sweep(segs)
    assert point(2, 2) in sp["h"]
    assert point(2, 2) in sp["v1"]


def test_endpoint_touch_splits_only_host():
    segs = [
        Segment("a", point(0, 0), point(4, 0)),
        Segment("b", point(2, 0), point(2, 3)),
    ]
    sp = split_points_sweep(segs)
    assert sp["a"] == {point(2, 0)}
    assert sp["b"] == set()
