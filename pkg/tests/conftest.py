import random
from fractions import Fraction

import pytest

from facelab.geom import Point, Segment, point, point_on_segment
from facelab.overlay import MarkedInstance, marked_instance


def lattice_segment(rng: random.Random, box: int, reach: int, sid) -> Segment:
    while True:
        x1, y1 = rng.randrange(0, box + 1), rng.randrange(0, box + 1)
        x2 = x1 + rng.randrange(-reach, reach + 1)
        y2 = y1 + rng.randrange(-reach, reach + 1)
        if (x1, y1) != (x2, y2):
            return Segment(sid, point(x1, y1), point(x2, y2))


def tangency_free(segs) -> bool:
    """No endpoint of any segment lies on any other segment."""
    for s in segs:
        for s2 in segs:
            if s is s2:
                continue
            if point_on_segment(s.source, s2) or point_on_segment(s.target, s2):
                return False
    return True


def random_general_position_segments(rng, n, box=20, reach=9, prefix="s"):
    while True:
        segs = [lattice_segment(rng, box, reach, f"{prefix}{i}") for i in range(n)]
        if tangency_free(segs):
            return segs


def off_segment_point(rng, segs, box=20) -> Point:
    while True:
        p = Point(
            Fraction(rng.randrange(-3 * box, 6 * box), 7),
            Fraction(rng.randrange(-3 * box, 6 * box), 11),
        )
        if not any(point_on_segment(p, s) for s in segs):
            return p


def random_marked_instance(rng, t, per_collection, k=1, box=20, reach=9) -> MarkedInstance:
    while True:
        segs = random_general_position_segments(
            rng, t * per_collection, box=box, reach=reach
        )
        cols = [
            segs[c * per_collection : (c + 1) * per_collection] for c in range(t)
        ]
        cols = [
            [Segment(f"c{c}.{i}", s.source, s.target) for i, s in enumerate(col)]
            for c, col in enumerate(cols)
        ]
        flat = [s for col in cols for s in col]
        pts = [off_segment_point(rng, flat, box) for _ in range(k)]
        return marked_instance(cols, pts)


@pytest.fixture
def rng():
    return random.Random(0xFACE1AB)
