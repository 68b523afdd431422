"""Finding subdivision points of a segment set.

Two interchangeable routines compute, for every input segment, the set of
points interior to it where the planar subdivision has a vertex:

* ``split_points_sweep`` -- a left-to-right plane sweep with an event queue
  and exact rational comparisons.  The status structure is a plain sorted
  list, which is ample at the instance sizes this package targets.
* ``split_points_quadratic`` -- the all-pairs fallback, kept as the trusted
  oracle the sweep is tested against.

Both handle every degeneracy exactly: shared endpoints, endpoint-interior
touches, many segments concurrent through one point, vertical segments,
and collinear overlaps (overlap junction points become vertices).
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable

from .geom import (
    EMPTY,
    Overlap,
    Point,
    Segment,
    Single,
    intersect,
    point_on_segment,
)

SplitMap = dict  # segment id -> set of interior Points


def _lex(p: Point) -> tuple:
    return (p.x, p.y)


def _endpoints_lex(s: Segment) -> tuple[Point, Point]:
    if _lex(s.source) <= _lex(s.target):
        return s.source, s.target
    return s.target, s.source


def _is_interior(p: Point, s: Segment) -> bool:
    return p != s.source and p != s.target and point_on_segment(p, s)


def split_points_quadratic(segments: list[Segment]) -> SplitMap:
    """All-pairs interior subdivision points; the reference oracle."""
    splits: SplitMap = {s.id: set() for s in segments}
    for i in range(len(segments)):
        a = segments[i]
        for j in range(i + 1, len(segments)):
            b = segments[j]
            hit = intersect(a, b)
            if hit == EMPTY:
                continue
            if isinstance(hit, Single):
                candidates = (hit.point,)
            else:
                assert isinstance(hit, Overlap)
                candidates = (hit.start, hit.end)
            for pt in candidates:
                if _is_interior(pt, a):
                    splits[a.id].add(pt)
                if _is_interior(pt, b):
                    splits[b.id].add(pt)
    return splits


class _Status:
    """Sweep status: segments ordered by y at the sweep abscissa.

    Vertical segments compare above everything else at their x.  Linear-time
    list operations keep the exact comparisons simple and are fast enough at
    desk scale.
    """

    def __init__(self) -> None:
        self.items: list[Segment] = []

    def _key(self, s: Segment, x: Fraction):
        if s.is_vertical():
            return (1, Fraction(0))
        return (0, s.y_at(x))

    def insert_block(self, block: list[Segment], p: Point) -> int:
        """Insert segments passing through p, ordered by slope above p."""

        def slope_key(s: Segment):
            dx = abs(s.target.x - s.source.x)
            dy = s.target.y - s.source.y
            if _lex(s.source) > _lex(s.target):
                dy = -dy
            if dx == 0:
                return (1, Fraction(0))
            return (0, dy / dx)

        block = sorted(block, key=lambda s: (slope_key(s), str(s.id)))
        pos = 0
        while pos < len(self.items):
            kind, y = self._key(self.items[pos], p.x)
            if kind == 1 or y > p.y:
                break
            pos += 1
        self.items[pos:pos] = block
        return pos

    def remove_all(self, segs: Iterable[Segment]) -> None:
        drop = {id(s) for s in segs}
        self.items = [s for s in self.items if id(s) not in drop]


def split_points_sweep(segments: list[Segment]) -> SplitMap:
    """Plane-sweep subdivision points, agreeing with the quadratic oracle."""
    splits: SplitMap = {s.id: set() for s in segments}
    if not segments:
        return splits

    starts: dict[tuple, list[Segment]] = {}
    queue: list[tuple] = []
    queued: set[tuple] = set()

    def schedule(key: tuple) -> None:
        if key not in queued:
            queued.add(key)
            heapq.heappush(queue, key)

    point_at: dict[tuple, Point] = {}
    for s in segments:
        lo, hi = _endpoints_lex(s)
        starts.setdefault(_lex(lo), []).append(s)
        for p in (lo, hi):
            point_at[_lex(p)] = p
            schedule(_lex(p))

    status = _Status()

    def check_pair(a: Segment, b: Segment, current: tuple) -> None:
        hit = intersect(a, b)
        if isinstance(hit, Single):
            k = _lex(hit.point)
            if k >= current:
                point_at.setdefault(k, hit.point)
                schedule(k)
        # Overlaps need no events: their junction points are endpoints of
        # one of the two segments and are already queued.

    while queue:
        key = heapq.heappop(queue)
        p = point_at[key]
        upper = starts.get(key, [])
        lower = [s for s in status.items if _lex(_endpoints_lex(s)[1]) == key]
        through = [
            s
            for s in status.items
            if _lex(_endpoints_lex(s)[1]) != key and _is_interior(p, s)
        ]
        if len(upper) + len(lower) + len(through) >= 2:
            for s in through:
                splits[s.id].add(p)
        # Endpoints resting on interiors of starting segments are found via
        # the `through` scan once those segments are in the status; segments
        # starting at this very event that pass through a later event point
        # get caught when that point pops.

        status.remove_all(lower + through)
        reinsert = through + upper
        if reinsert:
            pos = status.insert_block(reinsert, p)
            block_len = len(reinsert)
            if pos > 0:
                check_pair(status.items[pos - 1], status.items[pos], key)
            if pos + block_len < len(status.items):
                check_pair(
                    status.items[pos + block_len - 1],
                    status.items[pos + block_len],
                    key,
                )
            for s in reinsert:
                if s.is_vertical():
                    # A vertical lives in the status only at its own x; probe
                    # everything once so no crossing with it is missed.
                    for other in status.items:
                        if other is not s:
                            check_pair(s, other, key)
        else:
            # A closing event: the two segments that became adjacent may
            # cross later.
            pos = 0
            while pos < len(status.items):
                kind, y = status._key(status.items[pos], p.x)
                if kind == 1 or y > p.y:
                    break
                pos += 1
            if 0 < pos < len(status.items):
                check_pair(status.items[pos - 1], status.items[pos], key)

    return splits


def subdivide(segments: list[Segment], splits: SplitMap) -> dict:
    """Cut each segment at its split points.

    Returns segment id -> ordered list of Points from source to target
    (endpoints included), ready for edge assembly.
    """
    chains = {}
    for s in segments:
        pts = list(splits.get(s.id, ()))
        dx, dy = s.direction

        def along(p: Point) -> Fraction:
            if dx != 0:
                return (p.x - s.source.x) / dx
            return (p.y - s.source.y) / dy

        pts.sort(key=along)
        chains[s.id] = [s.source] + pts + [s.target]
    return chains
