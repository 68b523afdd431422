"""Exact rational primitives: points, oriented segments, predicates.

Every coordinate is a `fractions.Fraction`, so all predicates are decided
exactly; there is no epsilon anywhere in this package.  Degenerate inputs
(collinear overlaps, endpoint touches, shared endpoints) are classified
deterministically rather than rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Union

# Rational scalar type.  Fraction already guarantees the invariants needed
# here: always reduced, positive denominator, value equality and hashing.
Rat = Fraction

RatLike = Union[Fraction, int, str]

CCW = 1
COLLINEAR = 0
CW = -1


def rat(value: RatLike) -> Rat:
    """Coerce an int, Fraction, or 'p/q' string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rat(value: Rat) -> str:
    """Render a rational as 'p/q', or 'p' when the denominator is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Point:
    """Immutable exact point; usable as a dict key / set element."""

    x: Rat
    y: Rat

    def __repr__(self) -> str:
        return f"P({format_rat(self.x)}, {format_rat(self.y)})"


def point(x: RatLike, y: RatLike) -> Point:
    return Point(rat(x), rat(y))


SegId = Hashable


@dataclass(frozen=True)
class Segment:
    """Oriented closed segment with a symbol identity.

    The orientation source -> target is the "forward" direction of the
    symbol; the reverse traversal is the "backward" direction.
    """

    id: SegId
    source: Point
    target: Point

    def __post_init__(self) -> None:
        if self.source == self.target:
            raise ValueError(f"segment {self.id!r} has zero length")

    def __repr__(self) -> str:
        return f"Seg({self.id!r}: {self.source} -> {self.target})"

    @property
    def direction(self) -> tuple[Rat, Rat]:
        return (self.target.x - self.source.x, self.target.y - self.source.y)

    def is_vertical(self) -> bool:
        return self.source.x == self.target.x

    def y_at(self, x: Rat) -> Rat:
        """y-coordinate of the supporting line at abscissa x (non-vertical)."""
        dx = self.target.x - self.source.x
        if dx == 0:
            raise ValueError(f"segment {self.id!r} is vertical")
        t = (x - self.source.x) / dx
        return self.source.y + t * (self.target.y - self.source.y)

    def translated(self, dx: RatLike, dy: RatLike, new_id: SegId = None) -> "Segment":
        dx, dy = rat(dx), rat(dy)
        return Segment(
            new_id if new_id is not None else self.id,
            Point(self.source.x + dx, self.source.y + dy),
            Point(self.target.x + dx, self.target.y + dy),
        )


def segment(sid: SegId, x1: RatLike, y1: RatLike, x2: RatLike, y2: RatLike) -> Segment:
    return Segment(sid, point(x1, y1), point(x2, y2))


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the determinant of (q - p, r - p).

    Returns CCW (+1), COLLINEAR (0), or CW (-1).
    """
    det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    if det > 0:
        return CCW
    if det < 0:
        return CW
    return COLLINEAR


def cross(ax: Rat, ay: Rat, bx: Rat, by: Rat) -> Rat:
    return ax * by - ay * bx


def point_on_segment(p: Point, s: Segment) -> bool:
    """True iff p lies on the closed segment s."""
    if orientation(s.source, s.target, p) != COLLINEAR:
        return False
    return (
        min(s.source.x, s.target.x) <= p.x <= max(s.source.x, s.target.x)
        and min(s.source.y, s.target.y) <= p.y <= max(s.source.y, s.target.y)
    )


def _along(s: Segment, p: Point) -> Rat:
    """Parameter of a collinear point p along s (0 at source, 1 at target)."""
    dx, dy = s.direction
    if dx != 0:
        return (p.x - s.source.x) / dx
    return (p.y - s.source.y) / dy


class Empty:
    """Intersection outcome: the two closed segments are disjoint."""

    __slots__ = ()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Empty)

    def __hash__(self) -> int:
        return hash(Empty)

    def __repr__(self) -> str:
        return "Empty()"


@dataclass(frozen=True)
class Single:
    """Intersection outcome: exactly one common point."""

    point: Point


@dataclass(frozen=True)
class Overlap:
    """Intersection outcome: a common collinear sub-segment."""

    start: Point
    end: Point


Intersection = Union[Empty, Single, Overlap]

EMPTY = Empty()


def intersect(a: Segment, b: Segment) -> Intersection:
    """Exact intersection set of two closed segments.

    Classifies every degenerate configuration: endpoint touches yield
    Single, collinear overlapping segments yield Overlap with the shared
    piece, collinear single-point touches yield Single.
    """
    p, q = a.source, a.target
    r, s = b.source, b.target
    o1 = orientation(p, q, r)
    o2 = orientation(p, q, s)
    o3 = orientation(r, s, p)
    o4 = orientation(r, s, q)

    if o1 == 0 and o2 == 0:
        # Segments on a common line: compare parameter intervals along a.
        t_r, t_s = _along(a, r), _along(a, s)
        lo_t, hi_t = min(t_r, t_s), max(t_r, t_s)
        lo = max(lo_t, Fraction(0))
        hi = min(hi_t, Fraction(1))
        if lo > hi:
            return EMPTY
        if lo == hi:
            return Single(_lerp(a, lo))
        return Overlap(_lerp(a, lo), _lerp(a, hi))

    if o1 != o2 and o3 != o4 and (o1 == 0 or o2 == 0 or o3 == 0 or o4 == 0):
        # An endpoint of one segment lies on the other.
        for cand, seg in ((r, a), (s, a), (p, b), (q, b)):
            if point_on_segment(cand, seg):
                return Single(cand)
        raise AssertionError("unreachable: touching segments without contact point")

    if o1 != o2 and o3 != o4:
        # Proper crossing; solve the 2x2 linear system exactly.
        dax, day = a.direction
        dbx, dby = b.direction
        denom = cross(dax, day, dbx, dby)
        t = cross(r.x - p.x, r.y - p.y, dbx, dby) / denom
        return Single(Point(p.x + t * dax, p.y + t * day))

    # One endpoint may still touch the other segment (e.g. T contact with
    # the collinearity on only one side).
    for cand, seg in ((r, a), (s, a), (p, b), (q, b)):
        if point_on_segment(cand, seg):
            return Single(cand)
    return EMPTY


def _lerp(s: Segment, t: Rat) -> Point:
    dx, dy = s.direction
    return Point(s.source.x + t * dx, s.source.y + t * dy)


def ccw_direction_key(dx: Rat, dy: Rat):
    """Sort key for direction vectors in counterclockwise order from +x.

    Returns a key object whose ordering matches angles in [0, 2*pi).
    """
    if dx == 0 and dy == 0:
        raise ValueError("zero direction")
    half = 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1
    return _DirKey(half, dx, dy)


class _DirKey:
    __slots__ = ("half", "dx", "dy")

    def __init__(self, half: int, dx: Rat, dy: Rat):
        self.half = half
        self.dx = dx
        self.dy = dy

    def __lt__(self, other: "_DirKey") -> bool:
        if self.half != other.half:
            return self.half < other.half
        return cross(self.dx, self.dy, other.dx, other.dy) > 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, _DirKey):
            return NotImplemented
        return self.half == other.half and cross(self.dx, self.dy, other.dx, other.dy) == 0
