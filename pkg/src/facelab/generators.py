"""Deterministic, seedable instance families.

Every family returns a MarkedInstance from a Scenario record; identical
(kind, parameters, seed) always produce identical instances.  Random
coordinates live on a rational lattice so every downstream predicate stays
exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .arrangement import InputError
from .geom import (
    EMPTY,
    Point,
    Rat,
    Segment,
    intersect,
    point_on_segment,
    rat,
)
from .overlay import MarkedInstance, marked_instance

KINDS = (
    "shifted_copies",
    "grid",
    "random",
    "polygons",
    "stabber",
    "chords_long",
    "minkowski",
)


@dataclass(frozen=True)
class Scenario:
    kind: str
    parameters: tuple  # sorted (name, value) pairs
    seed: int = 0

    def param(self, name, default=None):
        for (k, v) in self.parameters:
            if k == name:
                return v
        return default


def scenario(kind: str, seed: int = 0, **params) -> Scenario:
    if kind not in KINDS:
        raise InputError(f"unknown scenario kind {kind!r}")
    return Scenario(kind, tuple(sorted(params.items())), seed)


def generate(sc: Scenario) -> MarkedInstance:
    maker = {
        "shifted_copies": _gen_shifted_copies,
        "grid": _gen_grid,
        "random": _gen_random,
        "polygons": _gen_polygons,
        "stabber": _gen_stabber,
        "chords_long": _gen_chords,
        "minkowski": _gen_minkowski,
    }[sc.kind]
    return maker(sc)


# ---------------------------------------------------------------------------
# shifted copies: t collections of m horizontal translates of a strip family


def base_strip_family(t: int, width: Rat) -> list[Segment]:
    """t pairwise-crossing segments spanning a strip of the given width.

    Tangent lines to a downward parabola, clipped to the strip: each appears
    exactly once on the family's lower envelope, so the base envelope has
    t pieces and t - 1 breakpoints.
    """
    a = rat(width)
    segs = []
    for i in range(t):
        c = (i + 1) * a / (t + 1)  # tangency abscissa
        # tangent to y = -x^2 at x = c:  y = -2 c x + c^2
        y0 = c * c
        y1 = -2 * c * a + c * c
        segs.append(Segment(f"base{i}", Point(Fraction(0), y0), Point(a, y1)))
    return segs


def _gen_shifted_copies(sc: Scenario) -> MarkedInstance:
    t = sc.param("t", 3)
    m = sc.param("m", 4)
    width = rat(sc.param("width", 8))
    if t < 1 or m < 1 or width <= 0:
        raise InputError("shifted_copies needs t >= 1, m >= 1, width > 0")
    base = sc.param("base")
    if base is None:
        base = base_strip_family(t, width)
    if len(base) != t:
        raise InputError("base family size must equal t")
    collections = []
    ys = []
    for i, g in enumerate(base):
        col = []
        for j in range(m):
            col.append(g.translated(j * width, 0, new_id=f"c{i}s{j}"))
        collections.append(col)
        ys.extend([g.source.y, g.target.y])
    low = min(ys) - 1
    p = Point(m * width / 2, low)
    return marked_instance(collections, [p])


# ---------------------------------------------------------------------------


def _gen_grid(sc: Scenario) -> MarkedInstance:
    h = sc.param("h", 3)
    v = sc.param("v", 3)
    m = sc.param("m")  # marking points; default all bounded cells
    if h < 1 or v < 1:
        raise InputError("grid needs h, v >= 1")
    horizontals = [
        Segment(f"h{i}", Point(Fraction(-1), Fraction(2 * i)), Point(Fraction(2 * v), Fraction(2 * i)))
        for i in range(h)
    ]
    verticals = [
        Segment(f"v{j}", Point(Fraction(2 * j), Fraction(-1)), Point(Fraction(2 * j), Fraction(2 * h)))
        for j in range(v)
    ]
    cells = [(i, j) for i in range(h - 1) for j in range(v - 1)]
    if m is not None and m < len(cells):
        rng = random.Random(sc.seed)
        cells = sorted(rng.sample(cells, m))
    points = [Point(Fraction(2 * j + 1), Fraction(2 * i + 1)) for (i, j) in cells]
    return marked_instance([horizontals, verticals], points)


# ---------------------------------------------------------------------------


def random_segments(
    rng: random.Random,
    n: int,
    box: int,
    length: int,
    prefix: str = "s",
    general_position: bool = True,
    existing: list = None,
) -> list[Segment]:
    """Random lattice segments; optionally reject tangent configurations.

    General position here means: no endpoint of any segment lies on any
    other segment.  Proper crossings (including concurrent ones) remain.
    """
    segs: list[Segment] = list(existing) if existing else []
    own: list[Segment] = []
    attempts = 0
    while len(own) < n:
        attempts += 1
        if attempts > 200 * (n + 1):
            raise InputError("could not generate a general-position instance")
        x1, y1 = rng.randrange(0, box + 1), rng.randrange(0, box + 1)
        x2 = x1 + rng.randrange(-length, length + 1)
        y2 = y1 + rng.randrange(-length, length + 1)
        if (x1, y1) == (x2, y2):
            continue
        cand = Segment(f"{prefix}{len(own)}", Point(Fraction(x1), Fraction(y1)), Point(Fraction(x2), Fraction(y2)))
        if general_position and not _compatible(cand, segs):
            continue
        segs.append(cand)
        own.append(cand)
    return own


def _compatible(cand: Segment, others: list[Segment]) -> bool:
    for s in others:
        if (
            point_on_segment(cand.source, s)
            or point_on_segment(cand.target, s)
            or point_on_segment(s.source, cand)
            or point_on_segment(s.target, cand)
        ):
            return False
    return True


def random_marking_points(rng: random.Random, k: int, segments, box: int) -> list[Point]:
    pts = []
    while len(pts) < k:
        p = Point(
            Fraction(rng.randrange(-2 * box, 4 * box), 7),
            Fraction(rng.randrange(-2 * box, 4 * box), 11),
        )
        if any(point_on_segment(p, s) for s in segments):
            continue
        pts.append(p)
    return pts


def _gen_random(sc: Scenario) -> MarkedInstance:
    n = sc.param("n", 12)
    t = sc.param("t", 2)
    k = sc.param("k", 1)
    box = sc.param("box", 24)
    length = sc.param("length", 10)
    if n < t or t < 1 or k < 0:
        raise InputError("random needs n >= t >= 1 and k >= 0")
    rng = random.Random(sc.seed)
    sizes = [n // t + (1 if i < n % t else 0) for i in range(t)]
    all_segs: list[Segment] = []
    collections = []
    for c, size in enumerate(sizes):
        col = random_segments(rng, size, box, length, prefix=f"c{c}.", existing=all_segs)
        all_segs.extend(col)
        collections.append(col)
    points = random_marking_points(rng, k, all_segs, box)
    return marked_instance(collections, points)


# ---------------------------------------------------------------------------


def convex_polygon(rng: random.Random, sides: int, cx: int, cy: int, radius: int, prefix: str) -> list[Segment]:
    """Simple (convex) lattice polygon as a closed segment loop."""
    while True:
        us = sorted(rng.sample(range(-3 * radius, 3 * radius + 1), sides))
        pts = []
        for u in us:
            # rational point on the circle of the given radius (tan-half-angle)
            uu = Fraction(u, radius)
            den = 1 + uu * uu
            x = cx + radius * (1 - uu * uu) / den
            y = cy + radius * 2 * uu / den
            pts.append(Point(x, y))
        if len({(p.x, p.y) for p in pts}) == sides:
            break
    segs = []
    for i in range(sides):
        a, b = pts[i], pts[(i + 1) % sides]
        segs.append(Segment(f"{prefix}e{i}", a, b))
    return segs


def _gen_polygons(sc: Scenario) -> MarkedInstance:
    k = sc.param("k", 2)
    sides = sc.param("sides", 4)
    box = sc.param("box", 20)
    kpts = sc.param("points", 1)
    if k < 1 or sides < 3:
        raise InputError("polygons needs k >= 1 and sides >= 3")
    rng = random.Random(sc.seed)
    collections = []
    all_segs: list[Segment] = []
    for i in range(k):
        for _ in range(200):
            cx = rng.randrange(0, box + 1)
            cy = rng.randrange(0, box + 1)
            radius = rng.randrange(3, max(4, box // 2))
            poly = convex_polygon(rng, sides, cx, cy, radius, prefix=f"p{i}")
            if all(_compatible(s, all_segs) for s in poly):
                break
        else:
            raise InputError("could not place polygons in general position")
        collections.append(poly)
        all_segs.extend(poly)
    points = random_marking_points(rng, kpts, all_segs, box)
    return marked_instance(collections, points)


# ---------------------------------------------------------------------------


def _gen_stabber(sc: Scenario) -> MarkedInstance:
    """n segments all crossing one distinguished segment."""
    n = sc.param("n", 10)
    box = sc.param("box", 40)
    if n < 1:
        raise InputError("stabber needs n >= 1")
    rng = random.Random(sc.seed)
    spine = Segment("spine", Point(Fraction(0), Fraction(0)), Point(Fraction(box), Fraction(0)))
    segs = [spine]
    made = 0
    attempts = 0
    while made < n:
        attempts += 1
        if attempts > 400 * (n + 1):
            raise InputError("stabber generation stalled")
        cx = rng.randrange(1, box)
        up = rng.randrange(1, box // 2)
        dn = rng.randrange(1, box // 2)
        dx_up = rng.randrange(-6, 7)
        dx_dn = rng.randrange(-6, 7)
        cand = Segment(
            f"s{made}",
            Point(Fraction(cx + dx_dn), Fraction(-dn)),
            Point(Fraction(cx + dx_up), Fraction(up)),
        )
        if not _compatible(cand, segs):
            continue
        if intersect(cand, spine) == EMPTY:
            continue
        segs.append(cand)
        made += 1
    points = random_marking_points(rng, 1, segs, box)
    return marked_instance([segs], points)


# ---------------------------------------------------------------------------


def circle_point(u: Fraction, radius: Rat) -> Point:
    """Exact rational point on the circle x^2 + y^2 = radius^2."""
    den = 1 + u * u
    return Point(radius * (1 - u * u) / den, radius * 2 * u / den)


def _gen_chords(sc: Scenario) -> MarkedInstance:
    """n chords of a circle, each of length >= c * radius."""
    n = sc.param("n", 10)
    radius = rat(sc.param("radius", 10))
    c = rat(sc.param("c", 1))
    if c > 2:
        raise InputError("chord length bound exceeds the diameter")
    if n < 1:
        raise InputError("chords_long needs n >= 1")
    rng = random.Random(sc.seed)
    min_len2 = c * c * radius * radius
    segs: list[Segment] = []
    attempts = 0
    while len(segs) < n:
        attempts += 1
        if attempts > 600 * (n + 1):
            raise InputError("chords generation stalled")
        u1 = Fraction(rng.randrange(-400, 401), 100)
        u2 = Fraction(rng.randrange(-400, 401), 100)
        if u1 == u2:
            continue
        a, b = circle_point(u1, radius), circle_point(u2, radius)
        if a == b:
            continue
        d2 = (a.x - b.x) ** 2 + (a.y - b.y) ** 2
        if d2 < min_len2:
            continue
        cand = Segment(f"ch{len(segs)}", a, b)
        if not _compatible(cand, segs):
            continue
        segs.append(cand)
    points = random_marking_points(rng, 1, segs, int(radius) + 2)
    return marked_instance([segs], points)


# ---------------------------------------------------------------------------
# Minkowski / motion-planning forbidden regions


def reflect_translate(polygon: list[Segment], obstacles: list[Point], center: Point = None):
    """Families of translated copies of each reflected polygon edge.

    The polygon is reflected through the reference point (180-degree
    rotation: q -> 2*center - q ... realized as center + (center - q)), then
    translated to every obstacle.  Family i holds the copies of edge i, one
    per obstacle, so each family is a set of parallel translated copies of a
    single segment.
    """
    if not polygon:
        raise InputError("empty polygon")
    _check_simple_loop(polygon)
    if center is None:
        center = polygon[0].source
    families = []
    for ei, edge in enumerate(polygon):
        fam = []
        for oi, p in enumerate(obstacles):
            a = Point(p.x + center.x - edge.source.x, p.y + center.y - edge.source.y)
            b = Point(p.x + center.x - edge.target.x, p.y + center.y - edge.target.y)
            fam.append(Segment(f"f{ei}o{oi}", a, b))
        families.append(fam)
    return families


def _check_simple_loop(polygon: list[Segment]) -> None:
    n = len(polygon)
    for i, s in enumerate(polygon):
        if s.target != polygon[(i + 1) % n].source:
            raise InputError("polygon edges do not form a closed loop")
    for i in range(n):
        for j in range(i + 1, n):
            hit = intersect(polygon[i], polygon[j])
            if hit == EMPTY:
                continue
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            from .geom import Single

            if adjacent and isinstance(hit, Single):
                continue
            raise InputError("polygon is not simple")


def forbidden_region(polygon: list[Segment], obstacle: Point, center: Point) -> list[Point]:
    """Vertex loop of the reflected polygon placed at one obstacle."""
    return [
        Point(obstacle.x + center.x - s.source.x, obstacle.y + center.y - s.source.y)
        for s in polygon
    ]


def _gen_minkowski(sc: Scenario) -> MarkedInstance:
    sides = sc.param("sides", 4)
    n_obstacles = sc.param("obstacles", 3)
    box = sc.param("box", 24)
    rng = random.Random(sc.seed)
    poly = convex_polygon(rng, sides, 0, 0, sc.param("radius", 3), prefix="robot")
    for _ in range(400):
        obstacles = [
            Point(Fraction(rng.randrange(0, box + 1)), Fraction(rng.randrange(0, box + 1)))
            for _ in range(n_obstacles)
        ]
        if len({(p.x, p.y) for p in obstacles}) == n_obstacles:
            break
    families = reflect_translate(poly, obstacles, center=poly[0].source)
    flat = [s for fam in families for s in fam]
    points = random_marking_points(rng, 1, flat, 3 * box)
    return marked_instance(families, points)


def square_loop(x: Rat, y: Rat, side: Rat, prefix: str = "sq") -> list[Segment]:
    """Axis-aligned square as a counterclockwise closed segment loop."""
    x, y, side = rat(x), rat(y), rat(side)
    pts = [
        Point(x, y),
        Point(x + side, y),
        Point(x + side, y + side),
        Point(x, y + side),
    ]
    return [
        Segment(f"{prefix}{i}", pts[i], pts[(i + 1) % 4])
        for i in range(4)
    ]
