"""Planar subdivision of a segment set as a doubly-connected edge list.

``build`` subdivides the input segments at all mutual intersection points
(collinear overlaps become shared edges with several owners), links half
edges around each vertex in exact circular order, extracts boundary cycles,
and groups cycles into faces.  Faces carry one optional outer cycle and any
number of inner (hole) cycles; every cycle is oriented with its face to the
left.

Also provided: exact point location, face complexity counts in the
boundary-traversal convention (an edge bounding a face on both sides
contributes two edge sides), and the vertical (trapezoidal) decomposition.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .geom import (
    CCW,
    COLLINEAR,
    CW,
    Point,
    Rat,
    Segment,
    SegId,
    ccw_direction_key,
    cross,
    intersect,
    orientation,
    point_on_segment,
    Single,
)
from .sweep import split_points_quadratic, split_points_sweep, subdivide


class InputError(ValueError):
    """Invalid input data (duplicate ids, malformed instances, ...)."""


class HalfEdge:
    __slots__ = ("origin", "twin", "next", "prev", "edge", "cycle", "index")

    def __init__(self, origin: int, edge: int, index: int):
        self.origin = origin
        self.edge = edge
        self.index = index
        self.twin: "HalfEdge" = None  # type: ignore[assignment]
        self.next: "HalfEdge" = None  # type: ignore[assignment]
        self.prev: "HalfEdge" = None  # type: ignore[assignment]
        self.cycle: int = -1

    def __repr__(self) -> str:
        return f"HE#{self.index}(v{self.origin}->v{self.twin.origin}, e{self.edge})"


@dataclass
class Edge:
    """Undirected edge: a maximal subdivision piece shared by its owners."""

    index: int
    u: int  # vertex index, lexicographically smaller endpoint
    v: int
    # owner segment id -> True when the u->v direction agrees with the
    # owner's source->target orientation
    owners: dict
    half_uv: HalfEdge = None  # type: ignore[assignment]
    half_vu: HalfEdge = None  # type: ignore[assignment]

    @property
    def canonical_owner(self) -> SegId:
        return min(self.owners, key=lambda o: (o.__class__.__name__, str(o)))


@dataclass
class Face:
    id: int
    outer_component: Optional[int]  # cycle index, None for the unbounded face
    inner_components: list
    is_unbounded: bool


@dataclass(frozen=True)
class Trapezoid:
    """Cell of the vertical decomposition.

    ``top``/``bottom`` name the owning segment of the bounding edge (None at
    infinity); ``left``/``right`` are wall abscissae (None at infinity).
    """

    bottom: Optional[SegId]
    top: Optional[SegId]
    left: Optional[Rat]
    right: Optional[Rat]
    containing_face: int
    bottom_edge: Optional[int] = None
    top_edge: Optional[int] = None


@dataclass(frozen=True)
class Location:
    kind: str  # "face" | "edge" | "vertex"
    index: int


class Arrangement:
    """Immutable DCEL of a segment set."""

    def __init__(
        self,
        segments: Sequence[Segment],
        vertices: list[Point],
        edges: list[Edge],
        half_edges: list[HalfEdge],
        cycles: list[list[HalfEdge]],
        faces: list[Face],
        cycle_face: list[int],
        segment_index: dict,
    ):
        self.segments = list(segments)
        self.segments_by_id = {s.id: s for s in segments}
        self.vertices = vertices
        self.edges = edges
        self.half_edges = half_edges
        self.cycles = cycles
        self.faces = faces
        self.cycle_face = cycle_face
        self.segment_index = segment_index
        self._vertex_lookup = {(p.x, p.y): i for i, p in enumerate(vertices)}

    # -- basic counts -------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def total_complexity(self) -> int:
        """Vertices + edges + faces of the subdivision."""
        return self.num_vertices + self.num_edges + self.num_faces

    def connected_components(self) -> int:
        """Connected components of the union of the segments."""
        if not self.vertices:
            return 0
        parent = list(range(len(self.vertices)))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in self.edges:
            ra, rb = find(e.u), find(e.v)
            if ra != rb:
                parent[ra] = rb
        return len({find(i) for i in range(len(self.vertices))})

    def check_euler(self) -> bool:
        if not self.segments:
            return self.num_faces == 1
        return (
            self.num_vertices - self.num_edges + self.num_faces
            == 1 + self.connected_components()
        )

    # -- faces ----------------------------------------------------------

    def boundary_cycles(self, face_id: int) -> list[list[HalfEdge]]:
        """Boundary components of a face, each oriented with the face left."""
        f = self.faces[face_id]
        out = []
        if f.outer_component is not None:
            out.append(self.cycles[f.outer_component])
        for c in f.inner_components:
            out.append(self.cycles[c])
        return out

    def face_complexity(self, face_id: int) -> dict:
        """Traversal counts: edge sides, vertex appearances, components."""
        cycles = self.boundary_cycles(face_id)
        edge_sides = sum(len(c) for c in cycles)
        return {
            "edge_sides": edge_sides,
            "vertices": edge_sides,
            "components": len(cycles),
        }

    def face_of_halfedge(self, h: HalfEdge) -> int:
        return self.cycle_face[h.cycle]

    # -- point location --------------------------------------------------

    def locate(self, p: Point) -> Location:
        vi = self._vertex_lookup.get((p.x, p.y))
        if vi is not None:
            return Location("vertex", vi)
        for e in self.edges:
            if _point_on_edge(self, e, p):
                return Location("edge", e.index)
        return Location("face", self._face_containing(p))

    def _face_containing(self, p: Point) -> int:
        best_face = self._unbounded_id
        best_area = None
        for fi, f in enumerate(self.faces):
            if f.outer_component is None:
                continue
            cyc = self.cycles[f.outer_component]
            if _winding_number(self, cyc, p) != 0:
                area = _cycle_area2(self, cyc)
                if best_area is None or area < best_area:
                    best_area = area
                    best_face = fi
        return best_face

    @property
    def _unbounded_id(self) -> int:
        for f in self.faces:
            if f.is_unbounded:
                return f.id
        raise AssertionError("no unbounded face")

    def locate_by_ray(self, p: Point, rng: Optional[random.Random] = None) -> Location:
        """Independent first-hit ray-shooting locator (test oracle).

        Casts a ray from p in a random rational direction, finds the closest
        proper crossing with the original segments, and reads the face off
        the half-edge facing p.  Retries on any degeneracy.
        """
        vi = self._vertex_lookup.get((p.x, p.y))
        if vi is not None:
            return Location("vertex", vi)
        for e in self.edges:
            if _point_on_edge(self, e, p):
                return Location("edge", e.index)
        rng = rng or random.Random(0x5EED)
        for _ in range(64):
            dx = Fraction(rng.randrange(-999, 1000), 997)
            dy = Fraction(rng.randrange(-999, 1000), 991)
            if dx == 0 and dy == 0:
                continue
            hit = self._first_hit(p, dx, dy)
            if hit == "degenerate":
                continue
            if hit is None:
                return Location("face", self._unbounded_id)
            edge_idx, t = hit
            e = self.edges[edge_idx]
            a, b = self.vertices[e.u], self.vertices[e.v]
            side = orientation(a, b, p)
            if side == COLLINEAR:
                continue
            h = e.half_uv if side == CCW else e.half_vu
            return Location("face", self.face_of_halfedge(h))
        raise AssertionError("ray locator failed to find a generic direction")

    def _first_hit(self, p: Point, dx: Rat, dy: Rat):
        best_t = None
        best_edge = None
        for e in self.edges:
            a, b = self.vertices[e.u], self.vertices[e.v]
            ex, ey = b.x - a.x, b.y - a.y
            denom = cross(dx, dy, ex, ey)
            if denom == 0:
                # Parallel: degenerate only if the supporting lines coincide
                # ahead of p (cannot happen: p is off every edge, and a
                # collinear-but-disjoint edge ahead is still hit at its
                # endpoint by a parallel ray only if exactly aligned).
                if orientation(p, Point(p.x + dx, p.y + dy), a) == COLLINEAR:
                    return "degenerate"
                continue
            t = cross(a.x - p.x, a.y - p.y, ex, ey) / denom
            u = cross(a.x - p.x, a.y - p.y, dx, dy) / denom
            if t <= 0:
                continue
            if u < 0 or u > 1:
                continue
            if u == 0 or u == 1:
                return "degenerate"  # ray meets an edge endpoint exactly
            if best_t is None or t < best_t:
                best_t = t
                best_edge = e.index
            elif t == best_t:
                return "degenerate"
        if best_edge is None:
            return None
        return (best_edge, best_t)

    # -- vertical decomposition -------------------------------------------

    def vertical_decomposition(self) -> list[Trapezoid]:
        return _vertical_decomposition(self)

    def trapezoid_of(self, t: Trapezoid, p: Point) -> bool:
        """Membership of p in t under the +epsilon lexicographic jitter."""
        if t.left is not None and p.x < t.left:
            return False
        if t.right is not None and p.x >= t.right:
            return False
        if t.bottom_edge is not None:
            e = self.edges[t.bottom_edge]
            a, b = self.vertices[e.u], self.vertices[e.v]
            if orientation(a, b, p) != CCW:  # p must be strictly above
                return False
        if t.top_edge is not None:
            e = self.edges[t.top_edge]
            a, b = self.vertices[e.u], self.vertices[e.v]
            if orientation(a, b, p) != CW:  # strictly below
                return False
        return True

    def locate_trapezoid(self, trapezoids: list[Trapezoid], p: Point) -> int:
        hits = [i for i, t in enumerate(trapezoids) if self.trapezoid_of(t, p)]
        if len(hits) != 1:
            raise AssertionError(
                f"point {p} lies in {len(hits)} trapezoids; expected exactly 1"
            )
        return hits[0]


def _point_on_edge(arr: Arrangement, e: Edge, p: Point) -> bool:
    a, b = arr.vertices[e.u], arr.vertices[e.v]
    if orientation(a, b, p) != COLLINEAR:
        return False
    return (
        min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def _winding_number(arr: Arrangement, cycle: list[HalfEdge], p: Point) -> int:
    """Winding number of a closed half-edge walk around p (p off the walk)."""
    w = 0
    for h in cycle:
        a = arr.vertices[h.origin]
        b = arr.vertices[h.twin.origin]
        if a.y <= p.y:
            if b.y > p.y and orientation(a, b, p) == CCW:
                w += 1
        else:
            if b.y <= p.y and orientation(a, b, p) == CW:
                w -= 1
    return w


def _cycle_area2(arr: Arrangement, cycle: list[HalfEdge]) -> Rat:
    total = Fraction(0)
    for h in cycle:
        a = arr.vertices[h.origin]
        b = arr.vertices[h.twin.origin]
        total += cross(a.x, a.y, b.x, b.y)
    return total


def build(segments: Sequence[Segment], method: str = "sweep") -> Arrangement:
    """Construct the exact DCEL of the input segments.

    ``method`` selects the subdivision-point algorithm: "sweep" (default)
    or "quadratic" (the all-pairs oracle).
    """
    segments = list(segments)
    seen = set()
    for s in segments:
        if s.id in seen:
            raise InputError(f"duplicate segment id {s.id!r}")
        seen.add(s.id)

    if method == "sweep":
        splits = split_points_sweep(segments)
    elif method == "quadratic":
        splits = split_points_quadratic(segments)
    else:
        raise ValueError(f"unknown build method {method!r}")
    chains = subdivide(segments, splits)

    vert_index: dict = {}
    vertices: list[Point] = []

    def vid(p: Point) -> int:
        k = (p.x, p.y)
        i = vert_index.get(k)
        if i is None:
            i = len(vertices)
            vert_index[k] = i
            vertices.append(p)
        return i

    edge_map: dict = {}
    edge_owner_dirs: dict = {}
    seg_edge_keys: dict = {s.id: [] for s in segments}
    for s in segments:
        pts = chains[s.id]
        for a, b in zip(pts, pts[1:]):
            ia, ib = vid(a), vid(b)
            if (a.x, a.y) < (b.x, b.y):
                key, forward = (ia, ib), True
            else:
                key, forward = (ib, ia), False
            if key not in edge_map:
                edge_map[key] = len(edge_map)
                edge_owner_dirs[key] = {}
            edge_owner_dirs[key][s.id] = forward
            seg_edge_keys[s.id].append((key, forward))

    edges: list[Edge] = []
    half_edges: list[HalfEdge] = []
    for key, idx in sorted(edge_map.items(), key=lambda kv: kv[1]):
        u, v = key
        e = Edge(index=idx, u=u, v=v, owners=edge_owner_dirs[key])
        h1 = HalfEdge(u, idx, len(half_edges))
        h2 = HalfEdge(v, idx, len(half_edges) + 1)
        h1.twin, h2.twin = h2, h1
        e.half_uv, e.half_vu = h1, h2
        half_edges.extend((h1, h2))
        edges.append(e)

    # Circular order of outgoing half-edges around each vertex.
    outgoing: list[list[HalfEdge]] = [[] for _ in vertices]
    for h in half_edges:
        outgoing[h.origin].append(h)
    for vi, outs in enumerate(outgoing):
        p = vertices[vi]

        def dir_key(h: HalfEdge):
            q = vertices[h.twin.origin]
            return ccw_direction_key(q.x - p.x, q.y - p.y)

        outs.sort(key=dir_key)

    # next(h) = clockwise neighbour of twin(h) around the head of h.
    for h in half_edges:
        outs = outgoing[h.twin.origin]
        pos = outs.index(h.twin)
        nxt = outs[pos - 1]
        h.next = nxt
        nxt.prev = h

    # Extract boundary cycles.
    cycles: list[list[HalfEdge]] = []
    for h in half_edges:
        if h.cycle != -1:
            continue
        cyc_index = len(cycles)
        cyc = []
        cur = h
        while True:
            cur.cycle = cyc_index
            cyc.append(cur)
            cur = cur.next
            if cur is h:
                break
        cycles.append(cyc)

    arr = Arrangement.__new__(Arrangement)
    arr.segments = segments
    arr.segments_by_id = {s.id: s for s in segments}
    arr.vertices = vertices
    arr.edges = edges
    arr.half_edges = half_edges
    arr.cycles = cycles
    arr._vertex_lookup = vert_index

    faces, cycle_face = _assemble_faces(arr)
    arr.faces = faces
    arr.cycle_face = cycle_face

    seg_index: dict = {}
    for s in segments:
        chain = []
        for key, forward in seg_edge_keys[s.id]:
            e = edges[edge_map[key]]
            chain.append(e.half_uv if forward else e.half_vu)
        seg_index[s.id] = chain
    arr.segment_index = seg_index
    return arr


def _assemble_faces(arr: Arrangement) -> tuple[list[Face], list[int]]:
    cycles = arr.cycles
    areas = [_cycle_area2(arr, c) for c in cycles]
    outer_cycles = [(i, areas[i]) for i in range(len(cycles)) if areas[i] > 0]

    faces: list[Face] = [Face(0, None, [], True)]
    cycle_face = [-1] * len(cycles)
    face_of_outer = {}
    # Deterministic face numbering: by lexicographically smallest vertex of
    # the outer cycle, tie-broken by area.
    def outer_sort_key(item):
        ci, area = item
        vmin = min((arr.vertices[h.origin].x, arr.vertices[h.origin].y) for h in cycles[ci])
        return (vmin, area)

    for ci, _area in sorted(outer_cycles, key=outer_sort_key):
        fid = len(faces)
        faces.append(Face(fid, ci, [], False))
        face_of_outer[ci] = fid
        cycle_face[ci] = fid

    for ci in range(len(cycles)):
        if areas[ci] > 0:
            continue
        rep = _inner_cycle_rep_point(arr, cycles[ci])
        best = None
        best_area = None
        for oi, area in outer_cycles:
            if _winding_number(arr, cycles[oi], rep) != 0:
                if best_area is None or area < best_area:
                    best_area = area
                    best = oi
        fid = 0 if best is None else face_of_outer[best]
        faces[fid].inner_components.append(ci)
        cycle_face[ci] = fid

    for f in faces:
        f.inner_components.sort()
    return faces, cycle_face


def _inner_cycle_rep_point(arr: Arrangement, cycle: list[HalfEdge]) -> Point:
    """A point strictly inside the face this inner cycle bounds.

    Takes the midpoint of one cycle edge and steps off it to the left by a
    rational amount verified (exactly) to be closer to the edge than any
    other feature of the subdivision.
    """
    h = cycle[0]
    a = arr.vertices[h.origin]
    b = arr.vertices[h.twin.origin]
    mid = Point((a.x + b.x) / 2, (a.y + b.y) / 2)
    nx, ny = -(b.y - a.y), (b.x - a.x)  # left normal of a->b

    d2 = None
    for e in arr.edges:
        if e.index == h.edge:
            continue
        dd = _dist2_point_edge(arr, mid, e)
        if d2 is None or dd < d2:
            d2 = dd
    if d2 is None:
        lam = Fraction(1)
    else:
        n2 = nx * nx + ny * ny
        # Want lam^2 * n2 < d2; start from a float guess and shrink.
        guess = math.sqrt(float(d2) / float(n2)) / 2 if d2 > 0 else 0.0
        lam = Fraction(guess).limit_denominator(10**12) if guess > 0 else Fraction(1, 10**9)
        if lam <= 0:
            lam = Fraction(1, 10**9)
        while lam * lam * n2 >= d2:
            lam /= 2
    return Point(mid.x + lam * nx, mid.y + lam * ny)


def _dist2_point_edge(arr: Arrangement, p: Point, e: Edge) -> Rat:
    a, b = arr.vertices[e.u], arr.vertices[e.v]
    abx, aby = b.x - a.x, b.y - a.y
    apx, apy = p.x - a.x, p.y - a.y
    ab2 = abx * abx + aby * aby
    dot = apx * abx + apy * aby
    if dot <= 0:
        return apx * apx + apy * apy
    if dot >= ab2:
        bpx, bpy = p.x - b.x, p.y - b.y
        return bpx * bpx + bpy * bpy
    c = cross(apx, apy, abx, aby)
    return c * c / ab2


# ---------------------------------------------------------------------------
# Vertical decomposition


def _vertical_decomposition(arr: Arrangement) -> list[Trapezoid]:
    if not arr.segments:
        return [Trapezoid(None, None, None, None, arr._unbounded_id)]

    events: dict = {}
    for i, p in enumerate(arr.vertices):
        events.setdefault(p.x, []).append(i)
    xs = sorted(events)

    # Non-vertical edges enter the slab structure at their left endpoint.
    starts: dict = {}
    ends: dict = {}
    vertical_spans: dict = {}
    for e in arr.edges:
        a, b = arr.vertices[e.u], arr.vertices[e.v]
        if a.x == b.x:
            vertical_spans.setdefault(a.x, []).append(
                (min(a.y, b.y), max(a.y, b.y))
            )
            continue
        lo, hi = (a, b) if a.x < b.x else (b, a)
        starts.setdefault(lo.x, []).append(e)
        ends.setdefault(hi.x, []).append(e)

    def edge_y(e: Edge, x: Rat) -> Rat:
        a, b = arr.vertices[e.u], arr.vertices[e.v]
        return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x)

    status: list[Edge] = []
    # gap key: (edge index below or None, edge index above or None)
    open_gaps: dict = {(None, None): None}  # gap key -> left x (None = -inf)
    result: list[Trapezoid] = []

    def gap_keys(st: list[Edge]) -> list[tuple]:
        ids = [None] + [e.index for e in st] + [None]
        return list(zip(ids, ids[1:]))

    def emit(key: tuple, left: Optional[Rat], right: Optional[Rat]) -> None:
        lo, hi = key
        result.append(
            Trapezoid(
                bottom=arr.edges[lo].canonical_owner if lo is not None else None,
                top=arr.edges[hi].canonical_owner if hi is not None else None,
                left=left,
                right=right,
                containing_face=-1,
                bottom_edge=lo,
                top_edge=hi,
            )
        )

    for x0 in xs:
        vertex_ys = sorted(arr.vertices[i].y for i in events[x0])
        v_spans = vertical_spans.get(x0, [])
        ended = {e.index for e in ends.get(x0, [])}

        old_keys = gap_keys(status)
        pierced = set()
        for key in old_keys:
            lo, hi = key
            if lo in ended or hi in ended:
                pierced.add(key)
                continue
            lo_y = edge_y(arr.edges[lo], x0) if lo is not None else None
            hi_y = edge_y(arr.edges[hi], x0) if hi is not None else None
            for y in vertex_ys:
                if (lo_y is None or y >= lo_y) and (hi_y is None or y <= hi_y):
                    pierced.add(key)
                    break
            else:
                for (sy, ty) in v_spans:
                    if (lo_y is None or ty >= lo_y) and (hi_y is None or sy <= hi_y):
                        pierced.add(key)
                        break
        for key in pierced:
            emit(key, open_gaps.pop(key), x0)

        status = [e for e in status if e.index not in ended]
        incoming = starts.get(x0, [])
        status.extend(incoming)
        status.sort(key=lambda e: (edge_y(e, x0), _slope_after(arr, e)))

        for key in gap_keys(status):
            if key not in open_gaps:
                open_gaps[key] = x0

    for key, left in open_gaps.items():
        emit(key, left, None)

    # Attach the containing face of the refined subdivision cell.
    final = []
    for t in result:
        fid = arr.locate(_trap_interior_point(arr, t)).index
        final.append(
            Trapezoid(t.bottom, t.top, t.left, t.right, fid, t.bottom_edge, t.top_edge)
        )
    return final


def _slope_after(arr: Arrangement, e: Edge) -> Rat:
    a, b = arr.vertices[e.u], arr.vertices[e.v]
    lo, hi = (a, b) if a.x < b.x else (b, a)
    return (hi.y - lo.y) / (hi.x - lo.x)


def _trap_interior_point(arr: Arrangement, t: Trapezoid) -> Point:
    if t.left is None and t.right is None:
        x = Fraction(0)
        if arr.vertices:
            x = min(p.x for p in arr.vertices) - 1
    elif t.left is None:
        x = t.right - 1
    elif t.right is None:
        x = t.left + 1
    else:
        x = (t.left + t.right) / 2

    def ey(edge_idx: Optional[int]) -> Optional[Rat]:
        if edge_idx is None:
            return None
        e = arr.edges[edge_idx]
        a, b = arr.vertices[e.u], arr.vertices[e.v]
        return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x)

    lo_y = ey(t.bottom_edge)
    hi_y = ey(t.top_edge)
    if lo_y is None and hi_y is None:
        ys = [p.y for p in arr.vertices]
        y = (min(ys) - 1) if ys else Fraction(0)
    elif lo_y is None:
        y = hi_y - 1
    elif hi_y is None:
        y = lo_y + 1
    else:
        y = (lo_y + hi_y) / 2
    return Point(x, y)


def vertical_decomposition_slab_oracle(arr: Arrangement) -> int:
    """Trapezoid count by an independent slab-refine-then-merge method."""
    if not arr.segments:
        return 1
    xs = sorted({p.x for p in arr.vertices})
    slabs = []
    infinities = [(None, xs[0])] + list(zip(xs, xs[1:])) + [(xs[-1], None)]
    for (lx, rx) in infinities:
        if lx is None:
            mid = rx - 1
        elif rx is None:
            mid = lx + 1
        else:
            mid = (lx + rx) / 2
        spanning = []
        for e in arr.edges:
            a, b = arr.vertices[e.u], arr.vertices[e.v]
            if a.x == b.x:
                continue
            lo, hi = min(a.x, b.x), max(a.x, b.x)
            if lo <= mid <= hi:
                y = a.y + (b.y - a.y) * (mid - a.x) / (b.x - a.x)
                spanning.append((y, e.index))
        spanning.sort()
        ids = [None] + [i for _, i in spanning] + [None]
        slabs.append(((lx, rx), list(zip(ids, ids[1:]))))

    count = 0
    prev_cells: set = set()
    prev_right = None
    vertex_ys_at: dict = {}
    for i, p in enumerate(arr.vertices):
        vertex_ys_at.setdefault(p.x, []).append(p.y)
    vertical_at: dict = {}
    for e in arr.edges:
        a, b = arr.vertices[e.u], arr.vertices[e.v]
        if a.x == b.x:
            vertical_at.setdefault(a.x, []).append((min(a.y, b.y), max(a.y, b.y)))

    def edge_y(idx, x):
        e = arr.edges[idx]
        a, b = arr.vertices[e.u], arr.vertices[e.v]
        return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x)

    for (span, cells) in slabs:
        lx, rx = span
        for key in cells:
            merged = False
            if key in prev_cells and lx is not None:
                lo, hi = key
                lo_y = edge_y(lo, lx) if lo is not None else None
                hi_y = edge_y(hi, lx) if hi is not None else None
                blocked = False
                for y in vertex_ys_at.get(lx, []):
                    if (lo_y is None or y >= lo_y) and (hi_y is None or y <= hi_y):
                        blocked = True
                        break
                if not blocked:
                    for (sy, ty) in vertical_at.get(lx, []):
                        if (lo_y is None or ty >= lo_y) and (hi_y is None or sy <= hi_y):
                            blocked = True
                            break
                merged = not blocked
            if not merged:
                count += 1
        prev_cells = set(cells)
        prev_right = rx
    return count
