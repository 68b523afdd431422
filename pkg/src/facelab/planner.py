"""Translational motion planning of a simple polygon among point obstacles.

Each obstacle pin inflates to a forbidden region (the robot reflected
through its reference point, placed at the pin); the robot may move iff the
start and goal reference placements lie in the same face of the arrangement
of all forbidden-region edges.  Those edges arrive grouped into families of
translated copies of a single robot edge, and the face is computed with the
balanced binary merge over the families.  Paths are routed through the
trapezoid adjacency graph of the free face, so every interior vertex is
strictly inside it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arrangement import Arrangement, InputError, Trapezoid, build
from .generators import forbidden_region, reflect_translate
from .geom import EMPTY, Point, Segment, intersect, point_on_segment
from .overlay import marked_instance, single_face_overlay


@dataclass(frozen=True)
class PlanProblem:
    robot: tuple  # closed loop of Segments
    obstacles: tuple  # Points
    start: Point
    goal: Point
    center: Optional[Point] = None  # reference point; default first vertex

    @property
    def reference(self) -> Point:
        return self.center if self.center is not None else self.robot[0].source


@dataclass(frozen=True)
class PlanPath:
    waypoints: tuple  # Points from start to goal


class Unreachable:
    def __eq__(self, other):
        return isinstance(other, Unreachable)

    def __repr__(self):
        return "Unreachable()"


UNREACHABLE = Unreachable()


def plan_problem(robot, obstacles, start, goal, center=None) -> PlanProblem:
    return PlanProblem(tuple(robot), tuple(obstacles), start, goal, center)


def _point_in_polygon(p: Point, loop: list[Point]) -> bool:
    """Strict interior test by exact winding number."""
    w = 0
    n = len(loop)
    for i in range(n):
        a, b = loop[i], loop[(i + 1) % n]
        if a.y <= p.y:
            if b.y > p.y and _is_left(a, b, p) > 0:
                w += 1
        else:
            if b.y <= p.y and _is_left(a, b, p) < 0:
                w -= 1
    return w != 0


def _is_left(a: Point, b: Point, p: Point) -> int:
    v = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
    return (v > 0) - (v < 0)


def forbidden_families(prob: PlanProblem) -> list:
    return reflect_translate(list(prob.robot), list(prob.obstacles), prob.reference)


def _check_placement(prob: PlanProblem, q: Point, name: str, flat: list[Segment]) -> None:
    for s in flat:
        if point_on_segment(q, s):
            raise InputError(f"{name} placement {q} touches a forbidden-region edge")
    for i, pin in enumerate(prob.obstacles):
        loop = forbidden_region(list(prob.robot), pin, prob.reference)
        if _point_in_polygon(q, loop):
            raise InputError(
                f"{name} placement {q} collides with obstacle {i} at {pin}"
            )


def plan(prob: PlanProblem):
    """PlanPath through the free face, or Unreachable.

    The free face containing the start is computed by the family merge; the
    goal is then located in the final merge arrangement, whose face
    containing the start coincides with the free-space face.
    """
    families = forbidden_families(prob)
    flat = [s for fam in families for s in fam]
    _check_placement(prob, prob.start, "start", flat)
    _check_placement(prob, prob.goal, "goal", flat)

    if prob.start == prob.goal:
        return PlanPath((prob.start,))

    if not flat:
        return PlanPath((prob.start, prob.goal))

    inst = marked_instance(families, [prob.start])
    report = single_face_overlay(inst, prob.start)
    arr = build(report.final_segments)
    start_loc = arr.locate(prob.start)
    goal_loc = arr.locate(prob.goal)
    if goal_loc != start_loc:
        return UNREACHABLE
    return PlanPath(tuple(extract_path(arr, start_loc.index, prob.start, prob.goal)))


def plan_oracle_verdict(prob: PlanProblem) -> bool:
    """Reachability from the full union arrangement (ground truth)."""
    families = forbidden_families(prob)
    flat = [s for fam in families for s in fam]
    if not flat:
        return True
    arr = build(flat)
    return arr.locate(prob.start) == arr.locate(prob.goal)


def extract_path(arr: Arrangement, face_id: int, start: Point, goal: Point) -> list[Point]:
    """Polyline from start to goal through the face's trapezoid graph.

    Waypoints alternate between trapezoid interior points and midpoints of
    shared vertical walls; every leg stays inside the union of two adjacent
    convex trapezoids, hence strictly inside the face.
    """
    if start == goal:
        return [start]
    traps = [t for t in arr.vertical_decomposition() if t.containing_face == face_id]
    s_i = _find_trap(arr, traps, start)
    g_i = _find_trap(arr, traps, goal)
    if s_i == g_i:
        return [start, goal]

    adj: dict = {i: [] for i in range(len(traps))}
    for i in range(len(traps)):
        for j in range(i + 1, len(traps)):
            door = _shared_wall(arr, traps[i], traps[j])
            if door is not None:
                adj[i].append((j, door))
                adj[j].append((i, door))

    prev: dict = {s_i: None}
    frontier = [s_i]
    while frontier and g_i not in prev:
        nxt = []
        for u in frontier:
            for (v, door) in adj[u]:
                if v not in prev:
                    prev[v] = (u, door)
                    nxt.append(v)
        frontier = nxt
    if g_i not in prev:
        raise AssertionError("trapezoids of one face must be connected")

    doors = []
    cur = g_i
    while prev[cur] is not None:
        u, door = prev[cur]
        doors.append(door)
        cur = u
    doors.reverse()

    waypoints = [start]
    cells = [s_i]
    cur = g_i
    chain = []
    while prev[cur] is not None:
        chain.append(cur)
        cur = prev[cur][0]
    chain.reverse()
    for cell, door in zip(chain, doors):
        waypoints.append(door)
        waypoints.append(_trap_center(arr, traps[cell]))
    waypoints[-1] = goal  # the last cell center is replaced by the goal
    return waypoints


def _find_trap(arr: Arrangement, traps: list[Trapezoid], p: Point) -> int:
    hits = [i for i, t in enumerate(traps) if arr.trapezoid_of(t, p)]
    if len(hits) != 1:
        raise AssertionError(f"placement {p} is in {len(hits)} face trapezoids")
    return hits[0]


def _edge_y_at(arr: Arrangement, edge_idx: int, x: Fraction) -> Fraction:
    e = arr.edges[edge_idx]
    a, b = arr.vertices[e.u], arr.vertices[e.v]
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x)


def _shared_wall(arr: Arrangement, t1: Trapezoid, t2: Trapezoid) -> Optional[Point]:
    """A point on the open shared vertical wall, if the cells touch.

    The wall overlap interval is reduced by everything of the subdivision
    sitting on the wall line (vertical edges, vertices); the door is placed
    inside a maximal free piece.
    """
    for (a, b) in ((t1, t2), (t2, t1)):
        if a.right is None or b.left is None or a.right != b.left:
            continue
        x = a.right
        lo = []
        hi = []
        for t in (a, b):
            lo.append(_edge_y_at(arr, t.bottom_edge, x) if t.bottom_edge is not None else None)
            hi.append(_edge_y_at(arr, t.top_edge, x) if t.top_edge is not None else None)
        lo_y = max((v for v in lo if v is not None), default=None)
        hi_y = min((v for v in hi if v is not None), default=None)
        if lo_y is not None and hi_y is not None and lo_y >= hi_y:
            continue

        blockers = []  # closed [y1, y2] spans on the wall line
        for e in arr.edges:
            pa, pb = arr.vertices[e.u], arr.vertices[e.v]
            if pa.x == x and pb.x == x:
                blockers.append((min(pa.y, pb.y), max(pa.y, pb.y)))
        for p in arr.vertices:
            if p.x == x:
                blockers.append((p.y, p.y))
        blockers.sort()

        cur_lo = lo_y  # None means -inf
        pieces = []
        for (b1, b2) in blockers:
            if hi_y is not None and b1 >= hi_y:
                break
            if cur_lo is None or b1 > cur_lo:
                lo_clip = cur_lo
                hi_clip = b1 if (hi_y is None or b1 < hi_y) else hi_y
                if lo_clip is None or lo_clip < hi_clip:
                    pieces.append((lo_clip, hi_clip))
            if cur_lo is None or b2 > cur_lo:
                cur_lo = b2
        if hi_y is None or cur_lo is None or cur_lo < hi_y:
            pieces.append((cur_lo, hi_y))
        for (p_lo, p_hi) in pieces:
            if p_lo is None and p_hi is None:
                return Point(x, Fraction(0))
            if p_lo is None:
                return Point(x, p_hi - 1)
            if p_hi is None:
                return Point(x, p_lo + 1)
            if p_lo < p_hi:
                return Point(x, (p_lo + p_hi) / 2)
    return None


def _trap_center(arr: Arrangement, t: Trapezoid) -> Point:
    if t.left is None and t.right is None:
        x = Fraction(0) if not arr.vertices else min(p.x for p in arr.vertices) - 1
    elif t.left is None:
        x = t.right - 1
    elif t.right is None:
        x = t.left + 1
    else:
        x = (t.left + t.right) / 2
    lo = _edge_y_at(arr, t.bottom_edge, x) if t.bottom_edge is not None else None
    hi = _edge_y_at(arr, t.top_edge, x) if t.top_edge is not None else None
    if lo is None and hi is None:
        ys = [p.y for p in arr.vertices]
        return Point(x, (min(ys) - 1) if ys else Fraction(0))
    if lo is None:
        return Point(x, hi - 1)
    if hi is None:
        return Point(x, lo + 1)
    return Point(x, (lo + hi) / 2)


def path_is_obstacle_free(path: PlanPath, families) -> bool:
    """Exact check: no polyline leg meets any forbidden-region segment."""
    flat = [s for fam in families for s in fam]
    pts = list(path.waypoints)
    if len(pts) == 1:
        return not any(point_on_segment(pts[0], s) for s in flat)
    for a, b in zip(pts, pts[1:]):
        if a == b:
            continue
        leg = Segment("leg", a, b)
        for s in flat:
            if intersect(leg, s) != EMPTY:
                return False
    return True
