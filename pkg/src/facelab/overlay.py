"""Overlays of several segment arrangements and their face measurements.

The operations here mirror the quantities of interest throughout the
package: lower envelopes and their pairwise merge, the face containing a
query point in the overlay of several collections computed by balanced
binary merging of boundary-restricted sub-arrangements, boundary
refinements with their splitting number, per-collection marked-face
complexities, and the degeneracy-greedy coloring of the intersection graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import arrangement as arrmod
from .arrangement import Arrangement, InputError, build
from .geom import (
    EMPTY,
    Point,
    Rat,
    Segment,
    SegId,
    intersect,
    point_on_segment,
)


@dataclass(frozen=True)
class MarkedInstance:
    """t pairwise id-disjoint segment collections plus k marking points."""

    collections: tuple  # tuple of tuples of Segment
    points: tuple  # tuple of Point

    def __post_init__(self):
        seen: set = set()
        for col in self.collections:
            for s in col:
                if s.id in seen:
                    raise InputError(f"duplicate segment id {s.id!r} across collections")
                seen.add(s.id)
        for p in self.points:
            for s in self.all_segments():
                if point_on_segment(p, s):
                    raise InputError(f"marking point {p} lies on segment {s.id!r}")

    def all_segments(self) -> list[Segment]:
        return [s for col in self.collections for s in col]

    @property
    def t(self) -> int:
        return len(self.collections)

    @property
    def k(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.collections)


def marked_instance(collections, points) -> MarkedInstance:
    return MarkedInstance(
        tuple(tuple(c) for c in collections),
        tuple(points),
    )


# ---------------------------------------------------------------------------
# Lower envelopes


@dataclass
class Envelope:
    """Piecewise-linear pointwise minimum of non-vertical segments.

    ``pieces`` are (x_start, x_end, segment id) with strictly increasing,
    non-overlapping spans; x-ranges not covered by any piece are gaps.
    """

    pieces: list  # list of (Rat, Rat, SegId)
    segments: dict  # id -> Segment, for evaluation

    def breakpoints(self) -> list[Rat]:
        """Interior abscissae where two pieces meet."""
        out = []
        for (a, b) in zip(self.pieces, self.pieces[1:]):
            if a[1] == b[0]:
                out.append(a[1])
        return out

    def complexity(self) -> int:
        return len(self.pieces) + len(self.breakpoints())

    def value_at(self, x: Rat) -> Optional[Rat]:
        for (lo, hi, sid) in self.pieces:
            if lo <= x <= hi:
                return self.segments[sid].y_at(x)
        return None


def _seg_span(s: Segment) -> tuple[Rat, Rat]:
    return (min(s.source.x, s.target.x), max(s.source.x, s.target.x))


def lower_envelope(segments: Sequence[Segment]) -> Envelope:
    """Divide-and-conquer lower envelope of partially defined segments."""
    segments = list(segments)
    for s in segments:
        if s.is_vertical():
            raise InputError(f"segment {s.id!r} is vertical; envelopes need functions of x")
    if not segments:
        return Envelope([], {})
    if len(segments) == 1:
        s = segments[0]
        lo, hi = _seg_span(s)
        return Envelope([(lo, hi, s.id)], {s.id: s})
    mid = len(segments) // 2
    return merge_envelopes(lower_envelope(segments[:mid]), lower_envelope(segments[mid:]))


def merge_envelopes(e1: Envelope, e2: Envelope) -> Envelope:
    """Pointwise minimum of two envelopes."""
    segs = dict(e1.segments)
    segs.update(e2.segments)
    xs: set = set()
    for e in (e1, e2):
        for (lo, hi, _sid) in e.pieces:
            xs.add(lo)
            xs.add(hi)
    for (lo1, hi1, s1) in e1.pieces:
        a = segs[s1]
        for (lo2, hi2, s2) in e2.pieces:
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if lo > hi:
                continue
            # candidate crossing abscissa from the supporting lines
            xc = _line_crossing_x(a, segs[s2])
            if xc is not None and lo <= xc <= hi:
                xs.add(xc)
    cuts = sorted(xs)
    pieces: list = []
    for (lo, hi) in zip(cuts, cuts[1:]):
        mid = (lo + hi) / 2
        winner = _winner_at(e1, e2, segs, mid)
        if winner is None:
            continue
        if pieces and pieces[-1][2] == winner and pieces[-1][1] == lo:
            pieces[-1] = (pieces[-1][0], hi, winner)
        else:
            pieces.append((lo, hi, winner))
    return Envelope(pieces, segs)


def _line_crossing_x(a: Segment, b: Segment) -> Optional[Rat]:
    (ax, ay), (bx, by) = a.direction, b.direction
    sa = ay / ax
    sb = by / bx
    if sa == sb:
        return None
    ca = a.source.y - sa * a.source.x
    cb = b.source.y - sb * b.source.x
    return (cb - ca) / (sa - sb)


def _winner_at(e1: Envelope, e2: Envelope, segs: dict, x: Rat) -> Optional[SegId]:
    best = None
    best_y = None
    for e in (e1, e2):
        for (lo, hi, sid) in e.pieces:
            if lo <= x <= hi:
                y = segs[sid].y_at(x)
                if best_y is None or y < best_y or (
                    y == best_y
                    and (str(sid.__class__.__name__), str(sid))
                    < (str(best.__class__.__name__), str(best))
                ):
                    best, best_y = sid, y
                break
    return best


def envelope_overlay(envelopes: Sequence[Envelope]) -> tuple[Envelope, int]:
    """Envelope of the union of several envelopes, plus its complexity."""
    envelopes = list(envelopes)
    if not envelopes:
        return Envelope([], {}), 0
    acc = envelopes[0]
    queue = envelopes[:]
    while len(queue) > 1:
        nxt = []
        for i in range(0, len(queue) - 1, 2):
            nxt.append(merge_envelopes(queue[i], queue[i + 1]))
        if len(queue) % 2:
            nxt.append(queue[-1])
        queue = nxt
    acc = queue[0]
    return acc, acc.complexity()


def lower_envelope_oracle(segments: Sequence[Segment]) -> Envelope:
    """All-pairs candidate-abscissa oracle for the lower envelope."""
    segments = list(segments)
    for s in segments:
        if s.is_vertical():
            raise InputError(f"segment {s.id!r} is vertical")
    segs = {s.id: s for s in segments}
    xs: set = set()
    for s in segments:
        lo, hi = _seg_span(s)
        xs.add(lo)
        xs.add(hi)
    for i, a in enumerate(segments):
        for b in segments[i + 1 :]:
            xc = _line_crossing_x(a, b)
            if xc is None:
                continue
            (lo1, hi1), (lo2, hi2) = _seg_span(a), _seg_span(b)
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if lo <= xc <= hi:
                xs.add(xc)
    cuts = sorted(xs)
    pieces: list = []
    for (lo, hi) in zip(cuts, cuts[1:]):
        mid = (lo + hi) / 2
        best, best_y = None, None
        for s in segments:
            slo, shi = _seg_span(s)
            if slo <= mid <= shi:
                y = s.y_at(mid)
                if best_y is None or y < best_y or (
                    y == best_y
                    and (str(s.id.__class__.__name__), str(s.id))
                    < (str(best.__class__.__name__), str(best))
                ):
                    best, best_y = s.id, y
        if best is None:
            continue
        if pieces and pieces[-1][2] == best and pieces[-1][1] == lo:
            pieces[-1] = (pieces[-1][0], hi, best)
        else:
            pieces.append((lo, hi, best))
    return Envelope(pieces, segs)


# ---------------------------------------------------------------------------
# Face data and the single-face merge


@dataclass(frozen=True)
class FaceData:
    """Comparable snapshot of one face: geometry-level, id-free."""

    vertex_set: frozenset  # of (x, y) pairs
    edge_sides: int
    vertices: int
    components: int

    @property
    def complexity(self) -> int:
        return self.edge_sides + self.vertices


def face_data(arr: Arrangement, face_id: int) -> FaceData:
    cycles = arr.boundary_cycles(face_id)
    vs = set()
    edge_sides = 0
    for cyc in cycles:
        edge_sides += len(cyc)
        for h in cyc:
            p = arr.vertices[h.origin]
            vs.add((p.x, p.y))
    return FaceData(frozenset(vs), edge_sides, edge_sides, len(cycles))


def boundary_segment_ids(arr: Arrangement, face_id: int) -> set:
    """Ids of segments owning at least one boundary edge of the face."""
    ids: set = set()
    for cyc in arr.boundary_cycles(face_id):
        for h in cyc:
            ids |= set(arr.edges[h.edge].owners)
    return ids


def _face_of_point(arr: Arrangement, p: Point) -> int:
    loc = arr.locate(p)
    if loc.kind != "face":
        raise InputError(f"query point {p} lies on the arrangement")
    return loc.index


def single_face_oracle(inst: MarkedInstance, p: Point) -> FaceData:
    """Ground truth: build the whole union arrangement and read the face."""
    arr = build(inst.all_segments())
    return face_data(arr, _face_of_point(arr, p))


@dataclass
class MergeReport:
    face: FaceData
    per_level_complexity: list  # total face complexity at each merge level
    final_segments: list  # contributing segments of the last merge


def single_face_overlay(inst: MarkedInstance, p: Point) -> MergeReport:
    """Face containing p in the overlay, by balanced binary merging.

    Each merge keeps only the segments contributing to the boundary of the
    current marked face of its two children, builds their arrangement, and
    extracts the face containing p again.
    """
    if p not in inst.points:
        raise InputError("p must be one of the instance's marking points")

    def restricted(segs: Sequence[Segment]) -> tuple[list, FaceData]:
        arr = build(list(segs))
        fid = _face_of_point(arr, p)
        keep = boundary_segment_ids(arr, fid)
        return [s for s in segs if s.id in keep], face_data(arr, fid)

    level: list[list[Segment]] = []
    level_complexities: list[int] = []
    fd: Optional[FaceData] = None
    total = 0
    for col in inst.collections:
        kept, fd = restricted(col)
        level.append(kept)
        total += fd.complexity
    level_complexities.append(total)

    while len(level) > 1:
        nxt: list[list[Segment]] = []
        total = 0
        for i in range(0, len(level) - 1, 2):
            kept, fd = restricted(level[i] + level[i + 1])
            nxt.append(kept)
            total += fd.complexity
        if len(level) % 2:
            arrlast = build(level[-1])
            total += face_data(arrlast, _face_of_point(arrlast, p)).complexity
            nxt.append(level[-1])
        level = nxt
        level_complexities.append(total)

    final_segs = level[0]
    arr = build(final_segs)
    fd = face_data(arr, _face_of_point(arr, p))
    return MergeReport(fd, level_complexities, final_segs)


# ---------------------------------------------------------------------------
# Marked faces, refinement and the splitting number


@dataclass
class MarkedComplexity:
    per_point_union: dict  # marking point index -> face complexity in union
    union_face_ids: dict  # marking point index -> face id in union
    union_total: int  # sum over DISTINCT marked union faces
    per_collection: list  # C_i over distinct marked faces of A(Gamma_i)
    total: int  # C = sum C_i


def marked_faces_complexity(inst: MarkedInstance) -> MarkedComplexity:
    union_arr = build(inst.all_segments())
    per_point: dict = {}
    union_face_ids: dict = {}
    distinct: dict = {}
    for i, p in enumerate(inst.points):
        fid = _face_of_point(union_arr, p)
        fd = face_data(union_arr, fid)
        per_point[i] = fd.complexity
        union_face_ids[i] = fid
        distinct[fid] = fd.complexity
    union_total = sum(distinct.values())

    per_collection = []
    for col in inst.collections:
        arr = build(list(col))
        seen: dict = {}
        for p in inst.points:
            fid = _face_of_point(arr, p)
            if fid not in seen:
                seen[fid] = face_data(arr, fid).complexity
        per_collection.append(sum(seen.values()))
    return MarkedComplexity(
        per_point_union=per_point,
        union_face_ids=union_face_ids,
        union_total=union_total,
        per_collection=per_collection,
        total=sum(per_collection),
    )


@dataclass
class Refinement:
    """Per-collection refinement pieces and split counts."""

    pieces: list  # per collection: list of (seg id, t0, t1) param intervals
    split_counts: list  # L_i per collection
    boundary_intervals: list  # per collection: the pre-split intervals
    L: int = 0

    def sizes(self) -> list[int]:
        return [len(p) for p in self.pieces]


def _param_of(seg: Segment, p: Point) -> Fraction:
    dx, dy = seg.direction
    if dx != 0:
        return (p.x - seg.source.x) / dx
    return (p.y - seg.source.y) / dy


def refine(inst: MarkedInstance) -> Refinement:
    """Split marked-face boundary arcs of each collection's arrangement.

    Candidate splits come from two event kinds along each marked-face walk:
    entering the boundary of a marked overlay face different from the last
    one encountered, and reaching an own-arrangement vertex interior to a
    boundary arc.  The split count L_i is the number of cut points that land
    strictly inside the assembled boundary intervals.
    """
    union_arr = build(inst.all_segments())
    marked_union: set = set()
    for p in inst.points:
        marked_union.add(_face_of_point(union_arr, p))

    all_pieces = []
    all_counts = []
    all_base = []
    for col in inst.collections:
        segs_by_id = {s.id: s for s in col}
        arr = build(list(col))
        marked_faces: set = set()
        for p in inst.points:
            marked_faces.add(_face_of_point(arr, p))

        base_intervals: list = []  # (sid, t0, t1) per boundary half-edge
        candidate_cuts: set = set()  # (sid, t)

        for fid in sorted(marked_faces):
            for cyc in arr.boundary_cycles(fid):
                labels = []  # (owner, entry param, marked face or None)
                for h in cyc:
                    e = arr.edges[h.edge]
                    owner = e.canonical_owner
                    seg = segs_by_id[owner]
                    a = arr.vertices[h.origin]
                    b = arr.vertices[h.twin.origin]
                    t0, t1 = _param_of(seg, a), _param_of(seg, b)
                    base_intervals.append((owner, min(t0, t1), max(t0, t1)))
                    for (entry, face) in _overlay_labels(union_arr, h, arr):
                        labels.append((owner, entry, face if face in marked_union else None))
                # entering a marked overlay face different from the last one
                last_marked = None
                for (_o, _t, face) in reversed(labels):
                    if face is not None:
                        last_marked = face
                        break
                for (owner, entry, face) in labels:
                    if face is None:
                        continue
                    if face != last_marked:
                        candidate_cuts.add((owner, entry))
                        last_marked = face

        merged = _merge_intervals(base_intervals)

        # own-arrangement vertices interior to a boundary interval
        for (sid, lo, hi) in merged:
            seg = segs_by_id[sid]
            for vi, pt in enumerate(arr.vertices):
                if pt == seg.source or pt == seg.target:
                    continue
                if point_on_segment(pt, seg):
                    t = _param_of(seg, pt)
                    if lo < t < hi:
                        candidate_cuts.add((sid, t))

        interval_by_seg: dict = {}
        for (sid, lo, hi) in merged:
            interval_by_seg.setdefault(sid, []).append((lo, hi))
        effective: dict = {}
        for (sid, t) in candidate_cuts:
            for (lo, hi) in interval_by_seg.get(sid, ()):
                if lo < t < hi:
                    effective.setdefault(sid, set()).add(t)
                    break

        pieces = []
        for (sid, lo, hi) in merged:
            cuts = sorted(t for t in effective.get(sid, ()) if lo < t < hi)
            prev = lo
            for c in cuts:
                pieces.append((sid, prev, c))
                prev = c
            pieces.append((sid, prev, hi))
        all_pieces.append(pieces)
        all_counts.append(sum(len(v) for v in effective.values()))
        all_base.append(merged)

    return Refinement(
        pieces=all_pieces,
        split_counts=all_counts,
        boundary_intervals=all_base,
        L=sum(all_counts),
    )


def _overlay_labels(union_arr: Arrangement, h, arr: Arrangement) -> list:
    """Overlay-face labels of the union pieces of a collection edge.

    Returns (entry parameter along the walk direction, union face id) per
    union sub-edge of h, ordered along the walk; the face is the one on the
    walk's left (the side of the face being traversed).
    """
    e = arr.edges[h.edge]
    owner = e.canonical_owner
    seg = arr.segments_by_id[owner]
    a = arr.vertices[h.origin]
    b = arr.vertices[h.twin.origin]
    t0, t1 = _param_of(seg, a), _param_of(seg, b)
    walk_sign = 1 if t1 > t0 else -1

    chain = union_arr.segment_index[owner]
    out = []
    for uh in chain:
        ue = union_arr.edges[uh.edge]
        ua, ub = union_arr.vertices[ue.u], union_arr.vertices[ue.v]
        s0, s1 = _param_of(seg, ua), _param_of(seg, ub)
        lo, hi = min(s0, s1), max(s0, s1)
        if hi <= min(t0, t1) or lo >= max(t0, t1):
            continue
        # pick the union half-edge pointing the walk's way; its left face is
        # the face the walk is tracing
        forward_along_owner = ue.owners[owner]
        piece_h = ue.half_uv if forward_along_owner else ue.half_vu
        if walk_sign < 0:
            piece_h = piece_h.twin
        fid = union_arr.face_of_halfedge(piece_h)
        entry = lo if walk_sign > 0 else hi
        out.append((entry, fid))
    out.sort(key=lambda pair: pair[0] * walk_sign)
    return out


def _merge_intervals(intervals: list) -> list:
    by_seg: dict = {}
    for (sid, lo, hi) in intervals:
        by_seg.setdefault(sid, []).append((lo, hi))
    out = []
    for sid in sorted(by_seg, key=lambda s: (s.__class__.__name__, str(s))):
        ivs = sorted(by_seg[sid])
        cur_lo, cur_hi = ivs[0]
        for (lo, hi) in ivs[1:]:
            if lo <= cur_hi:
                cur_hi = max(cur_hi, hi)
            else:
                out.append((sid, cur_lo, cur_hi))
                cur_lo, cur_hi = lo, hi
        out.append((sid, cur_lo, cur_hi))
    return out


# ---------------------------------------------------------------------------
# Coloring


def intersecting_pairs(segments: Sequence[Segment]) -> list[tuple]:
    out = []
    segments = list(segments)
    for i in range(len(segments)):
        for j in range(i + 1, len(segments)):
            if intersect(segments[i], segments[j]) != EMPTY:
                out.append((segments[i].id, segments[j].id))
    return out


def smallest_last_coloring(segments: Sequence[Segment]) -> dict:
    """Greedy coloring of the intersection graph in smallest-last order."""
    segments = list(segments)
    ids = [s.id for s in segments]
    adj: dict = {i: set() for i in ids}
    for (a, b) in intersecting_pairs(segments):
        adj[a].add(b)
        adj[b].add(a)

    deg = {v: len(adj[v]) for v in ids}
    alive = set(ids)
    order = []
    for _ in range(len(ids)):
        v = min(alive, key=lambda u: (deg[u], str(u)))
        order.append(v)
        alive.discard(v)
        for w in adj[v]:
            if w in alive:
                deg[w] -= 1
    order.reverse()

    color: dict = {}
    for v in order:
        used = {color[w] for w in adj[v] if w in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color


def coloring_upper_bound(num_intersecting_pairs: int) -> int:
    """ceil((1 + sqrt(1 + 8 w')) / 2), computed exactly."""
    disc = 1 + 8 * num_intersecting_pairs
    r = math.isqrt(disc)
    # smallest integer b with 2b - 1 >= sqrt(disc)  <=>  (2b-1)^2 >= disc
    b = (r + 1) // 2 + 1
    while (2 * (b - 1) - 1) ** 2 >= disc and b > 1:
        b -= 1
    return b


def color_classes(coloring: dict) -> list[list]:
    by_color: dict = {}
    for sid, c in coloring.items():
        by_color.setdefault(c, []).append(sid)
    return [sorted(by_color[c], key=str) for c in sorted(by_color)]
