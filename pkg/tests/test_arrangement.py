import random
from fractions import Fraction

import pytest

from facelab import arrangement as arrmod
from facelab.arrangement import InputError, build, vertical_decomposition_slab_oracle
from facelab.geom import Point, Segment, point, point_on_segment, segment
from facelab.sweep import split_points_quadratic

from conftest import lattice_segment, off_segment_point, random_general_position_segments


def x_instance():
    return build([segment("A", 0, 0, 2, 2), segment("B", 0, 2, 2, 0)])


def square_instance():
    return build(
        [
            segment("s1", 0, 0, 1, 0),
            segment("s2", 1, 0, 1, 1),
            segment("s3", 1, 1, 0, 1),
            segment("s4", 0, 1, 0, 0),
        ]
    )


def test_build_x():
    arr = x_instance()
    assert (arr.num_vertices, arr.num_edges, arr.num_faces) == (5, 4, 1)
    assert arr.check_euler()


def test_build_square():
    arr = square_instance()
    assert (arr.num_vertices, arr.num_edges, arr.num_faces) == (4, 4, 2)


def test_duplicate_id_rejected():
    with pytest.raises(InputError):
        build([segment("a", 0, 0, 1, 0), segment("a", 0, 1, 1, 1)])


def test_build_random_vertex_count_matches_pairwise_oracle(rng):
    for trial in range(12):
        n = rng.randrange(20, 40)
        segs = [lattice_segment(rng, 30, 12, i) for i in range(n)]
        arr = build(segs)
        assert arr.check_euler(), trial
        splits = split_points_quadratic(segs)
        expected_vertices = set()
        for s in segs:
            expected_vertices.add((s.source.x, s.source.y))
            expected_vertices.add((s.target.x, s.target.y))
            for p in splits[s.id]:
                expected_vertices.add((p.x, p.y))
        assert {(p.x, p.y) for p in arr.vertices} == expected_vertices


def test_hundred_random_segments_euler():
    rng = random.Random(7)
    segs = [lattice_segment(rng, 60, 18, i) for i in range(100)]
    arr = build(segs)
    assert arr.check_euler()
    assert sum(arr.face_complexity(f.id)["edge_sides"] for f in arr.faces) == 2 * arr.num_edges


def test_locate_examples():
    sq = square_instance()
    inner = next(f.id for f in sq.faces if not f.is_unbounded)
    assert sq.locate(point("1/2", "1/2")) == arrmod.Location("face", inner)
    assert sq.locate(point(5, 5)).index == sq._unbounded_id
    x = x_instance()
    crossing = x.locate(point(1, 1))
    assert crossing.kind == "vertex"
    assert x.vertices[crossing.index] == point(1, 1)
    edge_loc = sq.locate(point("1/2", 0))
    assert edge_loc.kind == "edge"


def test_locate_agrees_with_ray_oracle(rng):
    for trial in range(6):
        segs = random_general_position_segments(rng, rng.randrange(5, 18), box=24)
        arr = build(segs)
        for _ in range(170):
            q = Point(
                Fraction(rng.randrange(-40, 90), 7),
                Fraction(rng.randrange(-40, 90), 11),
            )
            assert arr.locate(q) == arr.locate_by_ray(q, rng)


def test_face_complexity_examples():
    sq = square_instance()
    inner = next(f.id for f in sq.faces if not f.is_unbounded)
    assert sq.face_complexity(inner) == {
        "edge_sides": 4,
        "vertices": 4,
        "components": 1,
    }
    one = build([segment("A", 0, 0, 2, 2)])
    assert one.face_complexity(0) == {
        "edge_sides": 2,
        "vertices": 2,
        "components": 1,
    }


def test_total_complexity_examples():
    assert square_instance().total_complexity() == 10
    assert x_instance().total_complexity() == 10
    segs = [segment(i, 0, 3 * i, 1, 3 * i) for i in range(5)]
    assert build(segs).total_complexity() == 3 * 5 + 1


def test_boundary_cycles_examples():
    sq = square_instance()
    inner = next(f.id for f in sq.faces if not f.is_unbounded)
    cycles = sq.boundary_cycles(inner)
    assert len(cycles) == 1 and len(cycles[0]) == 4
    outer = sq.boundary_cycles(sq._unbounded_id)
    assert len(outer) == 1 and len(outer[0]) == 4
    # annulus: square inside a larger square -> 2 boundary components
    big = [segment(f"b{i}", *c) for i, c in enumerate(
        [(0, 0, 10, 0), (10, 0, 10, 10), (10, 10, 0, 10), (0, 10, 0, 0)])]
    small = [segment(f"t{i}", *c) for i, c in enumerate(
        [(3, 3, 6, 3), (6, 3, 6, 6), (6, 6, 3, 6), (3, 6, 3, 3)])]
    ann = build(big + small)
    ring = ann.locate(point(1, 1)).index
    assert len(ann.boundary_cycles(ring)) == 2


def test_cycles_keep_face_left():
    # every bounded face's outer cycle winds counterclockwise
    sq = square_instance()
    for f in sq.faces:
        if f.outer_component is None:
            continue
        cyc = sq.cycles[f.outer_component]
        area2 = Fraction(0)
        for h in cyc:
            a = sq.vertices[h.origin]
            b = sq.vertices[h.twin.origin]
            area2 += a.x * b.y - a.y * b.x
        assert area2 > 0


def test_vertical_decomposition_examples():
    one = build([segment("A", 0, 0, 2, 1)])
    traps = one.vertical_decomposition()
    assert len(traps) == 4
    sq = square_instance()
    assert len(sq.vertical_decomposition()) == vertical_decomposition_slab_oracle(sq)
    empty = build([])
    td = empty.vertical_decomposition()
    assert len(td) == 1
    assert td[0].left is None and td[0].right is None


def test_vertical_decomposition_matches_slab_oracle(rng):
    for trial in range(15):
        segs = [lattice_segment(rng, 16, 8, i) for i in range(rng.randrange(1, 12))]
        arr = build(segs)
        assert len(arr.vertical_decomposition()) == vertical_decomposition_slab_oracle(arr), trial


def test_point_in_exactly_one_trapezoid(rng):
    for trial in range(8):
        segs = [lattice_segment(rng, 10, 6, i) for i in range(rng.randrange(1, 9))]
        arr = build(segs)
        traps = arr.vertical_decomposition()
        for _ in range(40):
            q = off_segment_point(rng, segs, box=10)
            i = arr.locate_trapezoid(traps, q)  # raises unless exactly one
            assert traps[i].containing_face == arr.locate(q).index


def test_overlap_segments_share_edges():
    arr = build([segment("a", 0, 0, 2, 0), segment("b", 1, 0, 3, 0)])
    assert arr.num_vertices == 4
    assert arr.num_edges == 3
    shared = [e for e in arr.edges if len(e.owners) == 2]
    assert len(shared) == 1
    u, v = arr.vertices[shared[0].u], arr.vertices[shared[0].v]
    assert {u, v} == {point(1, 0), point(2, 0)}


def test_build_methods_agree(rng):
    for trial in range(10):
        segs = [lattice_segment(rng, 12, 8, i) for i in range(rng.randrange(2, 12))]
        a1 = build(segs, method="sweep")
        a2 = build(segs, method="quadratic")
        assert {(p.x, p.y) for p in a1.vertices} == {(p.x, p.y) for p in a2.vertices}
        assert (a1.num_edges, a1.num_faces) == (a2.num_edges, a2.num_faces)
