"""Text formats: segment files, pin files, instance sidecar JSON.

Segment files carry one segment per line as four rationals
``x1 y1 x2 y2`` (each an integer or ``p/q``); ``#`` starts a comment.
Instance sidecars are JSON documents listing collections (by segment id),
marking points, and scenario metadata.
"""

from __future__ import annotations

import json
from typing import Iterable, TextIO

from .arrangement import InputError
from .geom import Point, Segment, format_rat, rat
from .overlay import MarkedInstance, marked_instance


def parse_segments(text: str, id_prefix: str = "s") -> list[Segment]:
    segs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 4:
            raise InputError(
                f"line {lineno}: expected 4 rationals 'x1 y1 x2 y2', got {len(fields)} fields"
            )
        try:
            x1, y1, x2, y2 = (rat(f) for f in fields)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"line {lineno}: bad rational ({exc})") from exc
        segs.append(Segment(f"{id_prefix}{len(segs)}", Point(x1, y1), Point(x2, y2)))
    return segs


def read_segments(path: str, id_prefix: str = "s") -> list[Segment]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_segments(fh.read(), id_prefix)


def format_segments(segments: Iterable[Segment], header: str = "") -> str:
    lines = []
    if header:
        for h in header.splitlines():
            lines.append(f"# {h}")
    for s in segments:
        lines.append(
            " ".join(
                format_rat(v)
                for v in (s.source.x, s.source.y, s.target.x, s.target.y)
            )
            + f"  # {s.id}"
        )
    return "\n".join(lines) + "\n"


def write_segments(path: str, segments: Iterable[Segment], header: str = "") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_segments(segments, header))


def parse_points(text: str) -> list[Point]:
    pts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise InputError(f"line {lineno}: expected 'x y'")
        pts.append(Point(rat(fields[0]), rat(fields[1])))
    return pts


def read_points(path: str) -> list[Point]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_points(fh.read())


def point_json(p: Point) -> list:
    return [format_rat(p.x), format_rat(p.y)]


def instance_sidecar(inst: MarkedInstance, metadata: dict = None) -> dict:
    return {
        "schema": 1,
        "collections": [[str(s.id) for s in col] for col in inst.collections],
        "points": [point_json(p) for p in inst.points],
        "metadata": metadata or {},
    }


def write_instance(prefix: str, inst: MarkedInstance, metadata: dict = None) -> None:
    write_segments(f"{prefix}.seg", inst.all_segments())
    with open(f"{prefix}.json", "w", encoding="utf-8") as fh:
        json.dump(instance_sidecar(inst, metadata), fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_instance(prefix: str) -> MarkedInstance:
    segs = read_segments(f"{prefix}.seg")
    with open(f"{prefix}.json", "r", encoding="utf-8") as fh:
        side = json.load(fh)
    by_id = {str(s.id): s for s in segs}
    # Sidecar ids may differ from the positional ids assigned by the reader;
    # fall back to positional grouping when they do.
    cols = []
    idx = 0
    for group in side["collections"]:
        if all(g in by_id for g in group):
            cols.append([by_id[g] for g in group])
        else:
            cols.append(segs[idx : idx + len(group)])
        idx += len(group)
    points = [Point(rat(x), rat(y)) for (x, y) in side["points"]]
    return marked_instance(cols, points)
