"""Face boundary symbol sequences.

Walking a face boundary with the face to the left yields, per boundary
component, a circular sequence of oriented segment symbols (forward when
the walk agrees with the segment's source->target orientation).  Runs where
the walk continues along the same segment in the same direction collapse to
a single appearance.  Linearization cuts each circular sequence at a
deterministic start and retags symbols whose appearance block wraps around
the cut, after which each component sequence is a Davenport-Schinzel
sequence of order 3 over at most four symbols per underlying segment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arrangement import Arrangement, HalfEdge
from .dsseq import SymbolSequence

FORWARD = "+"
BACKWARD = "-"


@dataclass(frozen=True)
class OrientedSymbol:
    segment: object  # segment id
    direction: str  # "+" (source->target) or "-"
    split_tag: int = 0  # 0 none, 1 first part, 2 second part

    def token(self) -> str:
        base = f"{self.segment}{self.direction}"
        if self.split_tag:
            return f"{base}:{self.split_tag}"
        return base

    def untagged(self) -> "OrientedSymbol":
        if self.split_tag == 0:
            return self
        return OrientedSymbol(self.segment, self.direction, 0)


class ConsistencyError(AssertionError):
    """A face walk violated the circular-order consistency of an arc.

    This indicates a bug in the arrangement layer, not bad input.
    """


def _halfedge_symbol(arr: Arrangement, h: HalfEdge) -> OrientedSymbol:
    e = arr.edges[h.edge]
    owner = e.canonical_owner
    forward_along_edge = h is e.half_uv
    owner_forward = e.owners[owner]
    same = forward_along_edge == owner_forward
    return OrientedSymbol(owner, FORWARD if same else BACKWARD)


def _halfedge_param(arr: Arrangement, h: HalfEdge) -> Fraction:
    """Midpoint parameter of h along its canonical owner's orientation."""
    e = arr.edges[h.edge]
    owner = arr.segments_by_id[e.canonical_owner]
    a = arr.vertices[e.u]
    b = arr.vertices[e.v]
    mx, my = (a.x + b.x) / 2, (a.y + b.y) / 2
    dx, dy = owner.direction
    if dx != 0:
        return (mx - owner.source.x) / dx
    return (my - owner.source.y) / dy


@dataclass
class BoundaryRun:
    """One appearance of an oriented symbol along a component walk."""

    symbol: OrientedSymbol
    halfedges: list
    param_start: Fraction  # along the owner, in traversal direction


def _component_runs(arr: Arrangement, cycle: list) -> list[BoundaryRun]:
    raw = [( _halfedge_symbol(arr, h), h) for h in cycle]
    runs: list[BoundaryRun] = []
    for sym, h in raw:
        if runs and runs[-1].symbol == sym:
            runs[-1].halfedges.append(h)
        else:
            runs.append(BoundaryRun(sym, [h], Fraction(0)))
    # cyclic merge of the wrap-around run
    if len(runs) > 1 and runs[0].symbol == runs[-1].symbol:
        runs[-1].halfedges.extend(runs[0].halfedges)
        runs[0] = runs.pop()
    for r in runs:
        params = [_halfedge_param(arr, h) for h in r.halfedges]
        r.param_start = min(params)
    return runs


def boundary_symbol_sequence(arr: Arrangement, face_id: int) -> list[SymbolSequence]:
    """Circular oriented-symbol sequences, one per boundary component."""
    out = []
    for cycle in arr.boundary_cycles(face_id):
        runs = _rotated_runs(arr, cycle)
        out.append(SymbolSequence(tuple(r.symbol for r in runs), circular=True))
    return out


def _start_key(arr: Arrangement, r: BoundaryRun):
    h = r.halfedges[0]
    p = arr.vertices[h.origin]
    return (p.x, p.y, r.symbol.__class__.__name__, str(r.symbol.segment), r.symbol.direction)


def _rotated_runs(arr: Arrangement, cycle: list) -> list[BoundaryRun]:
    runs = _component_runs(arr, cycle)
    if not runs:
        return runs
    start = min(range(len(runs)), key=lambda i: _start_key(arr, runs[i]))
    return runs[start:] + runs[:start]


def linearize(arr: Arrangement, face_id: int) -> list[SymbolSequence]:
    """Cut each circular component sequence and split wrapped symbols.

    For every oriented symbol, its appearances occur along the walk in an
    order that is a circular rotation of their order along the segment (the
    consistency property); when that rotation wraps past the cut point the
    appearances from the along-segment start keep tag 1 and the rest get
    tag 2, so each tagged symbol's appearances are contiguous in the linear
    sequence the way an unwrapped symbol's would be.
    """
    out = []
    for cycle in arr.boundary_cycles(face_id):
        runs = _rotated_runs(arr, cycle)
        occ: dict = {}
        for idx, r in enumerate(runs):
            occ.setdefault(r.symbol, []).append(idx)

        tags: dict = {}
        for sym, positions in occ.items():
            order = sorted(positions, key=lambda i: runs[i].param_start)
            if sym.direction == BACKWARD:
                order.reverse()
            check_circular_consistency(order, positions, sym)
            alpha = order[0]
            beta = order[-1]
            if alpha <= beta:
                continue
            for i, pos in enumerate(positions):
                tags[(sym, pos)] = 1 if pos >= alpha else 2
        tagged = []
        for idx, r in enumerate(runs):
            tag = tags.get((r.symbol, idx), 0)
            tagged.append(OrientedSymbol(r.symbol.segment, r.symbol.direction, tag))
        out.append(SymbolSequence(tuple(tagged), circular=False))
    return out


def check_circular_consistency(order: list[int], positions: list[int], sym) -> None:
    """Positions read in along-segment order must be a rotation of sorted."""
    n = len(order)
    if n <= 1:
        return
    descents = sum(1 for i in range(n) if order[i] > order[(i + 1) % n])
    if descents != 1:
        raise ConsistencyError(
            f"appearances of {sym} along the walk are not circularly "
            f"consistent with their order along the segment: {order}"
        )


def face_consistency_report(arr: Arrangement, face_id: int) -> bool:
    """True when every oriented symbol on every component is consistent."""
    linearize(arr, face_id)  # raises ConsistencyError on violation
    return True


def sequence_tokens(s: SymbolSequence) -> list[str]:
    return [sym.token() for sym in s.elements]


def circular_equal(a: SymbolSequence, b: SymbolSequence) -> bool:
    """Equality of circular sequences up to rotation."""
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    ea, eb = list(a.elements), list(b.elements)
    doubled = ea + ea
    n = len(ea)
    return any(doubled[i : i + n] == eb for i in range(n))
