"""Scenario runner: measure every quantity the bound formulas consume.

Each trial generates an instance, measures arrangement and overlay
quantities (C, L, w, face complexities, decomposition statistics, coloring
size), evaluates the matching bound formulas with the surrogate
lambda3(x) = x * alpha(x), and reports measured/bound margins.  Asymptotic
checks freeze their constant on a small calibration sweep and then assert
the same constant on larger instances.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import arrangement as arrmod
from .arrangement import Arrangement, Trapezoid, build
from .dsseq import inverse_ackermann, is_ds, lambda3_hat
from .boundary import linearize
from .generators import Scenario, generate, scenario
from .geom import EMPTY, Point, Segment, format_rat, intersect
from .overlay import (
    MarkedInstance,
    face_data,
    intersecting_pairs,
    lower_envelope,
    marked_faces_complexity,
    refine,
    single_face_oracle,
    single_face_overlay,
    smallest_last_coloring,
    coloring_upper_bound,
)


class InvariantViolation(AssertionError):
    """A measured quantity contradicted an exact identity or inequality."""


# ---------------------------------------------------------------------------
# Clarkson-Shor sampling


@dataclass
class SampleTrial:
    r: int
    tau: int
    sum_ni: int
    sum_ni_choose2: int
    sum_mi: int
    sampled_pairs: int
    sum_sqrt_mi_ni: float


def segment_meets_trapezoid(arr: Arrangement, t: Trapezoid, s: Segment) -> bool:
    """Exact intersection test of a segment with a closed trapezoid."""
    lo_x = t.left
    hi_x = t.right
    sx, tx_ = s.source.x, s.target.x
    seg_lo, seg_hi = min(sx, tx_), max(sx, tx_)
    clip_lo = seg_lo if lo_x is None else max(seg_lo, lo_x)
    clip_hi = seg_hi if hi_x is None else min(seg_hi, hi_x)
    if clip_lo > clip_hi:
        return False
    if s.is_vertical():
        p1 = s.source
        p2 = s.target
    else:
        p1 = Point(clip_lo, s.y_at(clip_lo))
        p2 = Point(clip_hi, s.y_at(clip_hi))

    def classify(p: Point) -> int:
        if t.top_edge is not None:
            e = arr.edges[t.top_edge]
            a, b = arr.vertices[e.u], arr.vertices[e.v]
            side = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
            if (side > 0) if a.x < b.x else (side < 0):
                return 1  # strictly above the top edge line
        if t.bottom_edge is not None:
            e = arr.edges[t.bottom_edge]
            a, b = arr.vertices[e.u], arr.vertices[e.v]
            side = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
            if (side < 0) if a.x < b.x else (side > 0):
                return -1  # strictly below the bottom edge line
        return 0

    c1, c2 = classify(p1), classify(p2)
    return c1 == 0 or c2 == 0 or c1 != c2


def clarkson_shor_trial(
    segments: Sequence[Segment],
    r: int,
    seed: int,
    points: Sequence[Point] = (),
) -> SampleTrial:
    """One random-sample decomposition trial.

    Draws r of the n segments uniformly without replacement, decomposes
    their arrangement into trapezoids, and counts per-trapezoid segment
    conflicts and contained marking points, plus the number of intersecting
    pairs that survived into the sample.
    """
    segments = list(segments)
    n = len(segments)
    if not (1 <= r <= n):
        raise arrmod.InputError(f"need 1 <= r <= {n}, got r={r}")
    rng = random.Random(seed)
    sample = rng.sample(segments, r)
    arr = build(sample)
    traps = arr.vertical_decomposition()
    nis = []
    mis = []
    for t in traps:
        ni = sum(1 for s in segments if segment_meets_trapezoid(arr, t, s))
        mi = sum(1 for p in points if arr.trapezoid_of(t, p))
        nis.append(ni)
        mis.append(mi)
    sampled_pairs = len(intersecting_pairs(sample))
    if sum(mis) != len(points):
        raise InvariantViolation(
            f"decomposition point counts sum to {sum(mis)}, expected {len(points)}"
        )
    return SampleTrial(
        r=r,
        tau=len(traps),
        sum_ni=sum(nis),
        sum_ni_choose2=sum(v * (v - 1) // 2 for v in nis),
        sum_mi=sum(mis),
        sampled_pairs=sampled_pairs,
        sum_sqrt_mi_ni=float(sum(math.sqrt(m) * v for m, v in zip(mis, nis))),
    )


def pair_sampling_expectation(w_pairs: int, r: int, n: int) -> float:
    if n < 2:
        return 0.0
    return w_pairs * r * (r - 1) / (n * (n - 1))


# ---------------------------------------------------------------------------
# Reports


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rat(x)
    if isinstance(x, Point):
        return [format_rat(x.x), format_rat(x.y)]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, float):
        return round(x, 12)
    return x


@dataclass
class Report:
    schema: int
    scenario: dict
    trial: int
    seed: int
    measured: dict
    bounds: dict
    margins: dict
    ok: bool
    error: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "scenario": _jsonable(self.scenario),
            "trial": self.trial,
            "seed": self.seed,
            "measured": _jsonable(self.measured),
            "bounds": _jsonable(self.bounds),
            "margins": _jsonable(self.margins),
            "ok": self.ok,
            "error": self.error,
        }


def _measure_common(inst: MarkedInstance) -> tuple[dict, Arrangement]:
    segs = inst.all_segments()
    arr = build(segs)
    mc = marked_faces_complexity(inst)
    ref = refine(inst)
    coloring = smallest_last_coloring(segs)
    pairs = intersecting_pairs(segs)
    measured = {
        "n": inst.n,
        "t": inst.t,
        "k": inst.k,
        "m": len({mc.union_face_ids[i] for i in range(inst.k)}),
        "w": arr.total_complexity(),
        "intersecting_pairs": len(pairs),
        "C": mc.total,
        "C_union": mc.union_total,
        "per_point_face_complexity": [mc.per_point_union[i] for i in range(inst.k)],
        "L": ref.L,
        "L_i": ref.split_counts,
        "G_i": ref.sizes(),
        "coloring_size": len(set(coloring.values())) if coloring else 0,
    }
    if not (ref.L <= 2 * inst.k * inst.t + 2 * mc.total):
        raise InvariantViolation("splitting number exceeded 2kt + 2C")
    for (gi, li, ci) in zip(ref.sizes(), ref.split_counts, mc.per_collection):
        if not (gi <= 2 * li + 2 * ci):
            raise InvariantViolation("refinement size exceeded 2L_i + 2C_i")
    cub = coloring_upper_bound(len(pairs))
    if measured["coloring_size"] > cub:
        raise InvariantViolation("coloring size exceeded the square-root bound")
    return measured, arr


def run_trial(sc: Scenario, trial: int, seed: int) -> Report:
    derived = (seed * 1_000_003 + trial) & 0x7FFFFFFF
    sc = Scenario(sc.kind, sc.parameters, derived)
    scenario_desc = {"kind": sc.kind, "parameters": dict(sc.parameters), "seed": derived}
    try:
        inst = generate(sc)
        measured, arr = _measure_common(inst)
        bounds: dict = {}
        margins: dict = {}

        lam_t = lambda3_hat(inst.t)
        lam_n = lambda3_hat(inst.n)
        if inst.t >= 1:
            bounds["single_face_combination_raw"] = (
                measured["C"] * lam_t / max(inst.t, 1)
            )
            if bounds["single_face_combination_raw"]:
                margins["single_face_combination"] = (
                    measured["per_point_face_complexity"][0]
                    / bounds["single_face_combination_raw"]
                )
        bounds["many_faces_raw"] = math.sqrt(max(measured["m"], 1)) * lam_n
        margins["many_faces"] = measured["C_union"] / bounds["many_faces_raw"]

        if sc.kind == "shifted_copies":
            base = [col[0] for col in inst.collections]
            env = lower_envelope(base)
            b0 = len(env.breakpoints())
            m_copies = sc.param("m", 4)
            measured["base_envelope_breakpoints"] = b0
            measured["lower_bound_floor"] = m_copies * b0
            if measured["per_point_face_complexity"][0] < m_copies * b0:
                raise InvariantViolation(
                    "shifted-copies face complexity fell below the periodic floor"
                )
        if sc.kind in ("stabber", "chords_long"):
            bounds["linear_raw"] = inst.n
            margins["linear"] = measured["per_point_face_complexity"][0] / inst.n

        # decomposition statistics at the sampling parameter r = ceil(n^2/w)
        if inst.n >= 1:
            r = max(1, min(inst.n, -(-inst.n * inst.n // measured["w"])))
            st = clarkson_shor_trial(inst.all_segments(), r, derived ^ 0xA5A5, inst.points)
            measured["sample_r"] = st.r
            measured["tau"] = st.tau
            measured["sum_ni"] = st.sum_ni
            measured["sum_ni_choose2"] = st.sum_ni_choose2
            measured["sum_mi"] = st.sum_mi
            measured["sampled_pairs"] = st.sampled_pairs
            measured["sum_sqrt_mi_ni"] = st.sum_sqrt_mi_ni

        # boundary sequences of the marked faces stay DS of order 3
        seen_faces = set()
        for i in range(inst.k):
            loc = arr.locate(inst.points[i])
            if loc.index in seen_faces:
                continue
            seen_faces.add(loc.index)
            for s in linearize(arr, loc.index):
                if is_ds(s, 3) != "valid":
                    raise InvariantViolation("boundary sequence is not DS of order 3")

        return Report(1, scenario_desc, trial, derived, measured, bounds, margins, True)
    except InvariantViolation as exc:
        raise
    except Exception as exc:  # scenario failure isolates the trial
        return Report(1, scenario_desc, trial, derived, {}, {}, {}, False, f"{exc}")


def default_suite() -> list[Scenario]:
    return [
        scenario("shifted_copies", t=2, m=4, width=8),
        scenario("shifted_copies", t=3, m=3, width=8),
        scenario("grid", h=3, v=4),
        scenario("random", n=10, t=2, k=2, box=20, length=8),
        scenario("stabber", n=8),
        scenario("chords_long", n=8, radius=10, c=1),
        scenario("polygons", k=2, sides=4),
        scenario("minkowski", sides=3, obstacles=2),
    ]


SUITES = {"default": default_suite}


def run(scenarios: Sequence[Scenario], trials: int, seed: int) -> list[Report]:
    """One report per (scenario, trial), in deterministic order."""
    reports = []
    for sc in scenarios:
        for trial in range(trials):
            reports.append(run_trial(sc, trial, seed))
    return reports


def reports_json(reports: Sequence[Report], suite: str, trials: int, seed: int) -> str:
    doc = {
        "schema": 1,
        "suite": suite,
        "trials": trials,
        "seed": seed,
        "reports": [r.to_dict() for r in reports],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Frozen-constant regression


@dataclass
class FrozenConstant:
    constant: float
    calibration: list  # (label, measured, raw_bound)
    evaluation: list  # (label, measured, raw_bound, margin)
    ok: bool


def frozen_constant_check(calibration: list, evaluation: list) -> FrozenConstant:
    """Freeze c = max measured/raw on the calibration set, then demand
    measured <= c * raw on the evaluation set."""
    if not calibration:
        raise ValueError("empty calibration set")
    c = max(meas / raw for (_lbl, meas, raw) in calibration)
    evaluated = []
    ok = True
    for (lbl, meas, raw) in evaluation:
        margin = meas / (c * raw) if c * raw else math.inf
        evaluated.append((lbl, meas, raw, margin))
        if margin > 1.0 + 1e-12:
            ok = False
    return FrozenConstant(c, list(calibration), evaluated, ok)
