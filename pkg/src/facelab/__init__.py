"""facelab: exact segment arrangements and a face-complexity laboratory.

Core layers, bottom up:

``geom``
    Exact rational points, oriented segments, and predicates.
``sweep`` / ``arrangement``
    Subdivision points (plane sweep with a quadratic oracle) and the
    doubly-connected edge list: faces, point location, vertical
    decomposition.
``dsseq``
    Davenport-Schinzel sequence algebra: validation, restriction, active
    profiles, exhaustive maxima, block decomposition, greedy partition,
    inverse Ackermann.
``boundary``
    Circular face-boundary symbol sequences and their linearization into
    order-3 DS sequences.
``overlay``
    Lower envelopes and their overlay, single-face computation by balanced
    binary merging, refinements and splitting numbers, marked-face
    complexities, intersection-graph coloring.
``generators``
    Seeded instance families (shifted copies, grids, random, polygons,
    stabbed sets, long chords, reflected-robot families).
``planner``
    Translational motion planning of a simple polygon among point pins.
``bench`` / ``svg`` / ``cli``
    Measurement harness with frozen-constant bound checks, deterministic
    SVG rendering, and the command-line front end.
"""

from .geom import (
    CCW,
    COLLINEAR,
    CW,
    EMPTY,
    Empty,
    Overlap,
    Point,
    Rat,
    Segment,
    Single,
    intersect,
    orientation,
    point,
    point_on_segment,
    rat,
    segment,
)
from .arrangement import Arrangement, Face, InputError, Location, Trapezoid, build
from .dsseq import (
    BudgetExceeded,
    Partition,
    SymbolSequence,
    active_profile,
    block_decompose,
    dsa_partition,
    inverse_ackermann,
    is_ds,
    lambda3_hat,
    lambda_brute,
    partition,
    restrict,
    seq,
)
from .boundary import (
    OrientedSymbol,
    boundary_symbol_sequence,
    circular_equal,
    linearize,
    sequence_tokens,
)
from .overlay import (
    Envelope,
    FaceData,
    MarkedInstance,
    envelope_overlay,
    face_data,
    lower_envelope,
    lower_envelope_oracle,
    marked_faces_complexity,
    marked_instance,
    merge_envelopes,
    refine,
    single_face_oracle,
    single_face_overlay,
    smallest_last_coloring,
)
from .generators import Scenario, generate, reflect_translate, scenario, square_loop
from .planner import (
    PlanPath,
    PlanProblem,
    UNREACHABLE,
    Unreachable,
    extract_path,
    plan,
    plan_problem,
)
from .bench import Report, clarkson_shor_trial, frozen_constant_check, run
from .svg import render_svg

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
