"""Constructive witnesses for the chaotic behaviour of the embedding map.

Each witness builds, from concrete inputs, the explicit point used in
the corresponding proof, runs the map, measures the quantities the
argument relies on, and returns a WitnessReport whose verdict says
whether every measured quantity met its bound.  Nothing here is a
statistical test; when a witness verdict is true the relevant property
has been exhibited on those inputs, not merely sampled.

Covered properties:

* sensitivity:           a point inside any ball around x whose orbit
                         separates from x's by at least N/2
* strong transitivity:   a point inside any ball around x_a whose orbit
                         reaches exactly x_b
* regularity:            an eventually periodic point within eps of x
* non-expansivity:       a pair whose orbits never separate past a
                         fixed bound, however long they run
* continuity:            shrinking perturbations whose images shrink
                         proportionally

The `empirical_sensitivity_scan` complements the constructive route
with a randomized search over a ball, mainly as a sanity check that
the witness is not an isolated artefact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .phase_space import (
    BoundViolation,
    DimensionMismatch,
    PhasePoint,
    SpaceConfig,
    Strategy,
    apply_g,
    basis_vector,
    d_inf,
    d_phase,
    iterate_g,
    zeros_vector,
)

DEFAULT_TOLERANCE = 1e-9


class WitnessProperty(str, Enum):
    SENSITIVITY = "sensitivity"
    STRONG_TRANSITIVITY = "strong_transitivity"
    REGULARITY = "regularity"
    NON_EXPANSIVITY = "non_expansivity"
    CONTINUITY = "continuity"


@dataclass(frozen=True, eq=False)
class WitnessReport:
    """Outcome of one constructive witness run.

    measured holds the named quantities the property's bound is stated
    over; verdict is true iff every one of them met its bound (within
    tolerance where the bound is approximate).
    """

    property: WitnessProperty
    inputs: dict
    constructed_point: PhasePoint | tuple[PhasePoint, PhasePoint]
    iterations_used: int
    measured: dict
    verdict: bool
    tolerance: float

    def to_dict(self) -> dict:
        if isinstance(self.constructed_point, tuple):
            point = [phase_point_to_dict(p) for p in self.constructed_point]
        else:
            point = phase_point_to_dict(self.constructed_point)
        return {
            "property": self.property.value,
            "inputs": dict(self.inputs),
            "constructed_point": point,
            "iterations_used": self.iterations_used,
            "measured": dict(self.measured),
            "verdict": bool(self.verdict),
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True, eq=False)
class OrbitTrace:
    """Per-step distance records between two orbits.

    points rows are (step, d_phase, d_inf_media).  meta carries the
    generating parameters (and, for the continuity probe, the parallel
    list of input distances).
    """

    points: tuple[tuple[int, float, float], ...]
    meta: dict = field(default_factory=dict)

    columns = ("step", "d_phase", "d_inf_media")

    def to_dict(self) -> dict:
        return {
            "columns": list(self.columns),
            "points": [[int(s), float(d), float(m)] for s, d, m in self.points],
            "meta": dict(self.meta),
        }


# ---------- serialization helpers ----------

def strategy_to_dict(s: Strategy) -> dict:
    return {
        "dim": s.dim,
        "prefix": [t.tolist() for t in s.prefix],
        "tail": {
            "kind": "periodic" if s.tail else "zero",
            "block": [t.tolist() for t in s.tail],
        },
    }


def strategy_from_dict(d: dict) -> Strategy:
    tail = d.get("tail", {"kind": "zero", "block": []})
    block = tuple(tail.get("block", ())) if tail.get("kind") == "periodic" else ()
    return Strategy(int(d["dim"]), tuple(d.get("prefix", ())), block)


def phase_point_to_dict(x: PhasePoint) -> dict:
    return {"strategy": strategy_to_dict(x.strategy), "media": x.media.tolist()}


def phase_point_from_dict(d: dict) -> PhasePoint:
    return PhasePoint(strategy_from_dict(d["strategy"]), d["media"])


# ---------- shared arithmetic ----------

def ball_index(r: float) -> int:
    """Decade index k0 of a radius: 10^-k0 <= r < 10^-k0+1, clamped at 0.

    Radii of 1 or more clamp to 0 so constructions always have a valid
    non-negative depth to work at.
    """
    r = float(r)
    if not (math.isfinite(r) and r > 0.0):
        raise ValueError(f"radius must be positive and finite, got {r!r}")
    k0 = math.ceil(-math.log10(r))
    while 10.0 ** (-k0) > r:  # guard against log10 rounding
        k0 += 1
    while k0 > 0 and 10.0 ** (-(k0 - 1)) <= r:
        k0 -= 1
    return max(0, k0)


def _require_tolerance(tolerance: float) -> float:
    tolerance = float(tolerance)
    if not (math.isfinite(tolerance) and tolerance >= 0.0):
        raise ValueError(f"tolerance must be non-negative, got {tolerance!r}")
    return tolerance


# ---------- sensitivity ----------

def witness_sensitivity(x: PhasePoint, r: float, space: SpaceConfig,
                        tolerance: float = DEFAULT_TOLERANCE) -> WitnessReport:
    """Exhibit sensitive dependence at x within radius r.

    Only the first component of strategy term k0+1 is changed, to
    whichever of {-N, 0, +N} differs from it by at least N/2 but at
    most N.  That single change costs at most 0.9 * 10^-k0 <= 0.9 r in
    the strategy metric, so the witness stays inside B(x, r), and after
    k0+2 steps both orbits have absorbed the differing term, leaving
    their media exactly that far apart in component 0.
    """
    tolerance = _require_tolerance(tolerance)
    k0 = ball_index(r)
    n = float(space.bound_n)
    half = 0.5 * n
    term_index = k0 + 1
    current = float(x.strategy.term(term_index)[0])
    if abs(current) >= half:
        target = 0.0
    elif current >= 0.0:
        target = n
    else:
        target = -n
    changed = np.array(x.strategy.term(term_index), dtype=np.float64)
    changed[0] = target
    witness = PhasePoint(x.strategy.with_term(term_index, changed), x.media)

    ball_distance = d_phase(x, witness, space)
    steps = k0 + 2
    separation = d_phase(iterate_g(x, steps), iterate_g(witness, steps), space)
    verdict = ball_distance <= float(r) and separation >= half - tolerance
    return WitnessReport(
        property=WitnessProperty.SENSITIVITY,
        inputs={"r": float(r), "k0": k0, "nv": x.dim, "bound_n": n},
        constructed_point=witness,
        iterations_used=steps,
        measured={
            "ball_distance": ball_distance,
            "separation": separation,
            "required_separation": half,
        },
        verdict=bool(verdict),
        tolerance=tolerance,
    )


# ---------- strong transitivity ----------

def _transitivity_candidate(x_a: PhasePoint, x_b: PhasePoint, depth: int,
                            bound: float):
    """Point that follows x_a for `depth` steps, then steers to x_b.

    The candidate keeps x_a's media and first `depth` strategy terms,
    then spends one axis-aligned correction term per media component
    closing the gap between the drifted media and x_b's media, then
    continues with x_b's strategy verbatim.  Corrections larger than
    the component bound are split evenly over enough consecutive terms
    to stay inside [-N, N].
    """
    nv = x_a.dim
    lead = tuple(x_a.strategy.term(k) for k in range(depth))
    drifted = iterate_g(x_a, depth)
    corrections: list[np.ndarray] = []
    oversize = 0
    for k in range(nv):
        gap = float(x_b.media[k]) - float(drifted.media[k])
        pieces = max(1, math.ceil(abs(gap) / bound))
        if pieces > 1:
            oversize += 1
        for _ in range(pieces):
            corrections.append(basis_vector(nv, k, gap / pieces))
    target = x_b.strategy
    prefix = lead + tuple(corrections) + target.prefix
    candidate = PhasePoint(Strategy(nv, prefix, target.tail), x_a.media)
    return candidate, depth + len(corrections), len(corrections), oversize


def witness_strong_transitivity(x_a: PhasePoint, r_a: float, x_b: PhasePoint,
                                space: SpaceConfig,
                                tolerance: float = DEFAULT_TOLERANCE,
                                ) -> WitnessReport:
    """Exhibit strong transitivity: hit x_b exactly from inside B(x_a, r_a).

    The matching depth starts at the decade index of r_a and deepens
    (rarely more than once) until the candidate measurably lies inside
    the ball; the splice itself guarantees the exact hit regardless of
    depth.  iterations_used reports the full step count, including any
    correction terms split to respect the component bound.
    """
    tolerance = _require_tolerance(tolerance)
    if x_a.dim != x_b.dim:
        raise DimensionMismatch(
            f"endpoint dimensions differ: {x_a.dim} vs {x_b.dim}")
    r_a = float(r_a)
    k0 = ball_index(r_a)
    bound = float(space.bound_n)

    depth = k0
    while True:
        candidate, steps, n_corrections, oversize = _transitivity_candidate(
            x_a, x_b, depth, bound)
        ball_distance = d_phase(x_a, candidate, space)
        if ball_distance <= r_a:
            break
        depth += 1

    final = iterate_g(candidate, steps)
    final_distance = d_phase(final, x_b, space)
    verdict = final_distance <= tolerance
    return WitnessReport(
        property=WitnessProperty.STRONG_TRANSITIVITY,
        inputs={
            "r_a": r_a,
            "k0": k0,
            "matching_depth": depth,
            "correction_terms": n_corrections,
            "split_components": oversize,
            "nv": x_a.dim,
            "bound_n": bound,
        },
        constructed_point=candidate,
        iterations_used=steps,
        measured={
            "ball_distance": ball_distance,
            "final_distance": final_distance,
        },
        verdict=bool(verdict),
        tolerance=tolerance,
    )


# ---------- regularity ----------

def witness_regularity(x: PhasePoint, eps: float, space: SpaceConfig,
                       tolerance: float = DEFAULT_TOLERANCE) -> WitnessReport:
    """Exhibit a periodic-style point within eps of x.

    The candidate copies x's strategy through term n0 (the first index
    with 10^-n0 < eps, deepened if the measured distance demands it)
    and then alternates full +N / -N blocks, signed by the parity of
    the absolute term index.  The alternating tail sums to zero over
    one period, which is the cancellation the construction relies on.
    """
    tolerance = _require_tolerance(tolerance)
    eps = float(eps)
    if not (math.isfinite(eps) and eps > 0.0):
        raise ValueError(f"eps must be positive and finite, got {eps!r}")
    nv = x.dim
    n = float(space.bound_n)
    n0 = max(0, math.ceil(-math.log10(eps)))
    while not 10.0 ** (-n0) < eps:
        n0 += 1

    plus = np.full(nv, n)
    minus = np.full(nv, -n)
    while True:
        lead = tuple(x.strategy.term(k) for k in range(n0 + 1))
        tail = (plus, minus) if (n0 + 1) % 2 == 0 else (minus, plus)
        candidate = PhasePoint(Strategy(nv, lead, tail), x.media)
        distance = d_phase(candidate, x, space)
        if distance < eps:
            break
        n0 += 1

    period_sum = float(np.max(np.abs(tail[0] + tail[1])))
    verdict = distance < eps and period_sum <= tolerance
    return WitnessReport(
        property=WitnessProperty.REGULARITY,
        inputs={"eps": eps, "n0": n0, "nv": nv, "bound_n": n},
        constructed_point=candidate,
        iterations_used=n0,
        measured={"distance": distance, "tail_period_sum": period_sum},
        verdict=bool(verdict),
        tolerance=tolerance,
    )


# ---------- non-expansivity ----------

def expansivity_counterexample(eps: float, n_max: int, space: SpaceConfig,
                               tolerance: float = DEFAULT_TOLERANCE,
                               ) -> WitnessReport:
    """Pair of distinct points whose orbits never separate past a bound.

    X is the rest point (zero strategy, zero media); Y flips media
    component 0 up and down by eps/2 forever.  Along the whole orbit
    the distance never exceeds eps/2 + 5*eps/N: the media disagree by
    at most eps/2 and the strategy series contributes exactly 5*eps/N
    at every step.  Whether that also stays under eps itself depends on
    N (it does iff N >= 10); the report flags the comparison rather
    than asserting it.
    """
    tolerance = _require_tolerance(tolerance)
    eps = float(eps)
    if not (math.isfinite(eps) and eps > 0.0):
        raise ValueError(f"eps must be positive and finite, got {eps!r}")
    if not isinstance(n_max, int) or n_max < 0:
        raise ValueError(f"n_max must be a non-negative integer, got {n_max!r}")
    n = float(space.bound_n)
    nv = space.nv
    if eps / 2.0 > n:
        raise BoundViolation(
            f"eps/2 = {eps / 2.0} exceeds the strategy bound {n}")

    rest = PhasePoint(Strategy.zero(nv), zeros_vector(nv))
    up = basis_vector(nv, 0, eps / 2.0)
    down = basis_vector(nv, 0, -eps / 2.0)
    flipper = PhasePoint(Strategy(nv, (), (up, down)), zeros_vector(nv))

    sup_distance = 0.0
    a, b = rest, flipper
    for step in range(n_max + 1):
        if step:
            a, b = apply_g(a), apply_g(b)
        sup_distance = max(sup_distance, d_phase(a, b, space))

    derived_bound = eps / 2.0 + 5.0 * eps / n
    eps_bound_holds = sup_distance <= eps + tolerance
    verdict = sup_distance <= derived_bound + tolerance
    return WitnessReport(
        property=WitnessProperty.NON_EXPANSIVITY,
        inputs={"eps": eps, "n_max": n_max, "nv": nv, "bound_n": n},
        constructed_point=(rest, flipper),
        iterations_used=n_max,
        measured={
            "sup_distance": sup_distance,
            "derived_bound": derived_bound,
            "eps_bound": eps,
            "eps_bound_holds": 1.0 if eps_bound_holds else 0.0,
        },
        verdict=bool(verdict),
        tolerance=tolerance,
    )


# ---------- continuity ----------

def continuity_probe(x: PhasePoint, scales, space: SpaceConfig) -> OrbitTrace:
    """Push shrinking perturbations of x through one map application.

    Each scale s bumps media component 0 and strategy term 0 component
    0 by s.  Rows record the post-map distances; meta carries the
    matching pre-map distances.  Scales that would push the strategy
    term outside [-N, N] are skipped and listed in meta.
    """
    scales = [float(s) for s in scales]
    if not scales or any(not (math.isfinite(s) and s > 0.0) for s in scales):
        raise ValueError("scales must be positive finite reals")
    if any(b >= a for a, b in zip(scales, scales[1:])):
        raise ValueError("scales must be strictly decreasing")

    image = apply_g(x)
    base_term = x.strategy.term(0)
    rows = []
    input_d = []
    used = []
    skipped = []
    for s in scales:
        if abs(float(base_term[0]) + s) > space.bound_n:
            skipped.append(s)
            continue
        term = np.array(base_term, dtype=np.float64)
        term[0] += s
        media = np.array(x.media, dtype=np.float64)
        media[0] += s
        perturbed = PhasePoint(x.strategy.with_term(0, term), media)
        input_d.append(d_phase(perturbed, x, space))
        perturbed_image = apply_g(perturbed)
        rows.append((len(rows),
                     d_phase(perturbed_image, image, space),
                     d_inf(perturbed_image.media, image.media)))
        used.append(s)
    return OrbitTrace(
        points=tuple(rows),
        meta={
            "kind": "continuity_probe",
            "scales": used,
            "skipped_scales": skipped,
            "input_d_phase": input_d,
            "nv": x.dim,
            "bound_n": float(space.bound_n),
        },
    )


def continuity_report(x: PhasePoint, scales, space: SpaceConfig,
                      tolerance: float = DEFAULT_TOLERANCE) -> WitnessReport:
    """Wrap a continuity probe as a witness.

    Verdict: every image distance is at most twice its input distance
    (plus tolerance) and the image distances do not increase as the
    scales shrink.
    """
    tolerance = _require_tolerance(tolerance)
    trace = continuity_probe(x, scales, space)
    image_d = [row[1] for row in trace.points]
    input_d = trace.meta["input_d_phase"]
    if not image_d:
        raise ValueError("no usable scales: every perturbation left the bound")
    ratio_ok = all(img <= 2.0 * inp + tolerance
                   for img, inp in zip(image_d, input_d))
    nonincreasing = all(b <= a + tolerance
                        for a, b in zip(image_d, image_d[1:]))
    max_ratio = max((img / inp if inp else 0.0)
                    for img, inp in zip(image_d, input_d))

    smallest = trace.meta["scales"][-1]
    term = np.array(x.strategy.term(0), dtype=np.float64)
    term[0] += smallest
    media = np.array(x.media, dtype=np.float64)
    media[0] += smallest
    last_point = PhasePoint(x.strategy.with_term(0, term), media)

    return WitnessReport(
        property=WitnessProperty.CONTINUITY,
        inputs={
            "scales": list(trace.meta["scales"]),
            "skipped_scales": list(trace.meta["skipped_scales"]),
            "nv": x.dim,
            "bound_n": float(space.bound_n),
        },
        constructed_point=last_point,
        iterations_used=1,
        measured={
            "max_image_to_input_ratio": max_ratio,
            "final_image_distance": image_d[-1],
            "image_distances_nonincreasing": 1.0 if nonincreasing else 0.0,
        },
        verdict=bool(ratio_ok and nonincreasing),
        tolerance=tolerance,
    )


# ---------- traces and randomized scan ----------

def divergence_trace(x: PhasePoint, y: PhasePoint, n_max: int,
                     space: SpaceConfig) -> OrbitTrace:
    """Distances between the orbits of x and y at steps 0..n_max."""
    if not isinstance(n_max, int) or n_max < 0:
        raise ValueError(f"n_max must be a non-negative integer, got {n_max!r}")
    if x.dim != y.dim:
        raise DimensionMismatch(f"point dimensions differ: {x.dim} vs {y.dim}")
    rows = []
    a, b = x, y
    for step in range(n_max + 1):
        if step:
            a, b = apply_g(a), apply_g(b)
        rows.append((step, d_phase(a, b, space), d_inf(a.media, b.media)))
    return OrbitTrace(
        points=tuple(rows),
        meta={"kind": "divergence", "n_max": n_max, "nv": x.dim,
              "bound_n": float(space.bound_n)},
    )


def _random_ball_perturbation(x: PhasePoint, r: float, k0: int,
                              space: SpaceConfig, seed: int,
                              trial: int) -> PhasePoint:
    # Sub-seeded from (seed, trial) so trial order and parallel
    # evaluation cannot change results.
    rng = np.random.default_rng([seed, trial])
    n = float(space.bound_n)
    nv = x.dim
    frac = rng.uniform(0.1, 0.9)
    media_budget = 0.5 * r * frac
    strategy_budget = 0.5 * r * (1.0 - frac)
    media = np.array(x.media) + rng.uniform(-media_budget, media_budget, nv)
    depth = k0 + int(rng.integers(0, 3))
    cap = strategy_budget * (n / 9.0) * 10.0 ** depth
    term = np.array(x.strategy.term(depth), dtype=np.float64)
    term = np.clip(term + rng.uniform(-cap, cap, nv), -n, n)
    return PhasePoint(x.strategy.with_term(depth, term), media)


def empirical_sensitivity_scan(x: PhasePoint, r: float, trials: int,
                               n_max: int, seed: int,
                               space: SpaceConfig) -> float:
    """Largest orbit separation found from perturbations inside B(x, r).

    Trial 0 is the unperturbed baseline (so a single trial returns 0);
    trial 1 is the constructive sensitivity witness, which anchors the
    scan at the provable separation; remaining trials draw random
    in-ball perturbations sub-seeded from (seed, trial index).
    Returns max over trials of max over steps 0..n_max of d_phase.
    """
    if not isinstance(trials, int) or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials!r}")
    if not isinstance(n_max, int) or n_max < 0:
        raise ValueError(f"n_max must be a non-negative integer, got {n_max!r}")
    r = float(r)
    k0 = ball_index(r)
    best = 0.0
    for trial in range(trials):
        if trial == 0:
            perturbed = x
        elif trial == 1:
            perturbed = witness_sensitivity(x, r, space).constructed_point
        else:
            perturbed = _random_ball_perturbation(x, r, k0, space, seed, trial)
        a, b = x, perturbed
        for step in range(n_max + 1):
            if step:
                a, b = apply_g(a), apply_g(b)
            best = max(best, d_phase(a, b, space))
    return best


def random_phase_point(seed, space: SpaceConfig, prefix_max: int = 3,
                       media_scale: float | None = None) -> PhasePoint:
    """Reproducible random phase point (for scans, demos, and the CLI).

    Accepts either an integer seed or an existing numpy Generator.
    Strategy terms are uniform over [-N, N]; the tail is zero or a
    short periodic block with equal probability.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    n = float(space.bound_n)
    nv = space.nv
    scale = media_scale if media_scale is not None else n / 2.0
    media = rng.uniform(-scale, scale, nv)
    prefix = tuple(rng.uniform(-n, n, nv)
                   for _ in range(int(rng.integers(0, prefix_max + 1))))
    if rng.random() < 0.5:
        tail = ()
    else:
        tail = tuple(rng.uniform(-n, n, nv)
                     for _ in range(int(rng.integers(1, 3))))
    return PhasePoint(Strategy(nv, prefix, tail), media)
