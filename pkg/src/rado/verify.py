"""Check the critical-point counting identities on concrete meshes.

Each verifier returns a :class:`TheoremReport` holding both sides as exact
fractions, the relation tested and whether it held. The identities always
hold for valid input, so a failing report points at a bug or at input that
slipped past validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .classify import ClassificationSummary, classify_all, classify_vertex
from .errors import FieldError, HasBoundary, NoBoundary, NonRegularRegionBoundary
from .field import ScalarField
from .mesh import euler_characteristic
from .network import slice_bound
from .regions import clip, quotient_constant_boundary

CLOSED_SUM = "closed-valence-sum"
MAXWELL = "saddle-count-closed"
BOUNDARY_SUM = "boundary-valence-sum"
GENERAL = "saddle-count-with-boundary"
INEQUALITY = "interior-saddle-bound"
INTERVAL = "band-saddle-count"
INTERVAL_LIMIT = "band-saddle-count-open-ends"
STABILITY = "perturbation-stability"
QUOTIENT = "constant-boundary-quotient"
SLICE = "slice-bound"


@dataclass(frozen=True)
class TheoremReport:
    theorem: str
    lhs: Fraction
    rhs: Fraction
    relation: str  # "eq" or "leq"
    passed: bool
    equality_attained: bool | None = None
    witness: tuple = ()
    details: dict = field(default_factory=dict)


def _report(theorem, lhs, rhs, relation="eq", extra_ok=True, **kw) -> TheoremReport:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    holds = lhs == rhs if relation == "eq" else lhs <= rhs
    return TheoremReport(theorem, lhs, rhs, relation, holds and extra_ok, **kw)


def verify_closed(f: ScalarField, summary: ClassificationSummary | None = None) -> TheoremReport:
    """Euler characteristic equals the sum of ``(2 - valence)/2`` over vertices."""
    m = f.mesh
    if not m.is_closed:
        raise HasBoundary("closed-surface formula needs a mesh without boundary")
    s = summary or classify_all(f)
    rhs = sum((Fraction(2 - v, 2) * c for v, c in s.V_int.items()), Fraction(0))
    return _report(CLOSED_SUM, euler_characteristic(m), rhs, details={"V_int": s.V_int})


def verify_maxwell(f: ScalarField, summary: ClassificationSummary | None = None) -> TheoremReport:
    """Total saddle multiplicity equals extrema minus Euler characteristic."""
    m = f.mesh
    if not m.is_closed:
        raise HasBoundary("use verify_general on surfaces with boundary")
    s = summary or classify_all(f)
    chi = euler_characteristic(m)
    return _report(MAXWELL, s.N, len(s.Q) - chi,
                   details={"Q": len(s.Q), "chi": chi, "saddles": s.interior_saddles})


def verify_boundary_valence(f: ScalarField, summary: ClassificationSummary | None = None) -> TheoremReport:
    """Euler characteristic from interior and boundary valence counts."""
    m = f.mesh
    if m.is_closed:
        raise NoBoundary("boundary valence formula needs a boundary")
    s = summary or classify_all(f)
    rhs = Fraction(0)
    for v, c in s.V_int.items():
        rhs += (1 - Fraction(v, 2)) * c
    for v, c in s.V_bd.items():
        rhs += Fraction(1 - v, 2) * c
    return _report(BOUNDARY_SUM, euler_characteristic(m), rhs,
                   details={"V_int": s.V_int, "V_bd": s.V_bd})


def _expanded_saddle_sum(s: ClassificationSummary) -> int:
    total = sum((v // 2 - 1) * c for v, c in s.V_int.items() if v >= 4 and v % 2 == 0)
    total += sum((v // 2) * c for v, c in s.V_bd.items() if v >= 2)
    return total


def verify_general(f: ScalarField, summary: ClassificationSummary | None = None) -> TheoremReport:
    """Interior plus boundary saddle multiplicity equals ``|Q| - chi``.

    The multiplicity total is also recomputed from the valence histograms;
    both must agree.
    """
    s = summary or classify_all(f)
    chi = euler_characteristic(f.mesh)
    lhs = s.N + s.s_bd
    expanded = _expanded_saddle_sum(s)
    return _report(GENERAL, lhs, len(s.Q) - chi, extra_ok=expanded == lhs,
                   details={"N": s.N, "s_bd": s.s_bd, "Q": len(s.Q), "chi": chi,
                            "from_histograms": expanded})


def verify_inequality(f: ScalarField, summary: ClassificationSummary | None = None) -> TheoremReport:
    """Interior saddle multiplicity is at most ``|Q| - chi - |A|``.

    Equality holds exactly when no boundary vertex has valence above 2; the
    offending vertices are returned as the witness.
    """
    s = summary or classify_all(f)
    chi = euler_characteristic(f.mesh)
    rhs = len(s.Q) - chi - len(s.A)
    witness = tuple(r.vertex for r in s.records if not r.is_interior and r.valence > 2)
    attained = s.N == rhs
    return _report(INEQUALITY, s.N, rhs, "leq", extra_ok=attained == (not witness),
                   equality_attained=attained, witness=witness,
                   details={"Q": len(s.Q), "A": len(s.A), "chi": chi})


def _band_vertices(f: ScalarField, a: float, b: float) -> list[int]:
    vals = f.values
    return [int(v) for v in np.flatnonzero((vals > a) & (vals < b))]


def _band_count(f: ScalarField, a: float, b: float, theorem: str, details: dict) -> TheoremReport:
    c = clip(f, a, b)
    band = _band_vertices(f, a, b)
    s = classify_all(f, band)
    lhs = sum(r.multiplicity for r in s.records)
    beta = c.beta_a or 0
    rhs = len(s.Q) + Fraction(beta, 2) - c.chi
    details = {**details, "Q": len(s.Q), "beta_a": beta, "chi": c.chi,
               "N": s.N, "s_bd": s.s_bd}
    return _report(theorem, lhs, rhs, details=details)


def verify_interval(f: ScalarField, a: float, b: float) -> TheoremReport:
    """Saddle count of the open band ``a < F < b`` for regular values ``a < b``.

    The sum of multiplicities over band vertices equals the band's extrema
    count plus half the boundary points of level ``a`` minus the band's
    Euler characteristic. Relaxed fields are accepted as long as no constant
    boundary arc lies inside the band.
    """
    return _band_count(f, a, b, INTERVAL, {"a": a, "b": b})


def _inner_level(f: ScalarField, x: float, upward: bool) -> float:
    if math.isinf(x):
        return x
    vals = f.values
    beyond = vals[vals > x] if upward else vals[vals < x]
    if beyond.size == 0:
        return x
    nearest = beyond.min() if upward else beyond.max()
    return float((x + nearest) / 2)


def verify_interval_limit(f: ScalarField, a: float, b: float) -> TheoremReport:
    """Band saddle count where ``a`` and ``b`` may be vertex values.

    Boundary points are counted just above ``a``; concretely the band is
    shrunk to the midpoints between each end and the nearest vertex value
    inside the band, which leaves the open band unchanged up to homotopy.
    """
    if not a < b:
        raise ValueError(f"need a < b, got {a!r}, {b!r}")
    if not _band_vertices(f, a, b):
        lo = a if not math.isinf(a) else b - 1
        hi = b if not math.isinf(b) else a + 1
        a2, b2 = lo + (hi - lo) / 3, lo + 2 * (hi - lo) / 3
    else:
        a2, b2 = _inner_level(f, a, True), _inner_level(f, b, False)
    return _band_count(f, a2, b2, INTERVAL_LIMIT, {"a": a, "b": b, "a_shift": a2, "b_shift": b2})


def region_boundary(f: ScalarField, K) -> list[int]:
    """Vertices of ``K`` with a neighbour outside ``K``."""
    K = set(K)
    return sorted(v for v in K if any(u not in K for u in f.mesh.neighbors(v)))


def stability_gap(f: ScalarField, K) -> float:
    """Smallest value gap along edges touching the boundary of ``K``."""
    vals = f.values
    gaps = [abs(vals[v] - vals[u]) for v in region_boundary(f, K) for u in f.mesh.neighbors(v)]
    return min(gaps) if gaps else math.inf


def verify_perturbation_stability(f: ScalarField, K, eps: float, trials: int = 100,
                                  seed: int = 0) -> TheoremReport:
    """Saddle multiplicity inside ``K`` under random perturbations below ``eps``.

    ``K`` must be bounded by regular vertices and ``eps`` must be smaller
    than half the value gap along edges touching that boundary, so no
    critical point can cross it. The index sum ``sum(1 - valence/2)`` over
    ``K`` is tracked as well.

    Raises
    ------
    NonRegularRegionBoundary
        If some vertex on the boundary of ``K`` is critical.
    ValueError
        If ``eps`` is not below half the gap.
    """
    K = sorted(set(int(v) for v in K))
    for v in region_boundary(f, K):
        if classify_vertex(f, v).is_critical:
            raise NonRegularRegionBoundary(f"boundary vertex {v} of the region is critical")
    gap = stability_gap(f, K)
    if not eps < gap / 2:
        raise ValueError(f"eps={eps!r} must be below half the boundary gap {gap!r}")

    def sums(field_):
        recs = [classify_vertex(field_, v) for v in K]
        w = sum(r.multiplicity for r in recs)
        index = sum((1 - Fraction(r.valence, 2)) for r in recs if r.is_interior)
        return w, index

    base_w, base_index = sums(f)
    rng = np.random.default_rng(seed)
    mismatches, values = [], []
    index_stable = True
    for i in range(trials):
        while True:
            noise = rng.uniform(-eps, eps, f.mesh.vertex_count) if eps > 0 else 0.0
            try:
                g = ScalarField(f.mesh, f.values + noise, f.mode)
                break
            except FieldError:
                continue
        w, index = sums(g)
        values.append(w)
        index_stable &= index == base_index
        if w != base_w:
            mismatches.append(i)
    rhs = values[mismatches[0]] if mismatches else base_w
    return _report(STABILITY, base_w, rhs, extra_ok=index_stable, witness=tuple(mismatches),
                   details={"eps": float(eps), "gap": float(gap), "trials": trials, "seed": seed,
                            "index_sum": base_index, "index_stable": index_stable})


def verify_quotient(f: ScalarField) -> TheoremReport:
    """Saddle count of a field with constant boundary pieces, via the quotient.

    The constant pieces are collapsed and the saddle-count identity is
    checked on the quotient surface.
    """
    q = quotient_constant_boundary(f)
    inner = verify_general(q.field) if q.field.is_strict else None
    if inner is None:
        raise FieldError("quotient still has constant boundary arcs")
    return TheoremReport(QUOTIENT, inner.lhs, inner.rhs, "eq", inner.passed,
                         details={**inner.details, "collapsed_cycles": q.closed_cycles,
                                  "collapsed_arcs": len(q.collapsed) - q.closed_cycles})


def verify_slices(f: ScalarField, extrema_rule: str = "off-level") -> TheoremReport:
    """Run the slice bound at every vertex value and at a regular value in each gap."""
    vals = np.unique(f.values)
    levels = list(vals) + [x for x in (vals[1:] + vals[:-1]) / 2 if x not in set(vals)]
    summary = classify_all(f)
    reports = [slice_bound(f, float(t), extrema_rule, summary) for t in levels]
    failed = tuple(r.t for r in reports if not r.passed)
    # headline numbers: the level where the bound is tightest
    tight = max(reports, key=lambda r: r.lhs - r.rhs)
    return TheoremReport(SLICE, tight.lhs, tight.rhs, "leq", not failed, witness=failed,
                         details={"levels": len(levels), "tightest_t": tight.t})


def verify_all(f: ScalarField) -> list[TheoremReport]:
    """Every verifier applicable to ``f`` without extra parameters."""
    if not f.is_strict:
        lo, hi = float(f.values.min()), float(f.values.max())
        return [verify_quotient(f), verify_interval_limit(f, lo, hi)]
    s = classify_all(f)
    out = []
    if f.mesh.is_closed:
        out += [verify_closed(f, s), verify_maxwell(f, s)]
    else:
        out.append(verify_boundary_valence(f, s))
    out += [verify_general(f, s), verify_inequality(f, s),
            verify_interval(f, -math.inf, math.inf), verify_slices(f)]
    return out


__all__ = [
    "TheoremReport", "verify_closed", "verify_maxwell", "verify_boundary_valence",
    "verify_general", "verify_inequality", "verify_interval", "verify_interval_limit",
    "verify_perturbation_stability", "verify_quotient", "verify_slices", "verify_all",
    "region_boundary", "stability_gap",
]
