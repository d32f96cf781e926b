"""Valence, critical-point kind and saddle multiplicity of every vertex.

The valence of a vertex is the number of level arcs leaving it. For a PL
field it is the number of sign changes of ``F - F(v)`` along the link:
cyclically for interior vertices, along the link path (between the two
boundary neighbours) for boundary vertices.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import DegenerateGeometry, MissingPositions, RelaxedBoundaryAtVertex
from .field import ScalarField


class Kind(str, enum.Enum):
    LOCAL_MIN = "local-min"
    LOCAL_MAX = "local-max"
    REGULAR = "regular"
    INTERIOR_SADDLE = "interior-saddle"
    BOUNDARY_REGULAR = "boundary-regular"
    BOUNDARY_EXTREMUM = "boundary-extremum"
    BOUNDARY_SADDLE = "boundary-saddle"


class BoundaryRestriction(str, enum.Enum):
    LOCAL_MIN = "local-min-of-F|dM"
    LOCAL_MAX = "local-max-of-F|dM"
    NEITHER = "neither"


@dataclass(frozen=True)
class VertexClassification:
    vertex: int
    locus: str
    valence: int
    kind: Kind
    multiplicity: int
    boundary_restriction_kind: BoundaryRestriction | None = None

    @property
    def is_interior(self) -> bool:
        return self.locus == "interior"

    @property
    def is_critical(self) -> bool:
        return self.valence != (2 if self.is_interior else 1)


def link_signs(f: ScalarField, v: int) -> np.ndarray:
    """Signs of ``F(u) - F(v)`` along the ordered link of ``v``."""
    m = f.mesh
    link = np.fromiter(m.link(v), dtype=int)
    signs = np.sign(f.values[link] - f.values[v]).astype(int)
    if m.is_boundary_vertex(v) and (signs[0] == 0 or signs[-1] == 0):
        raise RelaxedBoundaryAtVertex(
            f"vertex {v} meets a constant boundary arc; quotient the field first")
    # interior edges are strict in every mode, so no other zero can occur
    return signs


def count_sign_changes(signs, cyclic: bool) -> int:
    s = np.asarray(signs)
    if len(s) < 2:
        return 0
    changes = int(np.count_nonzero(s[1:] != s[:-1]))
    if cyclic:
        changes += int(s[0] != s[-1])
    return changes


def valence(f: ScalarField, v: int) -> int:
    return count_sign_changes(link_signs(f, v), cyclic=not f.mesh.is_boundary_vertex(v))


def classify_vertex(f: ScalarField, v: int) -> VertexClassification:
    signs = link_signs(f, v)
    if not f.mesh.is_boundary_vertex(v):
        val = count_sign_changes(signs, cyclic=True)
        if val == 0:
            kind = Kind.LOCAL_MIN if signs[0] > 0 else Kind.LOCAL_MAX
        elif val == 2:
            kind = Kind.REGULAR
        else:
            kind = Kind.INTERIOR_SADDLE
        w = val // 2 - 1 if val >= 4 else 0
        return VertexClassification(v, "interior", val, kind, w)

    val = count_sign_changes(signs, cyclic=False)
    if signs[0] != signs[-1]:
        restr = BoundaryRestriction.NEITHER
    elif signs[0] > 0:
        restr = BoundaryRestriction.LOCAL_MIN
    else:
        restr = BoundaryRestriction.LOCAL_MAX
    if val == 0:
        kind = Kind.BOUNDARY_EXTREMUM
    elif val == 1:
        kind = Kind.BOUNDARY_REGULAR
    else:
        kind = Kind.BOUNDARY_SADDLE
    w = val // 2 if val % 2 == 0 else (val - 1) // 2
    return VertexClassification(v, "boundary", val, kind, w, restr)


@dataclass(frozen=True)
class ClassificationSummary:
    """Per-vertex records plus the vertex sets used by the counting formulas.

    ``Q`` holds the interior local extrema together with the local minima
    of F restricted to the boundary. ``A`` holds boundary local extrema of
    the restriction that are not local extrema of F.
    """

    field: ScalarField = field(repr=False)
    records: tuple[VertexClassification, ...]
    Q_int: tuple[int, ...]
    Q_bd: tuple[int, ...]
    boundary_maxima: tuple[int, ...]
    A: tuple[int, ...]
    V_int: dict[int, int]
    V_bd: dict[int, int]
    N: int
    s_bd: int

    @property
    def Q(self) -> tuple[int, ...]:
        return tuple(sorted(self.Q_int + self.Q_bd))

    def __post_init__(self):
        object.__setattr__(self, "_by_vertex", {r.vertex: r for r in self.records})

    def record(self, v: int) -> VertexClassification:
        return self._by_vertex[v]

    def J(self, t: float) -> tuple[int, ...]:
        """Boundary vertices at value ``t`` that are not extrema of F on the boundary."""
        vals = self.field.values
        return tuple(r.vertex for r in self.records
                     if r.locus == "boundary" and vals[r.vertex] == t
                     and r.boundary_restriction_kind is BoundaryRestriction.NEITHER)

    @property
    def interior_saddles(self) -> tuple[int, ...]:
        return tuple(r.vertex for r in self.records if r.kind is Kind.INTERIOR_SADDLE)

    @property
    def boundary_saddles(self) -> tuple[int, ...]:
        return tuple(r.vertex for r in self.records if r.kind is Kind.BOUNDARY_SADDLE)


def summarize(f: ScalarField, records: Iterable[VertexClassification]) -> ClassificationSummary:
    recs = tuple(sorted(records, key=lambda r: r.vertex))
    q_int, q_bd, bmax, a = [], [], [], []
    v_int: Counter = Counter()
    v_bd: Counter = Counter()
    n_int = s_bd = 0
    for r in recs:
        if r.is_interior:
            v_int[r.valence] += 1
            n_int += r.multiplicity
            if r.kind in (Kind.LOCAL_MIN, Kind.LOCAL_MAX):
                q_int.append(r.vertex)
        else:
            v_bd[r.valence] += 1
            s_bd += r.multiplicity
            if r.boundary_restriction_kind is BoundaryRestriction.LOCAL_MIN:
                q_bd.append(r.vertex)
            elif r.boundary_restriction_kind is BoundaryRestriction.LOCAL_MAX:
                bmax.append(r.vertex)
            if r.boundary_restriction_kind is not BoundaryRestriction.NEITHER and r.valence > 0:
                a.append(r.vertex)
    return ClassificationSummary(
        field=f, records=recs, Q_int=tuple(q_int), Q_bd=tuple(q_bd),
        boundary_maxima=tuple(bmax), A=tuple(a),
        V_int=dict(sorted(v_int.items())), V_bd=dict(sorted(v_bd.items())),
        N=n_int, s_bd=s_bd,
    )


def classify_all(f: ScalarField, vertices: Iterable[int] | None = None) -> ClassificationSummary:
    """Classify every vertex (or the given subset) and assemble the summary."""
    vs = range(f.mesh.vertex_count) if vertices is None else sorted(set(vertices))
    return summarize(f, (classify_vertex(f, v) for v in vs))


def hopf_index(f: ScalarField, v: int) -> int:
    """Index of the level-line field of ``f`` at interior vertex ``v``.

    The star of ``v`` is laid flat by rescaling its angles at ``v`` to sum
    to a full turn. Inside each flat triangle the level direction is
    constant; across a spoke the direction turns the way that never passes
    through the spoke, since the level set crosses it transversally. The
    accumulated turn divided by a full turn is the index.

    Raises
    ------
    MissingPositions, DegenerateGeometry
    """
    m = f.mesh
    if m.positions is None:
        raise MissingPositions("hopf_index needs vertex positions")
    if m.is_boundary_vertex(v):
        raise ValueError(f"vertex {v} is on the boundary")
    link = list(m.link(v))
    k = len(link)
    vecs = m.positions[link] - m.positions[v]
    lens = np.linalg.norm(vecs, axis=1)
    if np.any(lens <= 0):
        raise DegenerateGeometry(f"zero-length spoke at vertex {v}")
    unit = vecs / lens[:, None]
    spans = np.array([
        math.atan2(np.linalg.norm(np.cross(unit[i], unit[(i + 1) % k])),
                   float(np.dot(unit[i], unit[(i + 1) % k])))
        for i in range(k)
    ])
    if np.any(spans <= 1e-12):
        raise DegenerateGeometry(f"flat triangle in the star of vertex {v}")
    spans *= 2 * math.pi / spans.sum()
    if np.any(spans >= math.pi):
        raise DegenerateGeometry(f"star of vertex {v} cannot be flattened")
    theta = np.concatenate([[0.0], np.cumsum(spans)[:-1]])
    flat = lens[:, None] * np.column_stack([np.cos(theta), np.sin(theta)])

    dv = f.values[link] - f.values[v]
    dirs = np.empty(k)
    for i in range(k):
        j = (i + 1) % k
        g = np.linalg.solve(np.array([flat[i], flat[j]]), np.array([dv[i], dv[j]]))
        dirs[i] = math.atan2(g[1], g[0]) + math.pi / 2

    total = 0.0
    for i in range(k):
        j = (i + 1) % k
        spoke = theta[j]
        before = (dirs[i] - spoke) % math.pi
        after = (dirs[j] - spoke) % math.pi
        total += after - before
    index = total / (2 * math.pi)
    r = round(index)
    if abs(index - r) > 1e-6:
        raise DegenerateGeometry(f"non-integral rotation {index} at vertex {v}")
    return int(r)
