"""Piecewise-linear scalar fields on meshes and the sign policy used to slice them."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import FieldError, LengthMismatch, NonFiniteValue, NonGenericInteriorEdge, TieRejected
from .mesh import Doubling, Mesh


class GenericityMode(str, enum.Enum):
    STRICT_INTERIOR = "strict-interior"
    RELAXED_BOUNDARY = "relaxed-boundary"


class TiePolicy(str, enum.Enum):
    REJECT = "reject"
    PERTURB_BY_INDEX = "perturb-by-index"


class ScalarField:
    """One float64 value per mesh vertex, linear on each triangle.

    In strict-interior mode every edge has distinct endpoint values. In
    relaxed-boundary mode boundary edges may carry equal values (constant
    boundary arcs); interior edges never may. Equality is exact.
    """

    def __init__(self, mesh: Mesh, values, mode=GenericityMode.STRICT_INTERIOR):
        mode = GenericityMode(mode)
        vals = np.array(values, dtype=np.float64).reshape(-1)
        if vals.shape[0] != mesh.vertex_count:
            raise LengthMismatch(f"{vals.shape[0]} values for {mesh.vertex_count} vertices")
        if not np.all(np.isfinite(vals)):
            bad = np.flatnonzero(~np.isfinite(vals))
            raise NonFiniteValue(f"non-finite values at vertices {bad[:10].tolist()}")
        bd = set(mesh.boundary_edges)
        ties = [e for e in mesh.edges if vals[e[0]] == vals[e[1]]]
        if mode is GenericityMode.RELAXED_BOUNDARY:
            ties = [e for e in ties if e not in bd]
        if ties:
            raise NonGenericInteriorEdge(ties)
        vals.setflags(write=False)
        self.mesh = mesh
        self.values = vals
        self.mode = mode
        self.relaxed_edges: tuple = tuple(
            e for e in mesh.boundary_edges if vals[e[0]] == vals[e[1]]
        )

    @property
    def is_strict(self) -> bool:
        return not self.relaxed_edges

    def __getitem__(self, v):
        return self.values[v]

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return f"ScalarField({self.mesh!r}, mode={self.mode.value}, relaxed_edges={len(self.relaxed_edges)})"


def attach_field(m: Mesh, values, mode=GenericityMode.STRICT_INTERIOR) -> ScalarField:
    return ScalarField(m, values, mode)


@dataclass(frozen=True)
class SignRule:
    t: float
    tie_policy: TiePolicy = TiePolicy.REJECT


def sign_at(f: ScalarField, v: int, rule: SignRule) -> int:
    """Sign of ``F(v) - t``.

    Under ``perturb-by-index`` a tie is read as ``F(v) = t + eps*(v+1)`` for an
    infinitesimal ``eps > 0``, which always resolves to +1.
    """
    x = f.values[v]
    if x > rule.t:
        return 1
    if x < rule.t:
        return -1
    if TiePolicy(rule.tie_policy) is TiePolicy.REJECT:
        raise TieRejected(f"F({v}) == t == {rule.t!r}")
    return 1


def is_regular_value(f: ScalarField, t: float) -> bool:
    # constant boundary arcs sit at vertex values, so one test covers both
    return not bool(np.any(f.values == t))


def field_range(f: ScalarField) -> tuple[float, float]:
    return float(f.values.min()), float(f.values.max())


def double_field(f: ScalarField, doubling: Doubling) -> ScalarField:
    """Carry ``f`` to both copies of a doubled mesh.

    A vertex inserted by the doubling refinement gets a value strictly between
    the smallest and largest values of its parents, chosen to differ from
    every existing value so the doubled field stays generic. Values strictly
    inside that range never change the sign pattern around a parent, so
    boundary valences double exactly.
    """
    taken = set(f.values.tolist())
    base = list(f.values)
    for ps in doubling.parents:
        lo, hi = min(f.values[p] for p in ps), max(f.values[p] for p in ps)
        for q in _INSERT_FRACTIONS:
            x = lo + (hi - lo) * q
            if lo < x < hi and x not in taken:
                break
        else:
            raise FieldError(f"no free value between {lo!r} and {hi!r}")
        taken.add(x)
        base.append(x)
    out = np.empty(doubling.mesh.vertex_count)
    cm = doubling.copy_map
    out[cm[:, 0]] = base
    out[cm[:, 1]] = base
    return ScalarField(doubling.mesh, out, f.mode)


_INSERT_FRACTIONS = (0.5, 0.381966011250105, 0.618033988749895,
                     *(k / 97 for k in range(1, 97)))
