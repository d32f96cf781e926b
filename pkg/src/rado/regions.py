"""Sub-surfaces cut out by a band of values, and the boundary-collapse quotient.

``clip(f, a, b)`` intersects every triangle with the slab ``a <= F <= b``.
Each piece is a convex polygon whose corners are mesh vertices strictly
inside the band or crossing points of mesh edges with the levels ``a`` and
``b``. Pieces are glued along shared corners and sides, giving a polygonal
complex whose Euler characteristic is that of the open band ``a < F < b``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .errors import FieldError, MeshError, MissingPositions, NonManifoldQuotient, NonRegularClipValue
from .field import GenericityMode, ScalarField, is_regular_value
from .mesh import Edge, HomologyRanks, Mesh, build_mesh, edge_key, euler_characteristic, gf2_rank

SIDE_KINDS = ("interior", "original-boundary", "level-a", "level-b")


@dataclass(frozen=True)
class RegionComponent:
    cells: tuple[int, ...]
    chi: int
    boundary_cycles: tuple[frozenset, ...]  # side kinds met by each boundary cycle


@dataclass(frozen=True)
class ClippedComplex:
    field: ScalarField = field(repr=False)
    a: float
    b: float
    points: tuple[tuple, ...]
    cells: tuple[tuple[int, ...], ...]
    cell_triangle: tuple[int, ...]
    sides: tuple[tuple[int, int], ...]
    side_kinds: tuple[str, ...]
    components: tuple[RegionComponent, ...]
    beta_a: int | None
    beta_b: int | None

    @property
    def chi(self) -> int:
        return len(self.points) - len(self.sides) + len(self.cells)

    def homology(self) -> HomologyRanks:
        """Mod-2 Betti numbers of the polygonal complex."""
        side_rows = [(1 << i) | (1 << j) for i, j in self.sides]
        side_index = {s: k for k, s in enumerate(self.sides)}
        cell_rows = []
        for poly in self.cells:
            row = 0
            for i in range(len(poly)):
                row |= 1 << side_index[_side(poly[i], poly[(i + 1) % len(poly)])]
            cell_rows.append(row)
        r1, r2 = gf2_rank(side_rows), gf2_rank(cell_rows)
        return HomologyRanks(len(self.points) - r1, len(self.sides) - r1 - r2,
                             len(self.cells) - r2)

    def point_positions(self) -> np.ndarray:
        m, vals = self.field.mesh, self.field.values
        if m.positions is None:
            raise MissingPositions("clipped complex of a mesh without positions")
        out = np.empty((len(self.points), 3))
        for i, p in enumerate(self.points):
            if p[0] == "v":
                out[i] = m.positions[p[1]]
            else:
                (u, w), lvl = p[1], p[2]
                lam = (lvl - vals[u]) / (vals[w] - vals[u])
                out[i] = m.positions[u] + lam * (m.positions[w] - m.positions[u])
        return out

    def triangulate(self) -> Mesh:
        """Fan-triangulate every cell into a plain triangle mesh on the same points."""
        tris = []
        for poly in self.cells:
            tris += [(poly[0], poly[i], poly[i + 1]) for i in range(1, len(poly) - 1)]
        return build_mesh(tris, vertex_count=len(self.points))


def _side(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


def _check_level(f: ScalarField, x: float, name: str) -> None:
    if math.isinf(x):
        return
    if not is_regular_value(f, x):
        raise NonRegularClipValue(f"{name}={x!r} is a vertex value")


def clip(f: ScalarField, a: float, b: float) -> ClippedComplex:
    """Polygonal complex of ``{a <= F <= b}``; ``a`` may be -inf and ``b`` +inf.

    Raises
    ------
    NonRegularClipValue
        If a finite end equals some vertex value.
    """
    a, b = float(a), float(b)
    if not a < b:
        raise ValueError(f"need a < b, got {a!r}, {b!r}")
    _check_level(f, a, "a")
    _check_level(f, b, "b")
    m, vals = f.mesh, f.values
    bd = set(m.boundary_edges)

    point_id: dict[tuple, int] = {}
    side_kind: dict[tuple[int, int], str] = {}
    side_count: dict[tuple[int, int], int] = defaultdict(int)
    cells, cell_tri = [], []

    def pid(key):
        if key not in point_id:
            point_id[key] = len(point_id)
        return point_id[key]

    for ti, tri in enumerate(m.triangles):
        tri = [int(x) for x in tri]
        ring: list[tuple[tuple, str | None]] = []  # (point key, kind of side leaving it)
        for i in range(3):
            u, w = tri[i], tri[(i + 1) % 3]
            fu, fw = vals[u], vals[w]
            e = edge_key(u, w)
            on_edge = "original-boundary" if e in bd else "interior"
            if a < fu < b:
                ring.append((("v", u), on_edge))
            cuts = []
            for lvl, name in ((a, "level-a"), (b, "level-b")):
                if min(fu, fw) < lvl < max(fu, fw):
                    cuts.append(((lvl - fu) / (fw - fu), lvl, name))
            for _, lvl, name in sorted(cuts):
                # leaving the band past this level turns the next side into a chord
                exits = (fw > lvl) if name == "level-b" else (fw < lvl)
                ring.append((("x", e, lvl), name if exits else on_edge))
        if len(ring) < 3:
            continue
        poly = tuple(pid(k) for k, _ in ring)
        cells.append(poly)
        cell_tri.append(ti)
        for i, (_, kind) in enumerate(ring):
            s = _side(poly[i], poly[(i + 1) % len(poly)])
            side_count[s] += 1
            side_kind[s] = kind

    points = tuple(sorted(point_id, key=point_id.get))
    sides = tuple(sorted(side_kind))
    kinds = tuple(side_kind[s] for s in sides)
    for s in sides:
        expected = 2 if side_kind[s] == "interior" else 1
        if side_count[s] != expected:
            raise AssertionError(f"side {s} used {side_count[s]} times")

    components = _components(points, cells, sides, kinds)

    def beta(lvl):
        if math.isinf(lvl):
            return None
        return sum(1 for p in points if p[0] == "x" and p[2] == lvl and p[1] in bd)

    return ClippedComplex(f, a, b, points, tuple(cells), tuple(cell_tri), sides, kinds,
                          components, beta(a), beta(b))


def _components(points, cells, sides, kinds):
    parent = list(range(len(points)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for poly in cells:
        for p in poly[1:]:
            union(poly[0], p)
    by_root: dict[int, list[int]] = defaultdict(list)
    for ci, poly in enumerate(cells):
        by_root[find(poly[0])].append(ci)

    out = []
    for root, cis in sorted(by_root.items(), key=lambda kv: kv[1][0]):
        pts = {p for ci in cis for p in cells[ci]}
        comp_sides = [(s, k) for s, k in zip(sides, kinds) if s[0] in pts]
        chi = len(pts) - len(comp_sides) + len(cis)
        out.append(RegionComponent(tuple(cis), chi, _boundary_cycles(comp_sides)))
    return tuple(out)


def _boundary_cycles(comp_sides) -> tuple[frozenset, ...]:
    bsides = [(s, k) for s, k in comp_sides if k != "interior"]
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j), _ in bsides:
        parent[find(i)] = find(j)
    cycles: dict[int, set] = defaultdict(set)
    for (i, _), k in bsides:
        cycles[find(i)].add(k)
    return tuple(frozenset(v) for _, v in sorted(cycles.items()))


def region_euler(c: ClippedComplex) -> int:
    return c.chi


@dataclass(frozen=True)
class AnnulusReport:
    component_chi: tuple[int, ...]
    component_is_annulus: tuple[bool, ...]

    @property
    def passed(self) -> bool:
        return all(self.component_is_annulus)


def annulus_check(c: ClippedComplex) -> AnnulusReport:
    """Whether each component is an annulus bounded by two level circles.

    A component qualifies when its Euler characteristic is 0 and it has
    exactly two boundary cycles, each made only of level-a sides or only of
    level-b sides.
    """
    flags = []
    for comp in c.components:
        cyc = comp.boundary_cycles
        ok = (comp.chi == 0 and len(cyc) == 2
              and all(k in (frozenset({"level-a"}), frozenset({"level-b"})) for k in cyc))
        flags.append(ok)
    return AnnulusReport(tuple(comp.chi for comp in c.components), tuple(flags))


@dataclass(frozen=True)
class QuotientResult:
    mesh: Mesh
    field: ScalarField
    collapse_map: np.ndarray
    collapsed: tuple[tuple[tuple[int, ...], bool, int], ...]  # (vertices, was_cycle, new vertex)

    @property
    def closed_cycles(self) -> int:
        return sum(1 for _, cyc, _ in self.collapsed if cyc)


def quotient_constant_boundary(f: ScalarField) -> QuotientResult:
    """Collapse every constant boundary arc or circle of ``f`` to one vertex.

    A collapsed arc becomes a boundary vertex, a collapsed circle an interior
    vertex. The result is validated as a surface mesh and by its Euler
    characteristic, which must rise by one per collapsed circle.

    Raises
    ------
    NonManifoldQuotient
        If the naive identification does not yield a valid surface mesh.
    """
    m = f.mesh
    parent = list(range(m.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, w in f.relaxed_edges:
        parent[find(u)] = find(w)
    groups: dict[int, list[int]] = defaultdict(list)
    for v in range(m.vertex_count):
        groups[find(v)].append(v)
    edge_count: dict[int, int] = defaultdict(int)
    for u, _ in f.relaxed_edges:
        edge_count[find(u)] += 1

    new_id = np.empty(m.vertex_count, dtype=int)
    keep = [g for g in groups.values() if len(g) == 1]
    merged = [g for g in groups.values() if len(g) > 1]
    for i, g in enumerate(keep):
        new_id[g[0]] = i
    collapsed = []
    for j, g in enumerate(merged):
        nid = len(keep) + j
        new_id[g] = nid
        collapsed.append((tuple(g), edge_count[find(g[0])] == len(g), nid))
    count = len(keep) + len(merged)

    tris = [tuple(new_id[list(t)]) for t in m.triangles]
    tris = [t for t in tris if len(set(t)) == 3]
    if len({tuple(sorted(t)) for t in tris}) != len(tris):
        raise NonManifoldQuotient("collapse creates duplicate triangles")
    positions = None
    if m.positions is not None:
        positions = np.zeros((count, 3))
        for v in range(m.vertex_count):
            positions[new_id[v]] += m.positions[v]
        sizes = np.bincount(new_id, minlength=count)
        positions /= sizes[:, None]
    try:
        q = build_mesh(tris, positions=positions, vertex_count=count)
    except MeshError as exc:
        raise NonManifoldQuotient(f"collapse is not a surface: {exc}") from exc
    cycles = sum(1 for _, cyc, _ in collapsed if cyc)
    if euler_characteristic(q) != euler_characteristic(m) + cycles:
        raise NonManifoldQuotient("collapse changed the topology unexpectedly")
    for _, cyc, nid in collapsed:
        if q.is_boundary_vertex(nid) == cyc:
            raise NonManifoldQuotient(f"collapsed vertex {nid} landed on the wrong side")

    vals = np.empty(count)
    vals[new_id] = f.values
    relaxed_left = any(vals[u] == vals[w] for u, w in q.boundary_edges)
    mode = GenericityMode.RELAXED_BOUNDARY if relaxed_left else GenericityMode.STRICT_INTERIOR
    try:
        qf = ScalarField(q, vals, mode)
    except FieldError as exc:
        raise NonManifoldQuotient(f"collapse produced a level interior edge: {exc}") from exc
    return QuotientResult(q, qf, new_id, tuple(collapsed))
