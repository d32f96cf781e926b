"""Triangulated compact surfaces, possibly with boundary and non-orientable.

A :class:`Mesh` is purely combinatorial: a vertex count and a list of
triangles. Vertex positions may be attached but no invariant computed here
looks at them.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    DegenerateTriangle,
    EmptyBoundary,
    MeshError,
    NonManifoldEdge,
    PinchedVertex,
)

Edge = tuple[int, int]
Triangle = tuple[int, int, int]


def edge_key(u: int, w: int) -> Edge:
    return (u, w) if u < w else (w, u)


class Mesh:
    """Validated triangle mesh of a compact 2-manifold-with-boundary.

    Parameters
    ----------
    triangles : sequence of vertex-id triples
    positions : array_like, optional
        ``(V, 3)`` coordinates; 2D input is padded with zeros.
    vertex_count : int, optional
        Defaults to ``max id + 1``. Every vertex must be used by a triangle.

    Raises
    ------
    DegenerateTriangle
        A triangle repeats a vertex, or two triangles share all three.
    NonManifoldEdge
        An edge lies on three or more triangles.
    PinchedVertex
        The link of a vertex is not a single cycle or a single path.
    """

    def __init__(self, triangles, positions=None, vertex_count=None):
        tris = [tuple(int(i) for i in t) for t in triangles]
        if not tris:
            raise MeshError("empty triangle list")
        for t in tris:
            if len(t) != 3:
                raise MeshError(f"not a triangle: {t}")
            if min(t) < 0:
                raise MeshError(f"negative vertex id in {t}")
            if len(set(t)) != 3:
                raise DegenerateTriangle(f"repeated vertex in triangle {t}")
        n = max(max(t) for t in tris) + 1
        if vertex_count is not None:
            if vertex_count < n:
                raise MeshError(f"triangle references vertex {n - 1} >= vertex_count {vertex_count}")
            n = int(vertex_count)
        seen: dict[frozenset, int] = {}
        for k, t in enumerate(tris):
            key = frozenset(t)
            if key in seen:
                raise DegenerateTriangle(f"triangles {seen[key]} and {k} share all vertices {t}")
            seen[key] = k

        self.vertex_count = n
        self.triangles: tuple[Triangle, ...] = tuple(tris)
        if positions is not None:
            pos = np.asarray(positions, dtype=float)
            if pos.ndim != 2 or pos.shape[0] != n or pos.shape[1] not in (2, 3):
                raise MeshError(f"positions must have shape ({n}, 3), got {pos.shape}")
            if pos.shape[1] == 2:
                pos = np.column_stack([pos, np.zeros(n)])
            pos.setflags(write=False)
            self.positions = pos
        else:
            self.positions = None

        edge_tris: dict[Edge, list[int]] = defaultdict(list)
        for k, (a, b, c) in enumerate(tris):
            for u, w in ((a, b), (b, c), (c, a)):
                edge_tris[edge_key(u, w)].append(k)
        for e, ts in edge_tris.items():
            if len(ts) > 2:
                raise NonManifoldEdge(f"edge {e} lies on {len(ts)} triangles")
        self.edge_triangles: dict[Edge, tuple[int, ...]] = {
            e: tuple(ts) for e, ts in sorted(edge_tris.items())
        }
        self.edges: tuple[Edge, ...] = tuple(self.edge_triangles)
        self.boundary_edges: tuple[Edge, ...] = tuple(
            e for e, ts in self.edge_triangles.items() if len(ts) == 1
        )
        self.boundary_vertices = frozenset(v for e in self.boundary_edges for v in e)

        star: list[list[int]] = [[] for _ in range(n)]
        for k, t in enumerate(tris):
            for v in t:
                star[v].append(k)
        unused = [v for v in range(n) if not star[v]]
        if unused:
            raise MeshError(f"vertices not used by any triangle: {unused[:10]}")
        self.vertex_triangles: tuple[tuple[int, ...], ...] = tuple(tuple(s) for s in star)
        self._links = tuple(self._ordered_link(v) for v in range(n))
        self._boundary_cycles = None

    def _ordered_link(self, v: int) -> tuple[int, ...]:
        adj: dict[int, list[int]] = defaultdict(list)
        for k in self.vertex_triangles[v]:
            a, b = (u for u in self.triangles[k] if u != v)
            adj[a].append(b)
            adj[b].append(a)
        ends = sorted(u for u, nb in adj.items() if len(nb) == 1)
        is_bd = v in self.boundary_vertices
        if is_bd != bool(ends) or len(ends) not in (0, 2):
            raise PinchedVertex(f"link of vertex {v} is not a single cycle or path")
        start = ends[0] if ends else min(adj)
        order = [start]
        prev, cur = None, start
        while True:
            nxt = [u for u in adj[cur] if u != prev]
            if not nxt or (not ends and nxt[0] == start):
                break
            # a cycle node has two candidates on the first step
            prev, cur = cur, min(nxt) if prev is None else nxt[0]
            order.append(cur)
        if len(order) != len(adj):
            raise PinchedVertex(f"link of vertex {v} is disconnected")
        return tuple(order)

    def link(self, v: int) -> tuple[int, ...]:
        """Link vertices of ``v`` in cyclic order, or as a path for boundary vertices.

        For a boundary vertex the first and last entries are its two
        neighbours along the boundary.
        """
        return self._links[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._links[v]

    def is_boundary_vertex(self, v: int) -> bool:
        return v in self.boundary_vertices

    @property
    def is_closed(self) -> bool:
        return not self.boundary_edges

    @property
    def face_count(self) -> int:
        return len(self.triangles)

    def interior_vertices(self) -> list[int]:
        return [v for v in range(self.vertex_count) if v not in self.boundary_vertices]

    def __repr__(self):
        return (f"Mesh(V={self.vertex_count}, E={len(self.edges)}, F={len(self.triangles)}, "
                f"boundary_edges={len(self.boundary_edges)})")


def build_mesh(triangles: Sequence[Sequence[int]], positions=None, vertex_count=None) -> Mesh:
    """Validate ``triangles`` and return a :class:`Mesh`."""
    return Mesh(triangles, positions=positions, vertex_count=vertex_count)


def euler_characteristic(m: Mesh) -> int:
    return m.vertex_count - len(m.edges) + len(m.triangles)


def connected_components(m: Mesh) -> list[list[int]]:
    """Vertex sets of the connected components, each sorted, ordered by smallest id."""
    parent = list(range(m.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, w in m.edges:
        ru, rw = find(u), find(w)
        if ru != rw:
            parent[max(ru, rw)] = min(ru, rw)
    groups: dict[int, list[int]] = defaultdict(list)
    for v in range(m.vertex_count):
        groups[find(v)].append(v)
    return sorted(groups.values(), key=lambda g: g[0])


def boundary_components(m: Mesh) -> list[list[int]]:
    """Boundary cycles as vertex lists; the closing edge is implied.

    Every boundary edge belongs to exactly one returned cycle.
    """
    if m._boundary_cycles is None:
        nbr: dict[int, list[int]] = defaultdict(list)
        for u, w in m.boundary_edges:
            nbr[u].append(w)
            nbr[w].append(u)
        seen = set()
        cycles = []
        for s in sorted(nbr):
            if s in seen:
                continue
            cyc = [s]
            seen.add(s)
            prev, cur = s, min(nbr[s])
            while cur != s:
                cyc.append(cur)
                seen.add(cur)
                a, b = nbr[cur]
                prev, cur = cur, (b if a == prev else a)
            cycles.append(cyc)
        m._boundary_cycles = cycles
    return [list(c) for c in m._boundary_cycles]


class Doubling(NamedTuple):
    """Result of :func:`double`.

    ``index_map[v] = (a, b)`` gives the two copies of original vertex ``v``
    (equal for boundary vertices). ``parents`` lists, for every vertex the
    preparatory refinement inserted, the original vertices it averages.
    """

    mesh: Mesh
    index_map: np.ndarray
    parents: tuple[tuple[int, ...], ...]
    copy_map: np.ndarray


def _refine_for_doubling(m: Mesh):
    """Split interior chords between boundary vertices and cone lone triangles.

    Gluing two copies along boundary vertex ids is only simplicial when no
    edge or triangle has all its vertices on the boundary without lying on it.
    """
    bd = m.boundary_vertices
    bd_edges = set(m.boundary_edges)
    tris = [list(t) for t in m.triangles]
    parents: list[tuple[int, ...]] = []
    next_id = m.vertex_count

    chords = [e for e in m.edges if e not in bd_edges and e[0] in bd and e[1] in bd]
    for u, w in chords:
        mid = next_id
        next_id += 1
        parents.append((u, w))
        new = []
        for t in tris:
            if u in t and w in t:
                x = next(v for v in t if v != u and v != w)
                # keep the orientation of t
                i = t.index(u)
                if t[(i + 1) % 3] == w:
                    new.append([u, mid, x])
                    new.append([mid, w, x])
                else:
                    new.append([u, x, mid])
                    new.append([mid, x, w])
            else:
                new.append(t)
        tris = new

    out = []
    for t in tris:
        if all(v in bd for v in t) and all(edge_key(t[i], t[(i + 1) % 3]) in bd_edges for i in range(3)):
            c = next_id
            next_id += 1
            parents.append(tuple(t))
            a, b, cc = t
            out += [[a, b, c], [b, cc, c], [cc, a, c]]
        else:
            out.append(t)
    return out, parents, next_id


def double(m: Mesh) -> Doubling:
    """Glue two copies of ``m`` along the boundary into a closed surface.

    Copy B carries reversed triangle orientation. Boundary vertices are
    shared; interior vertices are duplicated. Works for non-orientable input.

    Raises
    ------
    EmptyBoundary
        If ``m`` is already closed.
    """
    if m.is_closed:
        raise EmptyBoundary("cannot double a closed mesh")
    tris, parents, nv = _refine_for_doubling(m)
    bd = m.boundary_vertices
    copy_map = np.empty((nv, 2), dtype=int)
    nxt = nv
    for v in range(nv):
        copy_map[v, 0] = v
        if v in bd:
            copy_map[v, 1] = v
        else:
            copy_map[v, 1] = nxt
            nxt += 1
    out = [tuple(t) for t in tris]
    out += [tuple(int(copy_map[v, 1]) for v in reversed(t)) for t in tris]
    pos = None
    if m.positions is not None:
        base = [m.positions[v] for v in range(m.vertex_count)]
        base += [np.mean([m.positions[p] for p in ps], axis=0) for ps in parents]
        base = np.array(base)
        pos = np.empty((nxt, 3))
        pos[copy_map[:, 0]] = base
        pos[copy_map[:, 1]] = base
    dm = Mesh(out, positions=pos, vertex_count=nxt)
    return Doubling(dm, copy_map[: m.vertex_count].copy(), tuple(parents), copy_map)


@dataclass(frozen=True)
class HomologyRanks:
    d0: int
    d1: int
    d2: int

    @property
    def euler(self) -> int:
        return self.d0 - self.d1 + self.d2


def gf2_rank(rows) -> int:
    """Rank over GF(2) of row vectors given as Python int bitmasks."""
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            h = r.bit_length() - 1
            p = pivots.get(h)
            if p is None:
                pivots[h] = r
                rank += 1
                break
            r ^= p
    return rank


def homology_z2(m: Mesh) -> HomologyRanks:
    """Z2 Betti numbers from boundary-matrix ranks.

    The ranks path is checked against component counting and the Euler
    characteristic; a mismatch means a bug, not bad input. Meshes are
    immutable, so the result is cached on the mesh.
    """
    cached = m.__dict__.get("_homology")
    if cached is not None:
        return cached
    eidx = {e: i for i, e in enumerate(m.edges)}
    r1 = gf2_rank((1 << u) | (1 << w) for u, w in m.edges)
    r2 = gf2_rank(
        (1 << eidx[edge_key(a, b)]) | (1 << eidx[edge_key(b, c)]) | (1 << eidx[edge_key(c, a)])
        for a, b, c in m.triangles
    )
    V, E, F = m.vertex_count, len(m.edges), len(m.triangles)
    d0 = V - r1
    d1 = E - r1 - r2
    d2 = F - r2

    comps = connected_components(m)
    closed = sum(1 for c in comps if not any(v in m.boundary_vertices for v in c))
    if d0 != len(comps) or d2 != closed or d1 != d0 + d2 - euler_characteristic(m):
        raise RuntimeError(f"inconsistent Z2 homology: ranks ({d0},{d1},{d2}), "
                           f"components {len(comps)}, closed {closed}")
    m._homology = HomologyRanks(d0, d1, d2)
    return m._homology
