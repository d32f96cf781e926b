"""Level sets ``F^-1(t)`` as graphs, and the identities they satisfy.

A level set of a PL field is a graph embedded in the surface. Its nodes are
the mesh vertices with ``F = t`` (one node per vertex, isolated or not) and
the points where the level crosses a boundary edge. Everything else is a
chain of edge crossings, which becomes an arc between nodes or a closed loop
carrying no node.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable

import numpy as np

from .classify import BoundaryRestriction, ClassificationSummary, Kind, classify_vertex
from .errors import RelaxedBoundaryAtLevel
from .field import ScalarField
from .mesh import Edge, homology_z2

PointKey = tuple  # ("v", vertex) or ("e", edge)


@dataclass(frozen=True)
class NetworkNode:
    key: PointKey
    valence: int
    vertex: int | None = None
    edge: Edge | None = None

    @property
    def synthetic(self) -> bool:
        """True for a node placed where the level crosses a boundary edge."""
        return self.vertex is None


@dataclass(frozen=True)
class Arc:
    start: int
    end: int
    path: tuple[PointKey, ...]


@dataclass(frozen=True)
class LevelNetwork:
    field: ScalarField = field(repr=False)
    t: float
    nodes: tuple[NetworkNode, ...]
    arcs: tuple[Arc, ...]
    loops: tuple[tuple[PointKey, ...], ...]

    def valence_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(n.valence for n in self.nodes).items()))

    @property
    def isolated_nodes(self) -> tuple[int, ...]:
        return tuple(i for i, n in enumerate(self.nodes) if n.valence == 0)

    def point_position(self, key: PointKey) -> np.ndarray:
        pos = self.field.mesh.positions
        if key[0] == "v":
            return pos[key[1]]
        u, w = key[1]
        fu, fw = self.field.values[u], self.field.values[w]
        lam = (self.t - fu) / (fw - fu)
        return pos[u] + lam * (pos[w] - pos[u])


def _triangle_segments(f: ScalarField, t: float):
    """Yield one segment (pair of point keys) per triangle the level passes through."""
    vals = f.values
    bd = set(f.mesh.boundary_edges)
    for tri in f.mesh.triangles:
        tri = tuple(int(x) for x in tri)
        s = [int(np.sign(vals[x] - t)) for x in tri]
        zeros = [tri[i] for i in range(3) if s[i] == 0]
        crossed = []
        for i in range(3):
            a, b = tri[i], tri[(i + 1) % 3]
            if s[i] * s[(i + 1) % 3] < 0:
                crossed.append(("e", (min(a, b), max(a, b))))
        if len(zeros) >= 2:
            e = (min(zeros[:2]), max(zeros[:2]))
            if e in bd:
                raise RelaxedBoundaryAtLevel(f"boundary edge {e} lies in the level set t={t!r}")
            raise AssertionError("interior edge in a level set of a generic field")
        if len(zeros) == 1 and crossed:
            yield ("v", zeros[0]), crossed[0]
        elif len(crossed) == 2:
            yield crossed[0], crossed[1]


def extract_level_network(f: ScalarField, t: float) -> LevelNetwork:
    """Build the level graph of ``f`` at ``t``.

    Raises
    ------
    RelaxedBoundaryAtLevel
        If a constant boundary arc of a relaxed field sits at height ``t``.
    """
    t = float(t)
    m = f.mesh
    vals = f.values
    for u, w in f.relaxed_edges:
        if vals[u] == t:
            raise RelaxedBoundaryAtLevel(f"boundary edge {(u, w)} lies in the level set t={t!r}")

    incident: dict[Hashable, list[int]] = {}
    segments = list(_triangle_segments(f, t))
    for i, (p, q) in enumerate(segments):
        incident.setdefault(p, []).append(i)
        incident.setdefault(q, []).append(i)

    bd = set(m.boundary_edges)
    node_keys = [("v", int(v)) for v in np.flatnonzero(vals == t)]
    node_keys += sorted(k for k in incident if k[0] == "e" and k[1] in bd)
    node_index = {k: i for i, k in enumerate(node_keys)}
    nodes = tuple(
        NetworkNode(k, len(incident.get(k, ())),
                    vertex=k[1] if k[0] == "v" else None,
                    edge=k[1] if k[0] == "e" else None)
        for k in node_keys
    )

    used = [False] * len(segments)

    def walk(start: PointKey, seg: int):
        path = [start]
        cur = start
        while True:
            used[seg] = True
            p, q = segments[seg]
            cur = q if p == cur else p
            path.append(cur)
            if cur in node_index or cur == start:
                return path
            nxt = [s for s in incident[cur] if s != seg]
            seg = nxt[0]

    arcs = []
    for k in node_keys:
        for seg in incident.get(k, ()):
            if not used[seg]:
                path = walk(k, seg)
                arcs.append(Arc(node_index[path[0]], node_index[path[-1]], tuple(path)))
    loops = []
    for seg in range(len(segments)):
        if not used[seg]:
            start = segments[seg][0]
            loops.append(tuple(walk(start, seg)))
    return LevelNetwork(f, t, nodes, tuple(arcs), tuple(loops))


@dataclass(frozen=True)
class NetworkReport:
    kind: str
    t: float
    chi: int
    d0: int
    d1: int
    d0_nonisolated: int
    histogram: dict[int, int]
    lhs: Fraction
    rhs: Fraction
    passed: bool
    chain: tuple[Fraction, ...] = ()
    details: dict = field(default_factory=dict)


def _graph_betti(x: LevelNetwork) -> tuple[int, int]:
    parent = list(range(len(x.nodes)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for arc in x.arcs:
        parent[find(arc.start)] = find(arc.end)
    comps = len({find(i) for i in range(len(x.nodes))})
    d0 = comps + len(x.loops)
    d1 = len(x.arcs) - len(x.nodes) + comps + len(x.loops)
    return d0, d1


def network_euler(x: LevelNetwork) -> NetworkReport:
    """Compare the node-valence sum with the Euler characteristic of the graph."""
    d0, d1 = _graph_betti(x)
    hist = x.valence_histogram()
    lhs = sum((Fraction(2 - v, 2) * c for v, c in hist.items()), Fraction(0))
    rhs = Fraction(d0 - d1)
    return NetworkReport("network-euler", x.t, d0 - d1, d0, d1, d0 - hist.get(0, 0),
                         hist, lhs, rhs, lhs == rhs)


def _branching(hist: dict[int, int]) -> Fraction:
    return sum((Fraction(n - 2, 2) * c for n, c in hist.items() if n >= 3), Fraction(0))


def counting_identity(x: LevelNetwork) -> NetworkReport:
    """Branching excess of the nodes against ends, cycles and components."""
    d0, d1 = _graph_betti(x)
    hist = x.valence_histogram()
    d0x = d0 - hist.get(0, 0)
    lhs = _branching(hist)
    rhs = Fraction(hist.get(1, 0), 2) + d1 - d0x
    return NetworkReport("counting-identity", x.t, d0 - d1, d0, d1, d0x, hist, lhs, rhs, lhs == rhs)


def slice_bound(f: ScalarField, t: float, extrema_rule: str = "off-level",
                summary: ClassificationSummary | None = None) -> NetworkReport:
    """Bound the branching of one level set by topology and extrema.

    The chain compared is::

        branching + d0(X minus isolated) <= |ends|/2 + d1(M) + |S|
                                        <= |J|/2 + d1(M) + |S|
                                        <= k/2 + d1(M) + |S|

    where J is the set of boundary points of the level that are not extrema
    of F on the boundary and k counts all boundary points of the level. With
    ``extrema_rule="off-level"`` S holds every interior local extremum not on
    the level; with ``"sided"`` only minima below and maxima above it.
    Passing a precomputed ``summary`` avoids reclassifying per level.
    """
    if extrema_rule not in ("off-level", "sided"):
        raise ValueError(f"unknown extrema_rule {extrema_rule!r}")
    record = summary.record if summary is not None else (lambda v: classify_vertex(f, v))
    x = extract_level_network(f, t)
    m = f.mesh
    vals = f.values
    d0, d1x = _graph_betti(x)
    hist = x.valence_histogram()
    d0x = d0 - hist.get(0, 0)
    branching = _branching(hist)
    lhs = branching + d0x
    d1m = homology_z2(m).d1

    s_star = []
    for v in m.interior_vertices():
        if vals[v] == t:
            continue
        r = record(v)
        if r.kind is Kind.LOCAL_MIN and (extrema_rule == "off-level" or vals[v] < t):
            s_star.append(v)
        elif r.kind is Kind.LOCAL_MAX and (extrema_rule == "off-level" or vals[v] > t):
            s_star.append(v)
    crossings = [n for n in x.nodes if n.synthetic]
    bd_at_t = [n.vertex for n in x.nodes if n.vertex is not None and m.is_boundary_vertex(n.vertex)]
    j_vertices = [v for v in bd_at_t
                  if record(v).boundary_restriction_kind is BoundaryRestriction.NEITHER]
    J = len(j_vertices) + len(crossings)
    k = len(bd_at_t) + len(crossings)
    base = d1m + len(s_star)
    chain = (lhs,
             Fraction(hist.get(1, 0), 2) + base,
             Fraction(J, 2) + base,
             Fraction(k, 2) + base)
    counting_ok = branching == Fraction(hist.get(1, 0), 2) + d1x - d0x
    ordered = all(a <= b for a, b in zip(chain, chain[1:]))
    return NetworkReport(
        "slice-bound", x.t, d0 - d1x, d0, d1x, d0x, hist, chain[0], chain[-1],
        ordered and counting_ok, chain,
        details={"d1_surface": d1m, "S": tuple(s_star), "J": J, "k": k,
                 "counting_identity_holds": counting_ok},
    )


def to_dot(x: LevelNetwork) -> str:
    """Graphviz rendering: one node per network node, one edge per arc."""
    lines = [f'graph level {{', f'  label="t={x.t!r}";']
    for i, n in enumerate(x.nodes):
        name = f"v{n.vertex}" if n.vertex is not None else f"e{n.edge[0]}_{n.edge[1]}"
        lines.append(f'  n{i} [label="{name}", valence={n.valence}];')
    for arc in x.arcs:
        lines.append(f"  n{arc.start} -- n{arc.end} [len={len(arc.path) - 1}];")
    for i, loop in enumerate(x.loops):
        lines.append(f'  loop{i} [shape=circle, label="loop", length={len(loop) - 1}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_obj_polylines(x: LevelNetwork) -> str:
    """Wavefront OBJ with one ``l`` record per arc and per loop."""
    keys: dict[PointKey, int] = {}
    out_v, out_l = [], []
    for path in [a.path for a in x.arcs] + list(x.loops):
        ids = []
        for k in path:
            if k not in keys:
                keys[k] = len(keys) + 1
                p = x.point_position(k)
                out_v.append("v " + " ".join(repr(float(c)) for c in p))
            ids.append(keys[k])
        out_l.append("l " + " ".join(map(str, ids)))
    for n in x.nodes:
        if n.valence == 0:
            keys[n.key] = len(keys) + 1
            p = x.point_position(n.key)
            out_v.append("v " + " ".join(repr(float(c)) for c in p))
            out_l.append(f"p {keys[n.key]}")
    return "\n".join(out_v + out_l) + "\n"
