"""Deterministic example surfaces and fields.

Every generator returns ``(mesh, field)`` except the pure-mesh fixtures.
Angular samples are offset by an irrational fraction of a step so that no
sample lands on a zero or a symmetry axis of the sampled function.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ResolutionTooCoarse
from .field import GenericityMode, ScalarField, attach_field
from .mesh import Mesh, build_mesh

ANGLE_OFFSET = (math.sqrt(5) - 1) / 4  # ~0.309 of a step
GOLDEN = (math.sqrt(5) - 1) / 2


def octahedron() -> Mesh:
    pos = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    tris = [(0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4),
            (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5)]
    return build_mesh(tris, positions=pos)


def torus7() -> Mesh:
    """The 7-vertex triangulation of the torus."""
    tris = []
    for i in range(7):
        tris.append((i, (i + 1) % 7, (i + 3) % 7))
        tris.append((i, (i + 3) % 7, (i + 2) % 7))
    return build_mesh(tris)


def square_disk() -> Mesh:
    return build_mesh([(0, 1, 2), (0, 2, 3)], positions=[(0, 0), (1, 0), (1, 1), (0, 1)])


def _polar_disk(n: int, rings: int, radius=1.0):
    """Center vertex 0 plus ``rings`` concentric rings of ``n`` vertices each."""
    theta = 2 * math.pi * (np.arange(n) + ANGLE_OFFSET) / n
    pts = [(0.0, 0.0)]
    for j in range(1, rings + 1):
        r = radius * j / rings
        pts += [(r * math.cos(t), r * math.sin(t)) for t in theta]
    tris = [(0, 1 + i, 1 + (i + 1) % n) for i in range(n)]
    for j in range(rings - 1):
        a, b = 1 + j * n, 1 + (j + 1) * n
        for i in range(n):
            i2 = (i + 1) % n
            tris.append((a + i, b + i, b + i2))
            tris.append((a + i, b + i2, a + i2))
    return np.array(pts), tris


def gen_disk_harmonic(k: int, n: int, rings: int = 1) -> tuple[Mesh, ScalarField]:
    """Re(z^k) on a polar triangulation of the unit disk.

    The center vertex has valence 2k and the boundary carries k minima and
    k maxima of the restricted field.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 4 * k:
        raise ResolutionTooCoarse(f"n={n} cannot resolve the {2 * k} sign sectors of Re(z^{k}); need n >= {4 * k}")
    pts, tris = _polar_disk(n, rings)
    z = pts[:, 0] + 1j * pts[:, 1]
    vals = (z ** k).real
    vals[0] = 0.0
    return _finish(tris, np.column_stack([pts, np.zeros(len(pts))]), vals)


def gen_branched(Q: int, d: int, n: int, axis: str = "first-coordinate",
                 rings: int = 1) -> tuple[Mesh, ScalarField]:
    """Pull back a coordinate along the branched map z -> (z^Q, Re z^d).

    ``axis="first-coordinate"`` reads Re(z^Q), a level plane transverse to
    the image; ``axis="height"`` reads Re(z^d), tangent to it. Positions
    are the image points in R^3, so the star of the center winds Q times.
    """
    if Q < 1 or d < 1:
        raise ValueError("Q and d must be >= 1")
    if n < 4 * max(Q, d):
        raise ResolutionTooCoarse(f"n={n} too coarse for Q={Q}, d={d}")
    pts, tris = _polar_disk(n, rings)
    z = pts[:, 0] + 1j * pts[:, 1]
    zq, zd = z ** Q, (z ** d).real
    image = np.column_stack([zq.real, zq.imag, zd])
    if axis == "first-coordinate":
        vals = zq.real.copy()
    elif axis == "height":
        vals = zd.copy()
    else:
        raise ValueError(f"unknown axis {axis!r}")
    vals[0] = 0.0
    return _finish(tris, image, vals)


def _finish(tris, positions, values, mode=GenericityMode.STRICT_INTERIOR):
    m = build_mesh(tris, positions=positions)
    return m, attach_field(m, values, mode)


def _tilted_height(pos: np.ndarray, tilt: float) -> np.ndarray:
    return pos[:, 2] + tilt * (pos[:, 0] + GOLDEN * pos[:, 1])


def gen_closed(genus: int, n: int = 2, tilt: float = 0.1) -> tuple[Mesh, ScalarField]:
    """Boundary of a slab of unit cubes with ``genus`` square holes, tilted height.

    Cubes fill ``[0, 2g+1] x [0, 3] x [0, 1]`` minus the columns above
    ``(2i+1, 1)``. Each unit face is cut into ``n x n`` squares, each split
    into two triangles. The tilted height has one minimum, one maximum and
    total saddle multiplicity ``2g``.
    """
    if not 0 <= genus <= 4:
        raise ValueError("genus must be in 0..4")
    if n < 1:
        raise ValueError("n must be >= 1")
    nx, ny = 2 * genus + 1, 3
    filled = {(i, j, 0) for i in range(nx) for j in range(ny)}
    filled -= {(2 * h + 1, 1, 0) for h in range(genus)}

    vid: dict[tuple[int, int, int], int] = {}

    def vert(p):
        if p not in vid:
            vid[p] = len(vid)
        return vid[p]

    tris = []
    for c in sorted(filled):
        for axis in range(3):
            for side in (0, 1):
                nb = list(c)
                nb[axis] += 1 if side else -1
                if tuple(nb) in filled:
                    continue
                # face of cell c orthogonal to `axis`, outward normal along +/- axis
                u_ax, v_ax = [a for a in range(3) if a != axis]
                if side == 0:
                    u_ax, v_ax = v_ax, u_ax
                base = [x * n for x in c]
                base[axis] += n * side
                for iu in range(n):
                    for iv in range(n):
                        corners = []
                        for du, dv in ((0, 0), (1, 0), (1, 1), (0, 1)):
                            p = list(base)
                            p[u_ax] += iu + du
                            p[v_ax] += iv + dv
                            corners.append(vert(tuple(p)))
                        a, b, cc, d = corners
                        if (axis == 2) == (side == 1):
                            tris += [(a, b, cc), (a, cc, d)]
                        else:
                            tris += [(a, b, cc), (a, cc, d)]
    pos = np.zeros((len(vid), 3))
    for p, i in vid.items():
        pos[i] = np.array(p, dtype=float) / n
    return _finish(tris, pos, _tilted_height(pos, tilt))


def gen_torus(n: int = 24, m: int = 12, R: float = 2.0, r: float = 0.8,
              tilt: float = 0.05) -> tuple[Mesh, ScalarField]:
    """Parametric torus standing on its side, with a slightly tilted height.

    The height has one minimum, two simple saddles and one maximum.
    """
    if n < 3 or m < 3:
        raise ValueError("need n, m >= 3")
    u = 2 * math.pi * (np.arange(n) + ANGLE_OFFSET) / n
    v = 2 * math.pi * (np.arange(m) + ANGLE_OFFSET) / m
    pos = np.array([((R + r * math.cos(b)) * math.cos(a), r * math.sin(b),
                     (R + r * math.cos(b)) * math.sin(a)) for a in u for b in v])
    idx = lambda i, j: (i % n) * m + (j % m)  # noqa: E731
    tris = []
    for i in range(n):
        for j in range(m):
            tris.append((idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)))
            tris.append((idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)))
    return _finish(tris, pos, _tilted_height(pos, tilt))


def gen_mobius(n: int = 15, rows: int = 2, R: float = 1.0, width: float = 0.4,
               tilt: float = 0.1) -> tuple[Mesh, ScalarField]:
    """Mobius band embedded in R^3, with a tilted horizontal coordinate as field."""
    if n < 5 or rows < 1:
        raise ValueError("need n >= 5 and rows >= 1")
    u = 2 * math.pi * (np.arange(n) + ANGLE_OFFSET) / n
    s = np.linspace(-width, width, rows + 1)

    def idx(i, j):
        if i == n:
            i, j = 0, rows - j
        return i * (rows + 1) + j

    pos = np.array([((R + b * math.cos(a / 2)) * math.cos(a),
                     (R + b * math.cos(a / 2)) * math.sin(a),
                     b * math.sin(a / 2)) for a in u for b in s])
    tris = []
    for i in range(n):
        for j in range(rows):
            tris.append((idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)))
            tris.append((idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)))
    vals = pos[:, 0] + tilt * (pos[:, 2] + GOLDEN * pos[:, 1])
    return _finish(tris, pos, vals)


def _jitter(count: int, amplitude: float) -> np.ndarray:
    # deterministic, distinct offsets in (-amplitude, amplitude)
    k = np.arange(1, count + 1)
    return amplitude * (2 * ((k * GOLDEN) % 1.0) - 1)


def gen_strip(nx: int = 6, ny: int = 6, jitter: float = 0.2) -> tuple[Mesh, ScalarField]:
    """Unit square with F = y, constant on the bottom and top edges.

    Vertices off the bottom and top rows are shifted vertically by less than
    ``jitter`` row spacings so no interior edge is level. The field is in
    relaxed-boundary mode.
    """
    if nx < 2 or ny < 2:
        raise ValueError("need nx, ny >= 2")
    xs = np.linspace(0, 1, nx + 1)
    ys = np.linspace(0, 1, ny + 1)
    pts = np.array([(x, y) for y in ys for x in xs])
    inner = (pts[:, 1] > 0) & (pts[:, 1] < 1)
    pts[inner, 1] += _jitter(int(inner.sum()), jitter / ny)
    idx = lambda i, j: j * (nx + 1) + i  # noqa: E731
    tris = []
    for j in range(ny):
        for i in range(nx):
            tris.append((idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)))
            tris.append((idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)))
    pos = np.column_stack([pts, np.zeros(len(pts))])
    return _finish(tris, pos, pts[:, 1].copy(), GenericityMode.RELAXED_BOUNDARY)


def gen_annulus(n: int = 16, rings: int = 4, tilt: float = 0.0,
                jitter: float = 0.2) -> tuple[Mesh, ScalarField]:
    """Cylinder ``x^2 + y^2 = 1, 0 <= z <= 1`` with the axial height as field.

    With ``tilt == 0`` both boundary circles are level and the field is in
    relaxed-boundary mode; a nonzero tilt makes it strict.
    """
    if n < 3 or rings < 1:
        raise ValueError("need n >= 3 and rings >= 1")
    theta = 2 * math.pi * (np.arange(n) + ANGLE_OFFSET) / n
    zs = np.linspace(0, 1, rings + 1)
    pos = np.array([(math.cos(t), math.sin(t), z) for z in zs for t in theta])
    inner = (pos[:, 2] > 0) & (pos[:, 2] < 1)
    pos[inner, 2] += _jitter(int(inner.sum()), jitter / rings)
    tris = []
    for j in range(rings):
        a, b = j * n, (j + 1) * n
        for i in range(n):
            i2 = (i + 1) % n
            tris.append((a + i, a + i2, b + i2))
            tris.append((a + i, b + i2, b + i))
    vals = pos[:, 2] + tilt * (pos[:, 0] + GOLDEN * pos[:, 1])
    mode = GenericityMode.RELAXED_BOUNDARY if tilt == 0 else GenericityMode.STRICT_INTERIOR
    return _finish(tris, pos, vals, mode)


def gen_planar_annulus(n: int = 16, rings: int = 3, r_in: float = 0.5,
                       r_out: float = 1.0, wobble: float = 0.3) -> tuple[Mesh, ScalarField]:
    """Flat annulus with F = (r - r_in)(1 + wobble cos(theta)).

    F is zero on the whole inner circle (relaxed-boundary mode) and strictly
    increasing along every radius.
    """
    theta = 2 * math.pi * (np.arange(n) + ANGLE_OFFSET) / n
    rs = np.linspace(r_in, r_out, rings + 1)
    pts = np.array([(r * math.cos(t), r * math.sin(t)) for r in rs for t in theta])
    tris = []
    for j in range(rings):
        a, b = j * n, (j + 1) * n
        for i in range(n):
            i2 = (i + 1) % n
            tris.append((a + i, a + i2, b + i2))
            tris.append((a + i, b + i2, b + i))
    r = np.repeat(rs, n)
    th = np.tile(theta, rings + 1)
    vals = (r - r_in) * (1 + wobble * np.cos(th))
    vals[:n] = 0.0
    pos = np.column_stack([pts, np.zeros(len(pts))])
    return _finish(tris, pos, vals, GenericityMode.RELAXED_BOUNDARY)


def gen_capped_sphere(n_lat: int = 8, n_lon: int = 16, cut: float = 0.5,
                      tilt: float = 0.3) -> tuple[Mesh, ScalarField]:
    """Unit sphere with the cap ``z > cut`` removed, field ``z + tilt * x``.

    The lowest point of the boundary circle is not a local minimum of the
    field, which decreases into the surface there.
    """
    phi_top = math.acos(cut)
    phis = np.linspace(phi_top, math.pi, n_lat + 1)[:-1]
    theta = 2 * math.pi * (np.arange(n_lon) + ANGLE_OFFSET) / n_lon
    pos = [(math.sin(p) * math.cos(t), math.sin(p) * math.sin(t), math.cos(p))
           for p in phis for t in theta]
    pos.append((0.0, 0.0, -1.0))
    pos = np.array(pos)
    south = len(pos) - 1
    tris = []
    for j in range(n_lat - 1):
        a, b = j * n_lon, (j + 1) * n_lon
        for i in range(n_lon):
            i2 = (i + 1) % n_lon
            tris.append((a + i, b + i, b + i2))
            tris.append((a + i, b + i2, a + i2))
    last = (n_lat - 1) * n_lon
    for i in range(n_lon):
        tris.append((last + i, south, last + (i + 1) % n_lon))
    vals = pos[:, 2] + tilt * (pos[:, 0] + 0.1 * GOLDEN * pos[:, 1])
    return _finish(tris, pos, vals)


def boundary_saddle_fan() -> tuple[Mesh, ScalarField]:
    """Three-triangle disk whose apex is a boundary vertex of valence 3."""
    pos = [(0, 0)] + [(math.cos(a), math.sin(a)) for a in np.linspace(0, math.pi, 4)]
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 4)]
    vals = [0.0, 1.0, -1.0, 2.0, -2.0]
    return _finish(tris, np.column_stack([np.array(pos), np.zeros(5)]), vals)


def gen_random_field(m: Mesh, seed: int = 0) -> ScalarField:
    """Distinct uniform values in [0, 1), reproducible from ``seed``."""
    rng = np.random.default_rng(seed)
    while True:
        vals = rng.random(m.vertex_count)
        if len(np.unique(vals)) == len(vals):
            return attach_field(m, vals)


GENERATORS = {
    "disk-harmonic": gen_disk_harmonic,
    "branched": gen_branched,
    "closed": gen_closed,
    "torus": gen_torus,
    "mobius": gen_mobius,
    "strip": gen_strip,
    "annulus": gen_annulus,
    "planar-annulus": gen_planar_annulus,
    "capped-sphere": gen_capped_sphere,
    "boundary-saddle": boundary_saddle_fan,
}
