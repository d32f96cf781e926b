"""Mesh and field files: OFF and OBJ meshes, plain-text field sidecars."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import FieldError, MeshError, NonGenericInteriorEdge
from .field import GenericityMode, ScalarField
from .mesh import Mesh, build_mesh


def _data_lines(text: str):
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            yield line


def read_off(path) -> Mesh:
    """Read a triangle mesh from an OFF file. Non-triangular faces are rejected."""
    try:
        return _parse_off(path)
    except (ValueError, IndexError, StopIteration) as exc:
        raise MeshError(f"{path}: malformed OFF ({str(exc) or 'truncated file'})") from exc


def _parse_off(path) -> Mesh:
    lines = _data_lines(Path(path).read_text())
    header = next(lines, None)
    if header is None or not header.startswith("OFF"):
        raise MeshError(f"{path}: not an OFF file")
    rest = header[3:].split()
    counts = rest if rest else next(lines).split()
    nv, nf = int(counts[0]), int(counts[1])
    pos = np.array([[float(x) for x in next(lines).split()[:3]] for _ in range(nv)]).reshape(nv, 3)
    tris = []
    for _ in range(nf):
        parts = next(lines).split()
        k = int(parts[0])
        if k != 3:
            raise MeshError(f"{path}: face with {k} vertices; only triangles are supported")
        tris.append([int(x) for x in parts[1:4]])
    return build_mesh(tris, positions=pos, vertex_count=nv)


def write_off(path, positions, faces) -> None:
    """Write vertices and (possibly polygonal) faces as OFF."""
    positions = np.asarray(positions, dtype=float)
    out = ["OFF", f"{len(positions)} {len(faces)} 0"]
    out += [" ".join(repr(float(c)) for c in p) for p in positions]
    out += [" ".join(map(str, [len(face), *map(int, face)])) for face in faces]
    Path(path).write_text("\n".join(out) + "\n")


def write_mesh_off(path, m: Mesh) -> None:
    pos = m.positions if m.positions is not None else np.zeros((m.vertex_count, 3))
    write_off(path, pos, m.triangles)


def read_obj(path) -> Mesh:
    """Read ``v`` and ``f`` records of a Wavefront OBJ; faces must be triangles."""
    pos, tris = [], []
    for line in _data_lines(Path(path).read_text()):
        parts = line.split()
        if parts[0] == "v":
            try:
                pos.append([float(x) for x in parts[1:4]])
            except ValueError as exc:
                raise MeshError(f"{path}: bad vertex record {line!r}") from exc
        elif parts[0] == "f":
            if len(parts) != 4:
                raise MeshError(f"{path}: face with {len(parts) - 1} vertices; only triangles are supported")
            try:
                idx = [int(p.split("/")[0]) for p in parts[1:]]
            except ValueError as exc:
                raise MeshError(f"{path}: bad face record {line!r}") from exc
            tris.append([i - 1 if i > 0 else len(pos) + i for i in idx])
    return build_mesh(tris, positions=pos, vertex_count=len(pos))


def read_mesh(path) -> Mesh:
    suffix = Path(path).suffix.lower()
    if suffix == ".obj":
        return read_obj(path)
    return read_off(path)


def write_field(path, values) -> None:
    """One value per line in shortest round-trip form."""
    Path(path).write_text("".join(repr(float(v)) + "\n" for v in values))


def read_field_values(path) -> np.ndarray:
    try:
        return np.array([float(x) for x in _data_lines(Path(path).read_text())], dtype=np.float64)
    except ValueError as exc:
        raise FieldError(f"{path}: {exc}") from exc


def load_field(m: Mesh, values) -> ScalarField:
    """Attach values, falling back to relaxed-boundary mode when only boundary edges tie."""
    try:
        return ScalarField(m, values)
    except NonGenericInteriorEdge as exc:
        bd = set(m.boundary_edges)
        if all(e in bd for e in exc.edges):
            return ScalarField(m, values, GenericityMode.RELAXED_BOUNDARY)
        raise


def read_field(m: Mesh, path) -> ScalarField:
    return load_field(m, read_field_values(path))
