from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rado import gallery
from rado.field import attach_field
from rado.mesh import build_mesh

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def grid_disk(nx: int, ny: int, flips: list[bool]):
    """Square grid with a per-cell choice of diagonal."""
    idx = lambda i, j: j * (nx + 1) + i  # noqa: E731
    tris = []
    for c, (j, i) in enumerate((j, i) for j in range(ny) for i in range(nx)):
        a, b, cc, d = idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)
        if flips[c % len(flips)]:
            tris += [(a, b, d), (b, cc, d)]
        else:
            tris += [(a, b, cc), (a, cc, d)]
    pos = [(i, j, 0.0) for j in range(ny + 1) for i in range(nx + 1)]
    return build_mesh(tris, positions=pos)


def _small_meshes():
    return {
        "octahedron": gallery.octahedron(),
        "torus7": gallery.torus7(),
        "disk": gallery.gen_disk_harmonic(1, 8, rings=2)[0],
        "mobius": gallery.gen_mobius(6, 2)[0],
        "grid": grid_disk(3, 3, [True, False, False, True, True]),
        "closed1": gallery.gen_closed(1, 1)[0],
        "fan": gallery.boundary_saddle_fan()[0],
    }


SMALL_MESHES = _small_meshes()


@st.composite
def mesh_and_field(draw, names=tuple(SMALL_MESHES)):
    """A small mesh with distinct vertex values drawn as a permutation."""
    m = SMALL_MESHES[draw(st.sampled_from(names))]
    perm = draw(st.permutations(range(m.vertex_count)))
    scale = draw(st.sampled_from([1.0, 0.37, -2.5]))
    return attach_field(m, np.array(perm, dtype=float) * scale)


@pytest.fixture(scope="session")
def torus():
    return gallery.gen_torus()


@pytest.fixture(scope="session")
def disk2():
    return gallery.gen_disk_harmonic(2, 16)


_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, label): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, label = marker.args
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        _ACCEPTANCE[number] = (label, "FAIL" if call.excinfo is not None else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        label, outcome = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {outcome}  {label}")
