from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import SMALL_MESHES, grid_disk
from rado import gallery
from rado.errors import DegenerateTriangle, EmptyBoundary, MeshError, NonManifoldEdge, PinchedVertex
from rado.mesh import (boundary_components, build_mesh, connected_components, double,
                       euler_characteristic, gf2_rank, homology_z2)


def test_rejects_edge_on_three_triangles():
    with pytest.raises(NonManifoldEdge):
        build_mesh([(0, 1, 2), (0, 1, 3), (0, 1, 4)])


def test_rejects_pinched_vertex():
    # two triangles touching only at vertex 0
    with pytest.raises(PinchedVertex):
        build_mesh([(0, 1, 2), (0, 3, 4)])


@pytest.mark.parametrize("tris", [[(0, 0, 1)], [(0, 1, 2), (2, 1, 0)]])
def test_rejects_degenerate_triangles(tris):
    with pytest.raises(DegenerateTriangle):
        build_mesh(tris)


def test_rejects_unused_vertex_and_bad_positions():
    with pytest.raises(MeshError):
        build_mesh([(0, 1, 2)], vertex_count=4)
    with pytest.raises(MeshError):
        build_mesh([(0, 1, 2)], positions=np.zeros((2, 3)))


def test_links_are_cycles_or_boundary_paths():
    m = grid_disk(2, 2, [False])
    center = 4
    link = m.link(center)
    assert sorted(link) == sorted(m.neighbors(center))
    assert len(link) == 6
    corner = m.link(0)
    assert m.is_boundary_vertex(0)
    # the link path starts and ends at boundary neighbours
    assert m.is_boundary_vertex(corner[0]) and m.is_boundary_vertex(corner[-1])


@pytest.mark.parametrize("name", sorted(SMALL_MESHES))
def test_homology_matches_graph_oracle(name):
    m = SMALL_MESHES[name]
    h = homology_z2(m)
    assert (h.d0, h.d1, h.d2) == oracles.z2_betti(m.triangles, m.vertex_count)
    assert h.euler == euler_characteristic(m) == oracles.euler(m.triangles, m.vertex_count)


@pytest.mark.parametrize("mesh, betti", [
    (gallery.octahedron(), (1, 0, 1)),
    (gallery.torus7(), (1, 2, 1)),
    (gallery.square_disk(), (1, 0, 0)),
    (gallery.gen_mobius()[0], (1, 1, 0)),
    (gallery.gen_annulus()[0], (1, 1, 0)),
])
def test_known_betti_numbers(mesh, betti):
    h = homology_z2(mesh)
    assert (h.d0, h.d1, h.d2) == betti


def test_gf2_rank_small_cases():
    assert gf2_rank([]) == 0
    assert gf2_rank([0b011, 0b110, 0b101]) == 2
    assert gf2_rank([0b1, 0b10, 0b100]) == 3


def test_components_and_boundary_cycles():
    disjoint = build_mesh([(0, 1, 2), (3, 4, 5)])
    assert len(connected_components(disjoint)) == 2
    ann = gallery.gen_annulus(n=8, rings=2)[0]
    cycles = boundary_components(ann)
    assert len(cycles) == 2 and sorted(map(len, cycles)) == [8, 8]
    assert boundary_components(gallery.octahedron()) == []


@pytest.mark.parametrize("mesh", [
    gallery.square_disk(),
    build_mesh([(0, 1, 2)]),
    gallery.gen_disk_harmonic(2, 8)[0],
    gallery.gen_annulus(n=6, rings=1)[0],
    gallery.gen_mobius()[0],
    grid_disk(3, 2, [True, False]),
])
def test_double_is_closed_with_twice_the_euler_characteristic(mesh):
    d = double(mesh)
    assert d.mesh.is_closed
    # boundary circles have Euler characteristic 0
    assert euler_characteristic(d.mesh) == 2 * euler_characteristic(mesh)
    h = homology_z2(d.mesh)
    assert h.d0 == homology_z2(mesh).d0


def test_double_of_closed_mesh_is_rejected():
    with pytest.raises(EmptyBoundary):
        double(gallery.octahedron())


def test_double_shares_boundary_vertices():
    m = gallery.gen_disk_harmonic(1, 6)[0]
    d = double(m)
    for v in range(m.vertex_count):
        a, b = d.index_map[v]
        assert (a == b) == m.is_boundary_vertex(v)


@given(seed=st.integers(0, 10_000))
def test_random_grid_homology(seed):
    rng = np.random.default_rng(seed)
    nx, ny = rng.integers(1, 4, size=2)
    m = grid_disk(int(nx), int(ny), list(rng.integers(0, 2, size=5).astype(bool)))
    h = homology_z2(m)
    assert (h.d0, h.d1, h.d2) == (1, 0, 0)
    assert h.euler == oracles.euler(m.triangles, m.vertex_count)
