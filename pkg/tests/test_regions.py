from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import mesh_and_field
from rado import gallery
from rado.classify import classify_all
from rado.errors import NonManifoldQuotient, NonRegularClipValue
from rado.field import GenericityMode, attach_field
from rado.mesh import build_mesh, euler_characteristic, homology_z2
from rado.regions import annulus_check, clip, quotient_constant_boundary, region_euler


def _regular(f):
    vals = np.unique(f.values)
    mids = (vals[1:] + vals[:-1]) / 2
    return [float(x) for x in mids if x not in set(vals)]


@given(mesh_and_field(), st.data())
def test_clip_euler_characteristic_three_ways(f, data):
    levels = _regular(f)
    a, b = sorted(data.draw(st.lists(st.sampled_from(levels), min_size=2, max_size=2, unique=True)))
    c = clip(f, a, b)
    assert c.chi == oracles.band_euler(f.mesh.triangles, f.values, a, b)
    assert c.homology().euler == c.chi
    tri = c.triangulate()
    assert euler_characteristic(tri) == c.chi
    assert homology_z2(tri).d0 == len(c.components)
    assert sum(comp.chi for comp in c.components) == c.chi


@pytest.mark.parametrize("gen", [gallery.gen_torus, lambda: gallery.gen_closed(2),
                                 gallery.gen_mobius, gallery.gen_capped_sphere])
def test_unbounded_clip_is_the_whole_surface(gen):
    m, f = gen()
    c = clip(f, -math.inf, math.inf)
    assert region_euler(c) == euler_characteristic(m)
    assert c.beta_a is None and c.beta_b is None
    assert len(c.cells) == m.face_count


def test_clip_arguments():
    m, f = gallery.gen_disk_harmonic(2, 16)
    with pytest.raises(NonRegularClipValue):
        clip(f, float(f.values[3]), 1.0)
    with pytest.raises(ValueError):
        clip(f, 0.5, 0.1)


def test_strip_band():
    m, f = gallery.gen_strip()
    c = clip(f, 0.25, 0.75)
    assert c.chi == 1 and c.beta_a == 2 and c.beta_b == 2
    (comp,) = c.components
    assert comp.boundary_cycles == (frozenset({"level-a", "level-b", "original-boundary"}),)


def test_torus_bands_between_critical_values_are_annuli(torus):
    m, f = torus
    s = classify_all(f)
    crit = sorted(float(f.values[v]) for v in s.Q + s.interior_saddles)
    for lo, hi in zip(crit, crit[1:]):
        gap = hi - lo
        report = annulus_check(clip(f, lo + gap / 4, hi - gap / 4))
        assert report.passed, (lo, hi, report)


def test_band_with_a_saddle_is_not_an_annulus(torus):
    m, f = torus
    s = classify_all(f)
    sv = float(f.values[s.interior_saddles[0]])
    report = annulus_check(clip(f, sv - 0.1, sv + 0.1))
    assert not report.passed


def test_quotient_of_relaxed_annulus_is_a_disk():
    m, f = gallery.gen_planar_annulus()
    q = quotient_constant_boundary(f)
    assert euler_characteristic(q.mesh) == 1
    assert q.closed_cycles == 1 and q.field.is_strict
    (group, was_cycle, nid) = q.collapsed[0]
    assert was_cycle and not q.mesh.is_boundary_vertex(nid)
    assert len(group) == 16
    assert classify_all(q.field).record(nid).kind.value == "local-min"


def test_quotient_of_axial_cylinder_is_a_sphere():
    m, f = gallery.gen_annulus()
    q = quotient_constant_boundary(f)
    assert q.mesh.is_closed and euler_characteristic(q.mesh) == 2


def test_quotient_of_strip_collapses_arcs():
    m, f = gallery.gen_strip()
    q = quotient_constant_boundary(f)
    assert q.closed_cycles == 0 and len(q.collapsed) == 2
    assert euler_characteristic(q.mesh) == 1
    for _, _, nid in q.collapsed:
        assert q.mesh.is_boundary_vertex(nid)


def test_quotient_refuses_non_manifold_collapse():
    # a constant arc whose ends are joined by an interior edge
    tris = [(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4)]
    m = build_mesh(tris)
    f = attach_field(m, [0.0, 0.0, 0.0, 1.0, 2.0], GenericityMode.RELAXED_BOUNDARY)
    with pytest.raises(NonManifoldQuotient):
        quotient_constant_boundary(f)


def test_clip_export_positions(disk2):
    m, f = disk2
    c = clip(f, -0.1, 0.1)
    pos = c.point_positions()
    assert pos.shape == (len(c.points), 3)
    assert np.all(np.linalg.norm(pos[:, :2], axis=1) <= 1.0 + 1e-12)
