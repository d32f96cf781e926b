from __future__ import annotations

import numpy as np
import pytest

import oracles
from rado import gallery
from rado.classify import classify_all
from rado.errors import ResolutionTooCoarse
from rado.mesh import boundary_components, euler_characteristic, homology_z2


def test_disk_harmonic_needs_resolution():
    with pytest.raises(ResolutionTooCoarse):
        gallery.gen_disk_harmonic(3, 11)
    with pytest.raises(ResolutionTooCoarse):
        gallery.gen_branched(2, 3, 11)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("rings", [1, 3])
def test_disk_harmonic_center_and_boundary(k, rings):
    m, f = gallery.gen_disk_harmonic(k, 4 * k + 3, rings=rings)
    s = classify_all(f)
    assert s.record(0).valence == 2 * k
    assert len(s.Q_bd) == k and len(s.boundary_maxima) == k
    # only the center is critical in the interior
    assert [r.vertex for r in s.records if r.is_interior and r.is_critical] == ([0] if k > 1 else [])


@pytest.mark.parametrize("genus, saddles", [(0, 0), (1, 2), (2, 4), (3, 6), (4, 8)])
def test_closed_surfaces(genus, saddles):
    m, f = gallery.gen_closed(genus, 1)
    assert euler_characteristic(m) == 2 - 2 * genus
    s = classify_all(f)
    assert len(s.Q) == 2
    assert s.N == saddles
    assert all(r.valence == 4 for r in s.records if r.kind.value == "interior-saddle")


def test_closed_genus_scope():
    with pytest.raises(ValueError):
        gallery.gen_closed(5)


def test_torus_height_has_two_simple_saddles(torus):
    m, f = torus
    s = classify_all(f)
    assert len(s.interior_saddles) == 2 and s.N == 2 and len(s.Q) == 2


def test_mobius():
    m, f = gallery.gen_mobius()
    assert euler_characteristic(m) == 0
    assert homology_z2(m).d1 == 1
    assert len(boundary_components(m)) == 1


@pytest.mark.parametrize("Q", [1, 2, 3])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_branched_center_valence(Q, d):
    n = 8 * max(Q, d)
    _, transverse = gallery.gen_branched(Q, d, n, "first-coordinate")
    _, tangent = gallery.gen_branched(Q, d, n, "height")
    assert classify_all(transverse).record(0).valence == 2 * Q
    assert classify_all(tangent).record(0).valence == 2 * d


def test_branched_axis_validation():
    with pytest.raises(ValueError):
        gallery.gen_branched(2, 3, 24, "sideways")


def test_relaxed_fixtures_are_relaxed():
    for gen in (gallery.gen_strip, gallery.gen_annulus, gallery.gen_planar_annulus):
        _, f = gen()
        assert not f.is_strict
    assert gallery.gen_annulus(tilt=0.1)[1].is_strict


def test_random_field_is_seed_deterministic():
    m = gallery.torus7()
    a = gallery.gen_random_field(m, 5).values
    b = gallery.gen_random_field(m, 5).values
    c = gallery.gen_random_field(m, 6).values
    assert np.array_equal(a, b) and not np.array_equal(a, c)
    assert len(np.unique(a)) == m.vertex_count
    classify_all(gallery.gen_random_field(m, 5))


PARAMS = {"disk-harmonic": {"k": 3, "n": 24}, "branched": {"Q": 2, "d": 3, "n": 24},
          "closed": {"genus": 2}}


def test_generators_are_deterministic():
    for name, gen in gallery.GENERATORS.items():
        kw = PARAMS.get(name, {})
        (m1, f1), (m2, f2) = gen(**kw), gen(**kw)
        assert m1.triangles == m2.triangles, name
        assert np.array_equal(f1.values, f2.values), name


@pytest.mark.parametrize("name", sorted(gallery.GENERATORS))
def test_generator_saddle_totals_match_oracle(name):
    m, f = gallery.GENERATORS[name](**PARAMS.get(name, {}))
    if not f.is_strict:
        pytest.skip("relaxed fixture")
    s = classify_all(f)
    assert (s.N, s.s_bd) == oracles.saddle_total(m.triangles, f.values, m.vertex_count)
