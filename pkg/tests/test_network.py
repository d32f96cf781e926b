from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import mesh_and_field
from rado import gallery
from rado.classify import valence
from rado.errors import RelaxedBoundaryAtLevel
from rado.network import (counting_identity, extract_level_network, network_euler, slice_bound,
                          to_dot, to_obj_polylines)


def _levels(f):
    vals = np.unique(f.values)
    return list(vals) + list((vals[1:] + vals[:-1]) / 2)


@given(mesh_and_field(), st.data())
def test_network_matches_level_graph_oracle(f, data):
    t = float(data.draw(st.sampled_from(_levels(f))))
    x = extract_level_network(f, t)
    ref = oracles.level_summary(f.mesh.triangles, f.values, t)
    e = network_euler(x)
    assert (e.d0, e.d1) == (ref["d0"], ref["d1"])
    assert sorted(n.valence for n in x.nodes if not n.synthetic) == sorted(ref["valences"])
    assert sum(n.synthetic for n in x.nodes) == ref["boundary_crossings"]


@given(mesh_and_field())
def test_identities_hold_on_every_level(f):
    for t in _levels(f):
        x = extract_level_network(f, float(t))
        assert network_euler(x).passed
        assert counting_identity(x).passed
        for node in x.nodes:
            if node.vertex is not None:
                assert node.valence == valence(f, node.vertex)
            else:
                assert node.valence == 1


@given(mesh_and_field())
def test_slice_chain_is_ordered(f):
    for t in np.unique(f.values):
        for rule in ("off-level", "sided"):
            r = slice_bound(f, float(t), rule)
            assert r.passed, (t, rule, r.chain)
            assert list(r.chain) == sorted(r.chain)


def test_regular_level_is_a_one_manifold(torus):
    m, f = torus
    x = extract_level_network(f, 0.0123)
    assert x.nodes == () and x.arcs == ()
    assert len(x.loops) in (1, 2)


def test_saddle_level_of_disk(disk2):
    m, f = disk2
    x = extract_level_network(f, 0.0)
    assert x.valence_histogram() == {1: 4, 4: 1}
    assert len(x.arcs) == 4 and x.loops == ()
    r = slice_bound(f, 0.0)
    assert r.chain == (Fraction(2),) * 4


def test_out_of_range_level_is_empty(disk2):
    m, f = disk2
    x = extract_level_network(f, 10.0)
    assert x.nodes == () and x.arcs == () and x.loops == ()
    r = slice_bound(f, 10.0)
    assert r.passed and r.lhs == 0


def test_isolated_extremum_node(torus):
    m, f = torus
    vmin = int(np.argmin(f.values))
    x = extract_level_network(f, float(f.values[vmin]))
    assert x.valence_histogram() == {0: 1}
    assert x.isolated_nodes == (0,)
    assert network_euler(x).chi == 1
    assert counting_identity(x).d0_nonisolated == 0


def test_constant_boundary_at_level_is_refused():
    m, f = gallery.gen_strip()
    with pytest.raises(RelaxedBoundaryAtLevel):
        extract_level_network(f, 0.0)
    extract_level_network(f, 0.5)


def test_unknown_extrema_rule(disk2):
    with pytest.raises(ValueError):
        slice_bound(disk2[1], 0.0, "nearest")


def test_exports(disk2):
    m, f = disk2
    x = extract_level_network(f, 0.0)
    dot = to_dot(x)
    assert dot.startswith("graph level {") and dot.count(" -- ") == 4
    obj = to_obj_polylines(x)
    assert sum(line.startswith("l ") for line in obj.splitlines()) == 4
    y = extract_level_network(f, float(f.values[1]))
    assert "l " in to_obj_polylines(y)
