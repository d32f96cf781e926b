from __future__ import annotations

import numpy as np
import pytest

from rado import gallery
from rado.errors import LengthMismatch, NonFiniteValue, NonGenericInteriorEdge, TieRejected
from rado.field import (GenericityMode, SignRule, TiePolicy, attach_field, double_field,
                        field_range, is_regular_value, sign_at)
from rado.mesh import double


@pytest.fixture
def square():
    return gallery.square_disk()


def test_values_are_read_only_copies(square):
    vals = np.array([0.0, 1.0, 2.0, 3.0])
    f = attach_field(square, vals)
    vals[0] = 99
    assert f[0] == 0.0
    with pytest.raises(ValueError):
        f.values[0] = 5


def test_length_and_finiteness(square):
    with pytest.raises(LengthMismatch):
        attach_field(square, [0, 1, 2])
    with pytest.raises(NonFiniteValue):
        attach_field(square, [0, 1, np.nan, 3])
    with pytest.raises(NonFiniteValue):
        attach_field(square, [0, 1, np.inf, 3])


def test_strict_mode_rejects_any_level_edge(square):
    with pytest.raises(NonGenericInteriorEdge) as err:
        attach_field(square, [0, 0, 1, 2])
    assert err.value.edges == [(0, 1)]


def test_relaxed_mode_allows_level_boundary_edges_only(square):
    f = attach_field(square, [0, 0, 1, 2], GenericityMode.RELAXED_BOUNDARY)
    assert f.relaxed_edges == ((0, 1),)
    assert not f.is_strict
    # the diagonal (0, 2) is interior
    with pytest.raises(NonGenericInteriorEdge):
        attach_field(square, [0, 1, 0, 2], GenericityMode.RELAXED_BOUNDARY)


def test_sign_rule_tie_policies(square):
    f = attach_field(square, [0.0, 1.0, 2.0, 3.0])
    assert sign_at(f, 2, SignRule(1.5)) == 1
    assert sign_at(f, 0, SignRule(1.5)) == -1
    with pytest.raises(TieRejected):
        sign_at(f, 1, SignRule(1.0))
    assert sign_at(f, 1, SignRule(1.0, TiePolicy.PERTURB_BY_INDEX)) == 1


def test_regular_values_and_range(square):
    f = attach_field(square, [0.0, 1.0, 2.0, 3.0])
    assert not is_regular_value(f, 2.0)
    assert is_regular_value(f, 2.5)
    assert field_range(f) == (0.0, 3.0)


def test_double_field_copies_values_to_both_sheets():
    m, f = gallery.gen_disk_harmonic(2, 8)
    d = double(m)
    g = double_field(f, d)
    for v in range(m.vertex_count):
        a, b = d.index_map[v]
        assert g[a] == g[b] == f[v]
