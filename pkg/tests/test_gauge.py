import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dnls_lab.functionals import mass
from dnls_lab.gauge import gauge_transform, left_tail_mass, to_u_form, to_v_form
from dnls_lab.grid import GridSpec, Params, l2_distance
from dnls_lab.soliton import varphi_profile

from _fields import random_bump_field

G = GridSpec(1024, 40.0)


def test_identity_and_modulus(grid):
    v = varphi_profile(Params(1, 1), grid)
    assert np.array_equal(gauge_transform(v, 0.0).values, v.values)
    u = gauge_transform(v, 0.75)
    assert np.allclose(np.abs(u.values), np.abs(v.values), atol=1e-15)


def test_round_trip_and_mass(grid):
    u = varphi_profile(Params(1, 1), grid)
    assert l2_distance(to_u_form(to_v_form(u)), u) < 1e-10
    assert abs(mass(to_v_form(u)) - mass(u)) < 1e-13


@settings(max_examples=30, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2), st.integers(0, 2 ** 31))
def test_composition(a, b, seed):
    v = random_bump_field(G, np.random.default_rng(seed))
    lhs = gauge_transform(gauge_transform(v, a), b)
    rhs = gauge_transform(v, a + b)
    assert l2_distance(lhs, rhs) < 1e-10
    assert abs(mass(gauge_transform(v, a)) - mass(v)) < 1e-13 * max(1, mass(v))


def test_rectangle_rule_available(grid):
    v = varphi_profile(Params(1, 1), grid)
    rect = gauge_transform(v, 0.75, rule="rectangle")
    spec = gauge_transform(v, 0.75)
    # the two primitives differ by about h |v|^2 / 2 in phase
    assert 1e-4 < l2_distance(rect, spec) < 0.1
    with pytest.raises(ValueError):
        gauge_transform(v, 0.75, rule="trapezoid")


def test_left_tail_mass_small_for_solitons(grid):
    assert left_tail_mass(varphi_profile(Params(1, 1), grid)) < 1e-20
    assert left_tail_mass(varphi_profile(Params(1, 2), grid)) > 1e-4
