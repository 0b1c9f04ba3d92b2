import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dnls_lab.errors import UnsupportedRegime
from dnls_lab.functionals import (
    action_J,
    action_J_direct,
    energy,
    gauged_h1dot_sq,
    integrals,
    mass,
    nehari_K,
    nehari_parts,
    positive_H,
    positive_H_direct,
    profile_report,
    report,
    xc_diagnostics,
)
from dnls_lab.grid import Field, GridSpec, Params, cyclic_shift
from dnls_lab.soliton import phi_profile, soliton_threshold, varphi_profile

from _fields import random_bump_field, random_params

G = GridSpec(1024, 40.0)


def test_soliton_values(grid):
    f = varphi_profile(Params(1, 0), grid)
    assert abs(energy(f)) < 1e-8
    assert mass(f) == pytest.approx(math.pi, abs=1e-10)
    assert energy(varphi_profile(Params(1, 1), grid)) < 0
    assert energy(varphi_profile(Params(1, -1), grid)) > 0


def test_zero_field(grid):
    z = Field.zeros(grid)
    p = Params(1, 1)
    assert action_J(z, p) == 0 and positive_H(z, p) == 0 and nehari_K(z, p) == 0


@pytest.mark.parametrize("omega,c", [(1, 1), (2, -1), (1, 2)])
def test_action_expanded_integrand(grid, omega, c):
    p = Params(omega, c)
    f = varphi_profile(p, grid)
    assert action_J(f, p) == pytest.approx(action_J_direct(f, p), abs=1e-12 * max(1, abs(action_J(f, p))))


def test_soliton_constraint_values(grid):
    p = Params(1, 1)
    f = varphi_profile(p, grid)
    assert abs(nehari_K(f, p)) < 1e-6
    assert nehari_K(1e-3 * f, p) > 0
    assert positive_H(f, p) == pytest.approx(action_J(f, p), abs=1e-6)
    assert positive_H(f, p) == pytest.approx(soliton_threshold(p), abs=1e-6)


def test_split_undefined_outside_admissible(grid):
    f = varphi_profile(Params(1, 1), grid)
    for p in (Params(1, 3), Params(1, -2)):
        nehari_K(f, p)  # K itself is always defined
        with pytest.raises(UnsupportedRegime):
            nehari_parts(f, p)
        with pytest.raises(UnsupportedRegime):
            positive_H(f, p)
        rep = report(f, p)
        assert rep.quadratic_part is None and rep.positive_part is None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 31), st.booleans())
def test_report_identities_on_random_fields(seed, critical):
    rng = np.random.default_rng(seed)
    p = random_params(rng, critical)
    f = random_bump_field(G, rng)
    r = report(f, p)
    scale = max(1.0, abs(r.action), abs(r.nehari))
    assert r.action == pytest.approx(r.energy + p.omega * r.mass + p.c * r.momentum, abs=1e-12 * scale)
    assert r.nehari == pytest.approx(r.quadratic_part - r.nonlinear_part, abs=1e-12 * scale)
    frac = 1 / 6 if critical else 1 / 4
    assert r.positive_part == pytest.approx(r.action - frac * r.nehari, abs=1e-12 * scale)
    assert r.positive_part >= -1e-12 * scale
    assert r.positive_part == pytest.approx(positive_H_direct(f, p), abs=1e-11 * scale)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_completed_square_identity(seed):
    rng = np.random.default_rng(seed)
    p = random_params(rng)
    f = random_bump_field(G, rng)
    kq = nehari_parts(f, p).KQ
    rhs = gauged_h1dot_sq(f, p.c) + (p.omega - p.c ** 2 / 4) * integrals(f).m2
    assert kq == pytest.approx(rhs, abs=1e-10 * max(1.0, abs(kq)))


def test_xc_diagnostics_match_gauged_norm(grid):
    p = Params(1, 1)
    f = varphi_profile(p, grid)
    d = xc_diagnostics(f, p.c)
    phi = phi_profile(p, grid)
    assert d["h1dot"] ** 2 == pytest.approx(gauged_h1dot_sq(f, p.c), rel=1e-9)
    assert d["l4"] ** 4 == pytest.approx(integrals(phi).m4, rel=1e-12)


def test_invariance_under_phase_and_translation(grid, rng):
    p = Params(1.2, 0.4)
    f = random_bump_field(grid, rng)
    r0 = report(f, p).to_dict()
    g = cyclic_shift(Field(grid, np.exp(0.9j) * f.values), 3.7)
    r1 = report(g, p).to_dict()
    for k, v in r0.items():
        if isinstance(v, float):
            assert r1[k] == pytest.approx(v, abs=1e-10)


@pytest.mark.parametrize("omega,c", [(1, 0.5), (1, 2)])
def test_h_monotone_under_scaling(grid, omega, c):
    p = Params(omega, c)
    f = varphi_profile(p, grid)
    values = [positive_H(lam * f, p) for lam in (0.2, 0.5, 0.9, 1.3, 2.0)]
    assert all(a < b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("critical", [False, True])
def test_quadratic_part_scaling_slope(grid, critical):
    rng = np.random.default_rng(3)
    p = random_params(rng, critical)
    f = random_bump_field(grid, rng)
    lams = np.array([1e-4, 1e-3, 1e-2])
    kq = np.array([nehari_parts(lam * f, p).KQ for lam in lams])
    slope = np.polyfit(np.log(lams), np.log(kq), 1)[0]
    assert abs(slope - 2) < 0.01


def test_profile_report_matches_sampled_phase(grid):
    p = Params(1, 1)
    a = profile_report(phi_profile(p, grid), p).to_dict()
    b = report(varphi_profile(p, grid), p).to_dict()
    for k in ("mass", "momentum", "energy", "action", "nehari"):
        assert a[k] == pytest.approx(b[k], abs=1e-10)
