"""Closed-form solitary waves and the Euler-Lagrange residuals they satisfy.

For ``4 omega > c^2`` the real profile is::

    phi(x) = [ sqrt(omega)/(4 omega - c^2) * (cosh(sqrt(4 omega - c^2) x) - c/(2 sqrt(omega))) ]^(-1/2)

and on the critical line ``4 omega = c^2, c > 0`` it degenerates to the
algebraically decaying ``2 sqrt(c) / sqrt(c^2 x^2 + 1)``.  The complex wave
carries the internal phase ``exp(i c x / 2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedRegime
from .grid import (
    Field,
    GridSpec,
    Params,
    Regime,
    deriv_values,
    integrate_real,
    second_deriv_values,
)


@dataclass(frozen=True)
class SolitonSpec:
    params: Params
    phase_shift: float = 0.0
    translation: float = 0.0

    def __post_init__(self):
        if not self.params.admissible:
            raise UnsupportedRegime(self.params)


def _as_spec(spec) -> SolitonSpec:
    if isinstance(spec, Params):
        return SolitonSpec(spec)
    return spec


def profile_values(params: Params, y: np.ndarray) -> np.ndarray:
    """Evaluate the real profile at arbitrary points ``y``."""
    omega, c = params.omega, params.c
    regime = params.regime
    y = np.asarray(y, dtype=np.float64)
    if regime is Regime.CRITICAL_POSITIVE:
        return 2.0 * math.sqrt(c) / np.sqrt(c * c * y * y + 1.0)
    if regime is not Regime.SUBCRITICAL:
        raise UnsupportedRegime(params)
    s = math.sqrt(4.0 * omega - c * c)
    b = c / (2.0 * math.sqrt(omega))
    # cosh(sy) - b rewritten with e = exp(-s|y|) to avoid overflow in the tails
    e = np.exp(-s * np.abs(y))
    phi_sq = (s * s / math.sqrt(omega)) * 2.0 * e / (1.0 + e * e - 2.0 * b * e)
    return np.sqrt(phi_sq)


def _wrapped(grid: GridSpec, x0: float) -> np.ndarray:
    """``x - x0`` folded back into ``[-L, L)``."""
    L = grid.half_width
    return np.mod(np.asarray(grid.x) - x0 + L, 2.0 * L) - L


def phi_profile(spec, grid: GridSpec) -> Field:
    """Real profile ``phi_{omega,c}(x - x0)`` sampled on the grid."""
    spec = _as_spec(spec)
    y = _wrapped(grid, spec.translation)
    return Field(grid, profile_values(spec.params, y))


def varphi_profile(spec, grid: GridSpec) -> Field:
    """``exp(i theta0) exp(i c (x - x0)/2) phi(x - x0)``."""
    spec = _as_spec(spec)
    c = spec.params.c
    x = np.asarray(grid.x)
    y = _wrapped(grid, spec.translation)
    phase = np.exp(1j * (spec.phase_shift + 0.5 * c * (x - spec.translation)))
    return Field(grid, phase * profile_values(spec.params, y))


def traveling_wave(spec, grid: GridSpec, t: float) -> Field:
    """Exact solution ``exp(i omega t) varphi(x - c t)`` at time ``t``."""
    spec = _as_spec(spec)
    p = spec.params
    moved = SolitonSpec(p, spec.phase_shift + p.omega * t, spec.translation + p.c * t)
    return varphi_profile(moved, grid)


def soliton_mass(params: Params) -> float:
    """Squared L2 norm ``8 arctan sqrt((2 sqrt(omega) + c)/(2 sqrt(omega) - c))``."""
    if params.regime is not Regime.SUBCRITICAL:
        raise UnsupportedRegime(params, "closed-form mass needs 4*omega > c^2")
    r = 2.0 * math.sqrt(params.omega)
    return 8.0 * math.atan(math.sqrt((r + params.c) / (r - params.c)))


def soliton_threshold(params: Params) -> float:
    """Exact action of the soliton, ``J^0 = 2 omega arccos(-c/(2 sqrt omega)) + (c/2) sqrt(4 omega - c^2)``.

    Follows from the first integral ``phi'^2 = (omega - c^2/4) phi^2 + c phi^4/4 - phi^6/16``
    of the profile equation together with closed forms for ``int phi^2`` and
    ``int phi^4``.  On the critical line it reduces to ``pi c^2 / 2``.
    """
    params.require_admissible()
    omega, c = params.omega, params.c
    if params.regime is Regime.CRITICAL_POSITIVE:
        return 0.5 * math.pi * c * c
    b = c / (2.0 * math.sqrt(omega))
    return 2.0 * omega * math.acos(-b) + 0.5 * c * math.sqrt(4.0 * omega - c * c)


# ---------------------------------------------------------------------------
# residuals


def _l2(values: np.ndarray, grid: GridSpec) -> float:
    return math.sqrt(integrate_real(values.real ** 2 + values.imag ** 2, grid))


def _common(f: Field, omega: float):
    u = f.values
    grid = f.grid
    ux = deriv_values(u, grid)
    uxx = second_deriv_values(u, grid)
    a = u.real ** 2 + u.imag ** 2
    return u, ux, a, omega * u - uxx - 0.1875 * a * a * u


def residual_semilinear(f: Field, params: Params) -> float:
    """L2 norm of ``omega f - f'' - (3/16)|f|^4 f + i c f' + (c/2)|f|^2 f``."""
    c = params.c
    u, ux, a, r = _common(f, params.omega)
    r = r + 1j * c * ux + 0.5 * c * a * u
    return _l2(r, f.grid)


def residual_quasilinear(f: Field, params: Params) -> float:
    """L2 norm of the traveling-wave equation with the derivative nonlinearity
    ``omega f - f'' - (3/16)|f|^4 f + i c f' - (i/2)|f|^2 f' + (i/2) f^2 conj(f)'``."""
    c = params.c
    u, ux, a, r = _common(f, params.omega)
    ubar_x = deriv_values(np.conj(u), f.grid)
    r = r + 1j * c * ux - 0.5j * a * ux + 0.5j * u * u * ubar_x
    return _l2(r, f.grid)


def residual_profile(f: Field, params: Params, quasilinear: bool = False) -> float:
    """Residual of the equation for the phase-stripped profile.

    With ``quasilinear=False`` this is
    ``(omega - c^2/4) f - f'' - (3/16)|f|^4 f + (c/2)|f|^2 f``; with
    ``quasilinear=True`` the terms ``-(i/2)|f|^2 f' + (i/2) f^2 conj(f)'`` are
    added, which cancel identically on real fields.
    """
    c = params.c
    u, ux, a, r = _common(f, params.omega - 0.25 * c * c)
    r = r + 0.5 * c * a * u
    if quasilinear:
        ubar_x = deriv_values(np.conj(u), f.grid)
        r = r - 0.5j * a * ux + 0.5j * u * u * ubar_x
    return _l2(r, f.grid)
