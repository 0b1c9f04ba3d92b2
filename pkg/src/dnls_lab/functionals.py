"""Conserved quantities and the variational functionals built from them.

All functionals reduce to five integrals of a field ``f``::

    m2 = int |f|^2     d2 = int |f_x|^2     m4 = int |f|^4
    m6 = int |f|^6     im = int Im(conj(f) f_x)

so a :class:`FunctionalReport` costs one FFT pair and one fused pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from ._backend import kernels
from .errors import UnsupportedRegime
from .grid import Field, GridSpec, Params, Regime, deriv_values, integrate_real


class Integrals(NamedTuple):
    m2: float
    d2: float
    m4: float
    m6: float
    im: float

    def scaled(self, lam: float) -> "Integrals":
        """Integrals of ``lam * f``."""
        l2 = lam * lam
        return Integrals(
            l2 * self.m2, l2 * self.d2, l2 * l2 * self.m4, l2 * l2 * l2 * self.m6, l2 * self.im
        )


def integrals_of_values(values: np.ndarray, grid: GridSpec) -> Integrals:
    fx = deriv_values(values, grid)
    s2, sd, s4, s6, sim = kernels.density_sums(values, fx)
    h = grid.spacing
    return Integrals(s2 * h, sd * h, s4 * h, s6 * h, sim * h)


def integrals(f: Field) -> Integrals:
    return integrals_of_values(f.values, f.grid)


def profile_integrals(phi: np.ndarray, grid: GridSpec, c: float) -> Integrals:
    """Integrals of ``exp(i c x/2) phi`` for a real profile ``phi``.

    Uses ``|f_x|^2 = phi'^2 + c^2 phi^2 / 4`` and ``Im(conj(f) f_x) = c phi^2 / 2``
    so the phase never has to be sampled; on a periodic box this avoids the
    jump that ``exp(i c x/2)`` has at the wrap unless ``c L`` is a multiple of
    ``2 pi``.
    """
    phi = np.ascontiguousarray(phi, dtype=np.float64)
    dphi = deriv_values(phi, grid).real
    a = phi * phi
    h = grid.spacing
    m2 = kernels.seq_sum(a) * h
    g2 = kernels.seq_sum(dphi * dphi) * h
    m4 = kernels.seq_sum(a * a) * h
    m6 = kernels.seq_sum(a * a * a) * h
    return Integrals(m2, g2 + 0.25 * c * c * m2, m4, m6, 0.5 * c * m2)


# ---------------------------------------------------------------------------
# scalar functionals from the integrals


def mass_of(I: Integrals) -> float:
    return 0.5 * I.m2


def momentum_of(I: Integrals) -> float:
    return -0.5 * I.im + 0.125 * I.m4


def energy_of(I: Integrals) -> float:
    return 0.5 * I.d2 - I.m6 / 32.0


def action_of(I: Integrals, params: Params) -> float:
    return energy_of(I) + params.omega * mass_of(I) + params.c * momentum_of(I)


def nehari_of(I: Integrals, params: Params) -> float:
    w, c = params.omega, params.c
    return I.d2 - 0.1875 * I.m6 + w * I.m2 - c * I.im + 0.5 * c * I.m4


def split_of(I: Integrals, params: Params) -> tuple[float, float]:
    """``(K^Q, K^N)`` in the convention of the regime."""
    w, c = params.omega, params.c
    regime = params.regime
    quad = I.d2 + w * I.m2 - c * I.im
    if regime is Regime.SUBCRITICAL:
        return quad, 0.1875 * I.m6 - 0.5 * c * I.m4
    if regime is Regime.CRITICAL_POSITIVE:
        return quad + 0.5 * c * I.m4, 0.1875 * I.m6
    raise UnsupportedRegime(params, "K^Q/K^N split undefined")


def positive_of(I: Integrals, params: Params) -> float:
    """``J - K/4`` (subcritical) or ``J - K/6`` (critical)."""
    regime = params.regime
    if regime is Regime.SUBCRITICAL:
        return action_of(I, params) - 0.25 * nehari_of(I, params)
    if regime is Regime.CRITICAL_POSITIVE:
        return action_of(I, params) - nehari_of(I, params) / 6.0
    raise UnsupportedRegime(params, "H undefined")


# ---------------------------------------------------------------------------
# public field-level API


def mass(f: Field) -> float:
    return mass_of(integrals(f))


def momentum(f: Field) -> float:
    return momentum_of(integrals(f))


def energy(f: Field) -> float:
    return energy_of(integrals(f))


def action_J(f: Field, params: Params) -> float:
    """``J = E + omega M + c P``."""
    return action_of(integrals(f), params)


def action_J_direct(f: Field, params: Params) -> float:
    """``J`` from its expanded integrand, summed point by point."""
    w, c = params.omega, params.c
    u = f.values
    ux = deriv_values(u, f.grid)
    a = u.real ** 2 + u.imag ** 2
    dens = (
        0.5 * (ux.real ** 2 + ux.imag ** 2)
        - a * a * a / 32.0
        + 0.5 * w * a
        - 0.5 * c * (u.real * ux.imag - u.imag * ux.real)
        + 0.125 * c * a * a
    )
    return integrate_real(dens, f.grid)


class NehariParts(NamedTuple):
    K: float
    KQ: float
    KN: float


def nehari_K(f: Field, params: Params) -> float:
    """Nehari functional; defined for every ``(omega, c)``."""
    return nehari_of(integrals(f), params)


def nehari_parts(f: Field, params: Params) -> NehariParts:
    """``K`` together with its quadratic and nonlinear parts.

    Raises :class:`UnsupportedRegime` outside the subcritical and critical
    positive regimes, where the split is undefined.
    """
    I = integrals(f)
    kq, kn = split_of(I, params)
    return NehariParts(nehari_of(I, params), kq, kn)


def positive_H(f: Field, params: Params) -> float:
    return positive_of(integrals(f), params)


def positive_H_direct(f: Field, params: Params) -> float:
    """``H`` from its manifestly nonnegative integrand.

    ``|f_x - i (c/2) f|^2`` is the pointwise value of
    ``|d/dx (exp(-i c x/2) f)|^2``.
    """
    params.require_admissible()
    w, c = params.omega, params.c
    u = f.values
    ux = deriv_values(u, f.grid)
    g = ux - 0.5j * c * u
    a = u.real ** 2 + u.imag ** 2
    grad = g.real ** 2 + g.imag ** 2
    mu = w - 0.25 * c * c
    if params.regime is Regime.SUBCRITICAL:
        dens = 0.25 * (grad + mu * a + a * a * a / 16.0)
    else:
        dens = (grad + mu * a + 0.125 * c * a * a) / 3.0
    return integrate_real(dens, f.grid)


def gauged_h1dot_sq(f: Field, c: float) -> float:
    """``|| d/dx (exp(-i c x/2) f) ||^2`` via ``|f_x - i (c/2) f|^2``."""
    u = f.values
    g = deriv_values(u, f.grid) - 0.5j * c * u
    return integrate_real(g.real ** 2 + g.imag ** 2, f.grid)


def xc_diagnostics(f: Field, c: float) -> dict:
    """Norms of the phase-stripped field ``exp(-i c x/2) f`` computed literally.

    Returns ``h1dot`` = ||d/dx(exp(-icx/2) f)||_2 and ``l4`` =
    ||exp(-icx/2) f||_4.  The phase is sampled on the grid, so this is only
    accurate for fields that vanish at the box edges.
    """
    psi = np.exp(-0.5j * c * np.asarray(f.grid.x)) * f.values
    d = deriv_values(psi, f.grid)
    a = psi.real ** 2 + psi.imag ** 2
    h1 = integrate_real(d.real ** 2 + d.imag ** 2, f.grid)
    l4 = integrate_real(a * a, f.grid)
    return {"h1dot": math.sqrt(h1), "l4": l4 ** 0.25}


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class FunctionalReport:
    mass: float
    momentum: float
    energy: float
    action: float
    nehari: float
    quadratic_part: Optional[float]
    nonlinear_part: Optional[float]
    positive_part: Optional[float]
    params: Params = field(repr=False)
    regime: Regime = Regime.SUBCRITICAL

    def to_dict(self) -> dict:
        return {
            "mass": self.mass,
            "momentum": self.momentum,
            "energy": self.energy,
            "action": self.action,
            "nehari": self.nehari,
            "quadratic_part": self.quadratic_part,
            "nonlinear_part": self.nonlinear_part,
            "positive_part": self.positive_part,
            "omega": self.params.omega,
            "c": self.params.c,
            "regime": self.regime.value,
        }


def report_from_integrals(I: Integrals, params: Params) -> FunctionalReport:
    kq = kn = h = None
    if params.admissible:
        kq, kn = split_of(I, params)
        h = positive_of(I, params)
    return FunctionalReport(
        mass=mass_of(I),
        momentum=momentum_of(I),
        energy=energy_of(I),
        action=action_of(I, params),
        nehari=nehari_of(I, params),
        quadratic_part=kq,
        nonlinear_part=kn,
        positive_part=h,
        params=params,
        regime=params.regime,
    )


def report(f: Field, params: Params) -> FunctionalReport:
    """Every functional of ``f`` at ``params``; regime-dependent parts are
    ``None`` where the regime leaves them undefined."""
    return report_from_integrals(integrals(f), params)


def profile_report(phi: Field, params: Params) -> FunctionalReport:
    """Report for ``exp(i c x/2) phi`` given the real profile ``phi``."""
    return report_from_integrals(profile_integrals(phi.values.real, phi.grid, params.c), params)
