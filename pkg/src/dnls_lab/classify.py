"""Membership in the invariant sets K+ / K- and the global-existence certificate.

For admissible ``(omega, c)`` and threshold ``J0``::

    K+ = {f : J(f) < J0, K(f) >= 0}        K- = {f : J(f) < J0, K(f) < 0}

Fields with ``J(f) >= J0`` belong to neither and are reported as
``AboveThreshold``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import NotInKPlus
from .functionals import action_of, energy_of, gauged_h1dot_sq, integrals, mass_of, momentum_of, nehari_of
from .grid import Field, Params
from .soliton import soliton_threshold

# J must undercut the threshold by this relative margin to count as "< J0";
# makes the soliton itself land on the boundary despite rounding in J.
THRESHOLD_RTOL = 1e-9
LOWER_BOUND_TOL = 1e-10
CERTIFICATE_TOL = 1e-9
CERTIFICATE_SPEEDS = tuple(2.0 ** k for k in range(21))


class SetLabel(str, enum.Enum):
    KPLUS = "KPlus"
    KMINUS = "KMinus"
    ABOVE = "AboveThreshold"


class Condition(str, enum.Enum):
    MASS_BELOW_2PI = "MassBelow2Pi"
    MASS_EQ_NEG_MOMENTUM = "MassEqNegMomentum"
    MASS_EQ_ZERO_MOM_NEG_ENERGY = "MassEqZeroMomNegEnergy"
    NONE = "None"


@dataclass(frozen=True)
class ClassificationResult:
    params: Params
    j_value: float
    k_value: float
    j_threshold: float
    set: SetLabel
    h1_bound: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "omega": self.params.omega,
            "c": self.params.c,
            "j_value": self.j_value,
            "k_value": self.k_value,
            "j_threshold": self.j_threshold,
            "set": self.set.value,
            "h1_bound": self.h1_bound,
            "threshold_rtol": THRESHOLD_RTOL,
        }


def below_threshold(j_value: float, j_threshold: float) -> bool:
    return j_value < j_threshold - THRESHOLD_RTOL * max(1.0, abs(j_threshold))


def membership(j_value: float, k_value: float, j_threshold: float) -> SetLabel:
    """The set predicate shared by :func:`classify` and :func:`certify_global`."""
    if not below_threshold(j_value, j_threshold):
        return SetLabel.ABOVE
    return SetLabel.KPLUS if k_value >= 0 else SetLabel.KMINUS


def h1_bound(j_threshold: float, params: Params, l2_sq: float) -> float:
    """Upper bound on ``||u_x(t)||^2`` along a K+ solution:
    ``8 J0 - 2 (omega - 2 c^2) ||u0||^2``."""
    return 8.0 * j_threshold - 2.0 * (params.omega - 2.0 * params.c ** 2) * l2_sq


def classify(f: Field, params: Params, j_threshold: float | None = None) -> ClassificationResult:
    """Decide whether ``f`` lies in K+, K- or neither.

    ``j_threshold`` defaults to the exact action of the solitary wave.  For
    K+ members the a priori gradient bound is attached.

    Raises
    ------
    UnsupportedRegime
        If no solitary wave exists at ``params``.
    """
    params.require_admissible()
    if j_threshold is None:
        j_threshold = soliton_threshold(params)
    I = integrals(f)
    j = action_of(I, params)
    k = nehari_of(I, params)
    label = membership(j, k, j_threshold)
    bound = h1_bound(j_threshold, params, I.m2) if label is SetLabel.KPLUS else None
    return ClassificationResult(params, j, k, float(j_threshold), label, bound)


def k_lower_bound(f: Field, params: Params, j_threshold: float | None = None):
    """Evaluate both sides of ``K >= min(4 (J0 - J), ||d/dx(e^{-icx/2} f)||^2/4 + (omega - c^2/4) ||f||^2/4)``.

    Returns ``(lhs, rhs, holds)`` with ``holds = lhs >= rhs - 1e-10``.

    Raises
    ------
    NotInKPlus
        When ``f`` is not classified as K+.
    """
    res = classify(f, params, j_threshold)
    if res.set is not SetLabel.KPLUS:
        raise NotInKPlus(f"field is {res.set.value}, not KPlus (J={res.j_value:.6g}, K={res.k_value:.6g})")
    w, c = params.omega, params.c
    I = integrals(f)
    coercive = 0.25 * gauged_h1dot_sq(f, c) + 0.25 * (w - 0.25 * c * c) * I.m2
    rhs = min(4.0 * (res.j_threshold - res.j_value), coercive)
    lhs = res.k_value
    return lhs, rhs, bool(lhs >= rhs - LOWER_BOUND_TOL)


@dataclass(frozen=True)
class GlobalExistenceCertificate:
    condition_met: Condition
    admissible_c: Optional[float] = None
    kplus_params: Optional[Params] = None
    mass: float = math.nan
    momentum: float = math.nan
    energy: float = math.nan

    def to_dict(self) -> dict:
        p = self.kplus_params
        return {
            "condition_met": self.condition_met.value,
            "admissible_c": self.admissible_c,
            "kplus_omega": None if p is None else p.omega,
            "kplus_c": None if p is None else p.c,
            "mass": self.mass,
            "momentum": self.momentum,
            "energy": self.energy,
            "equality_tolerance": CERTIFICATE_TOL,
        }


def _condition(m: float, p: float, e: float) -> Condition:
    two_pi = 2.0 * math.pi
    if m < two_pi - CERTIFICATE_TOL:
        return Condition.MASS_BELOW_2PI
    if abs(m - two_pi) <= CERTIFICATE_TOL:
        if p < -CERTIFICATE_TOL:
            return Condition.MASS_EQ_NEG_MOMENTUM
        # informational: this class is expected to be empty, but is checked as stated
        if abs(p) <= CERTIFICATE_TOL and e < 0:
            return Condition.MASS_EQ_ZERO_MOM_NEG_ENERGY
    return Condition.NONE


def certify_global(f: Field) -> GlobalExistenceCertificate:
    """Check the mass/momentum/energy conditions for global existence and,
    when one holds, find a speed ``c`` in ``1, 2, 4, ..., 2^20`` with
    ``f`` in K+ at ``(c^2/4, c)`` and ``K > 0``.

    Equalities are tested with absolute tolerance ``1e-9``.  Never raises on
    valid input; a ``None`` condition means no clause applies.
    """
    I = integrals(f)
    m, p, e = mass_of(I), momentum_of(I), energy_of(I)
    cond = _condition(m, p, e)
    if cond is Condition.NONE:
        return GlobalExistenceCertificate(cond, mass=m, momentum=p, energy=e)
    for c in CERTIFICATE_SPEEDS:
        params = Params(0.25 * c * c, c)
        k = nehari_of(I, params)
        label = membership(action_of(I, params), k, soliton_threshold(params))
        if label is SetLabel.KPLUS and k > 0:
            return GlobalExistenceCertificate(cond, c, params, m, p, e)
    return GlobalExistenceCertificate(cond, None, None, m, p, e)
