"""Periodic grid, field container and the basic discrete calculus on it.

The real line is approximated by the periodic box ``[-L, L)`` sampled at
``N`` equispaced points.  Derivatives are taken in Fourier space and
integrals use the periodic rectangle rule, which is spectrally accurate for
smooth decaying integrands.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from ._backend import kernels
from .errors import UnsupportedRegime

DEFAULT_N = 4096
DEFAULT_HALF_WIDTH = 40.0


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid on ``[-half_width, half_width)``."""

    n_points: int = DEFAULT_N
    half_width: float = DEFAULT_HALF_WIDTH

    def __post_init__(self):
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise ValueError(f"n_points must be an integer >= 2, got {self.n_points!r}")
        if not (self.half_width > 0 and math.isfinite(self.half_width)):
            raise ValueError(f"half_width must be positive, got {self.half_width!r}")
        object.__setattr__(self, "n_points", int(self.n_points))
        object.__setattr__(self, "half_width", float(self.half_width))

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.n_points

    @cached_property
    def x(self) -> np.ndarray:
        x = -self.half_width + self.spacing * np.arange(self.n_points)
        x.setflags(write=False)
        return x

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """``pi j / L`` in numpy FFT ordering."""
        k = (math.pi / self.half_width) * np.fft.fftfreq(self.n_points, d=1.0 / self.n_points)
        k.setflags(write=False)
        return k

    @cached_property
    def derivative_symbol(self) -> np.ndarray:
        """``i k`` with the Nyquist mode removed (odd derivative on even N)."""
        k = np.array(self.wavenumbers)
        if self.n_points % 2 == 0:
            k[self.n_points // 2] = 0.0
        sym = 1j * k
        sym.setflags(write=False)
        return sym

    @cached_property
    def laplacian_symbol(self) -> np.ndarray:
        lap = -np.asarray(self.wavenumbers) ** 2
        lap.setflags(write=False)
        return lap

    @property
    def center_index(self) -> int:
        """Index of the sample at ``x = 0``."""
        return self.n_points // 2


class Field:
    """Complex samples of a function on a :class:`GridSpec`."""

    __slots__ = ("grid", "values")

    def __init__(self, grid: GridSpec, values, *, check: bool = True):
        values = np.ascontiguousarray(values, dtype=np.complex128)
        if check:
            if values.shape != (grid.n_points,):
                raise ValueError(
                    f"expected {grid.n_points} samples, got array of shape {values.shape}"
                )
            if not np.all(np.isfinite(values)):
                raise ValueError("field contains NaN or Inf")
        self.grid = grid
        self.values = values

    @classmethod
    def from_function(cls, grid: GridSpec, func) -> "Field":
        return cls(grid, func(np.asarray(grid.x)))

    @classmethod
    def zeros(cls, grid: GridSpec) -> "Field":
        return cls(grid, np.zeros(grid.n_points, dtype=np.complex128), check=False)

    def copy(self) -> "Field":
        return Field(self.grid, self.values.copy(), check=False)

    def _other(self, other):
        if isinstance(other, Field):
            if other.grid != self.grid:
                raise ValueError("fields live on different grids")
            return other.values
        return other

    def __add__(self, other):
        return Field(self.grid, self.values + self._other(other))

    def __sub__(self, other):
        return Field(self.grid, self.values - self._other(other))

    def __mul__(self, other):
        return Field(self.grid, self.values * self._other(other))

    __rmul__ = __mul__
    __radd__ = __add__

    def __neg__(self):
        return Field(self.grid, -self.values, check=False)

    def conj(self) -> "Field":
        return Field(self.grid, np.conj(self.values), check=False)

    def abs(self) -> "Field":
        return Field(self.grid, np.abs(self.values), check=False)

    def __len__(self):
        return self.grid.n_points

    def __repr__(self):
        return f"Field(n_points={self.grid.n_points}, half_width={self.grid.half_width})"


class Regime(str, enum.Enum):
    SUBCRITICAL = "Subcritical"
    CRITICAL_POSITIVE = "CriticalPositive"
    CRITICAL_NONPOSITIVE = "CriticalNonpositive"
    SUPERCRITICAL = "Supercritical"


# relative tolerance for deciding 4*omega == c**2
CRITICAL_RTOL = 1e-12


def regime_of(omega: float, c: float) -> Regime:
    disc = 4.0 * omega - c * c
    scale = max(1.0, abs(4.0 * omega), c * c)
    if abs(disc) <= CRITICAL_RTOL * scale:
        return Regime.CRITICAL_POSITIVE if c > 0 else Regime.CRITICAL_NONPOSITIVE
    return Regime.SUBCRITICAL if disc > 0 else Regime.SUPERCRITICAL


@dataclass(frozen=True)
class Params:
    """Frequency ``omega`` and velocity ``c`` of a traveling wave."""

    omega: float
    c: float

    def __post_init__(self):
        object.__setattr__(self, "omega", float(self.omega))
        object.__setattr__(self, "c", float(self.c))

    @property
    def regime(self) -> Regime:
        return regime_of(self.omega, self.c)

    @property
    def admissible(self) -> bool:
        """True when a nontrivial traveling wave exists."""
        return self.regime in (Regime.SUBCRITICAL, Regime.CRITICAL_POSITIVE)

    @property
    def is_critical(self) -> bool:
        return self.regime is Regime.CRITICAL_POSITIVE

    def require_admissible(self) -> None:
        if not self.admissible:
            raise UnsupportedRegime(self)


# ---------------------------------------------------------------------------
# array-level helpers (no validation, used in hot paths)


def deriv_values(values: np.ndarray, grid: GridSpec) -> np.ndarray:
    return np.fft.ifft(grid.derivative_symbol * np.fft.fft(values))


def second_deriv_values(values: np.ndarray, grid: GridSpec) -> np.ndarray:
    return np.fft.ifft(grid.laplacian_symbol * np.fft.fft(values))


def integrate_real(values: np.ndarray, grid: GridSpec) -> float:
    return kernels.seq_sum(np.ascontiguousarray(values, dtype=np.float64)) * grid.spacing


# ---------------------------------------------------------------------------
# public operations


def spectral_derivative(f: Field) -> Field:
    """Fourier derivative of ``f``; exact for trigonometric polynomials on the grid."""
    return Field(f.grid, deriv_values(f.values, f.grid), check=False)


def quadrature(f: Field) -> complex:
    """Periodic rectangle rule, summed in index order."""
    h = f.grid.spacing
    re = kernels.seq_sum(np.ascontiguousarray(f.values.real))
    im = kernels.seq_sum(np.ascontiguousarray(f.values.imag))
    return complex(re * h, im * h)


def cumulative_integral(f: Field, rule: str = "rectangle") -> Field:
    """Running primitive of ``f`` starting from ``F(-L) = 0``.

    ``rule="rectangle"`` gives ``F(x_j) = sum_{m<j} f(x_m) h``, first-order
    accurate pointwise.  ``rule="spectral"`` integrates the mean and the
    periodic remainder separately in Fourier space and is exact for
    trigonometric polynomials.  In both cases the left edge of the box stands
    in for ``-infinity``, so the result is only meaningful for fields that
    have decayed there.
    """
    if rule == "rectangle":
        return Field(f.grid, prefix_values(f.values, f.grid), check=False)
    if rule == "spectral":
        return Field(f.grid, spectral_primitive_values(f.values, f.grid), check=False)
    raise ValueError(f"unknown rule {rule!r}")


def prefix_values(values: np.ndarray, grid: GridSpec) -> np.ndarray:
    h = grid.spacing
    if np.isrealobj(values):
        return kernels.exclusive_prefix(np.ascontiguousarray(values, dtype=np.float64)) * h
    re = kernels.exclusive_prefix(np.ascontiguousarray(values.real))
    im = kernels.exclusive_prefix(np.ascontiguousarray(values.imag))
    return (re + 1j * im) * h


def spectral_primitive_values(values: np.ndarray, grid: GridSpec) -> np.ndarray:
    n = grid.n_points
    spec = np.fft.fft(values)
    mean = spec[0] / n
    sym = np.asarray(grid.derivative_symbol)
    inv = np.zeros(n, dtype=np.complex128)
    nz = sym != 0
    inv[nz] = 1.0 / sym[nz]
    periodic = np.fft.ifft(spec * inv)
    out = mean * (np.asarray(grid.x) + grid.half_width) + periodic - periodic[0]
    return out.real if np.isrealobj(values) else out


class Norms(NamedTuple):
    l2_sq: float
    h1dot_sq: float
    l4_4: float
    l6_6: float


def norms(f: Field) -> Norms:
    """``int |f|^2``, ``int |f_x|^2``, ``int |f|^4`` and ``int |f|^6``."""
    fx = deriv_values(f.values, f.grid)
    s2, sd, s4, s6, _ = kernels.density_sums(f.values, fx)
    h = f.grid.spacing
    return Norms(s2 * h, sd * h, s4 * h, s6 * h)


def cyclic_shift(f: Field, shift: float) -> Field:
    """Translate ``f`` by ``shift`` (any real) using the Fourier shift theorem."""
    k = np.asarray(f.grid.wavenumbers)
    spec = np.fft.fft(f.values) * np.exp(-1j * k * shift)
    if f.grid.n_points % 2 == 0:
        # keep the Nyquist mode real so real fields stay real
        nyq = f.grid.n_points // 2
        spec[nyq] = np.fft.fft(f.values)[nyq] * math.cos(k[nyq] * shift)
    return Field(f.grid, np.fft.ifft(spec), check=False)


def reflect(f: Field) -> Field:
    """``f(-x)`` on the grid (index ``j -> N - j``)."""
    idx = (-np.arange(f.grid.n_points)) % f.grid.n_points
    return Field(f.grid, f.values[idx], check=False)


def l2_distance(f: Field, g: Field) -> float:
    d = f.values - g.values
    return math.sqrt(integrate_real(d.real * d.real + d.imag * d.imag, f.grid))
