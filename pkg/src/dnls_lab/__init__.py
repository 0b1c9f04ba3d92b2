"""dnls_lab: numerical laboratory for the derivative nonlinear Schrodinger equation.

``classify`` and ``evolve`` are submodules; their namesake functions are
imported from there (``from dnls_lab.evolve import evolve``).
"""

from ._backend import BACKEND
from .classify import (
    ClassificationResult,
    GlobalExistenceCertificate,
    certify_global,
    k_lower_bound,
)
from .errors import (
    ComplexInput,
    DomainError,
    FieldFormatError,
    NoRoot,
    NonFinite,
    NotConverged,
    NotInKPlus,
    UnsupportedRegime,
)
from .evolve import EquationForm, EvolutionConfig, EvolutionTrace, convergence_study, step
from .functionals import (
    FunctionalReport,
    action_J,
    energy,
    mass,
    momentum,
    nehari_K,
    nehari_parts,
    positive_H,
    report,
)
from .gauge import gauge_transform, to_u_form, to_v_form
from .grid import (
    Field,
    GridSpec,
    Params,
    Regime,
    cumulative_integral,
    norms,
    quadrature,
    spectral_derivative,
)
from .soliton import (
    SolitonSpec,
    phi_profile,
    residual_quasilinear,
    residual_semilinear,
    soliton_mass,
    soliton_threshold,
    traveling_wave,
    varphi_profile,
)
from .variational import MinimizationResult, minimize_threshold, rescale_to_nehari, schwarz_symmetrize

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "action_J",
    "BACKEND",
    "certify_global",
    "ClassificationResult",
    "ComplexInput",
    "convergence_study",
    "cumulative_integral",
    "DomainError",
    "energy",
    "EquationForm",
    "EvolutionConfig",
    "EvolutionTrace",
    "Field",
    "FieldFormatError",
    "FunctionalReport",
    "gauge_transform",
    "GlobalExistenceCertificate",
    "GridSpec",
    "k_lower_bound",
    "mass",
    "MinimizationResult",
    "minimize_threshold",
    "momentum",
    "nehari_K",
    "nehari_parts",
    "NonFinite",
    "norms",
    "NoRoot",
    "NotConverged",
    "NotInKPlus",
    "Params",
    "phi_profile",
    "positive_H",
    "quadrature",
    "Regime",
    "report",
    "rescale_to_nehari",
    "residual_quasilinear",
    "residual_semilinear",
    "schwarz_symmetrize",
    "soliton_mass",
    "soliton_threshold",
    "SolitonSpec",
    "spectral_derivative",
    "step",
    "to_u_form",
    "to_v_form",
    "traveling_wave",
    "UnsupportedRegime",
    "varphi_profile",
]
