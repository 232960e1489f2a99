"""Hyperelastic stress and tangent from the strain energy alone.

The core routines live in :mod:`hyperdiff.numdiff`; built-in energies are
evaluated by the compiled ``_ckernel`` extension when it was built, and by
the NumPy path otherwise (see :func:`get_backend`).
"""
from .errors import (
    ConfigError,
    DegenerateDenominator,
    ExponentOverflow,
    HyperdiffError,
    NonConvergence,
    NonFiniteEnergy,
    NonPositiveJacobian,
    RootNotBracketed,
    SingularTensor,
)
from .materials import Holzapfel, NeoHookean, richardson_stress_oracle
from .numdiff import (
    EnergyModel,
    FunctionEnergy,
    PerturbationParams,
    cauchy_stress,
    compiled_available,
    get_backend,
    jaumann_to_oldroyd,
    numerical_pk2,
    numerical_tangent_jaumann,
    oldroyd_to_jaumann,
    set_backend,
)

__version__ = "0.1.0"
