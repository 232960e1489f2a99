"""Stress and Jaumann tangent from a strain energy by one-sided differences.

Given only ``Psi(F)``, the 2nd Piola-Kirchhoff stress is recovered one
component at a time by perturbing ``F`` so that the Green strain moves by a
single symmetric unit dyad scaled by ``eps_s``::

    F_hat = F + eps_s/2 * F^-T (e_i e_j + e_j e_i)
    S_ij  = (Psi(F_hat) - Psi(F)) / eps_s

and pushed forward to Cauchy stress. The Jaumann-rate tangent is built from
a second, spatial perturbation of the stress routine::

    F_tilde = F + eps_c/2 (e_k e_l + e_l e_k) F
    C[:, kl] = (J_tilde sigma(F_tilde) - J sigma(F)) / (J eps_c)

Models exposing ``kernel_spec()`` are dispatched to the compiled kernel
when it is available; everything else (and everything when the backend is
set to ``"python"``) goes through the NumPy implementation below.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import tensor
from .errors import NonFiniteEnergy, NonPositiveJacobian

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

_backend = "compiled" if _ckernel is not None else "python"
if os.environ.get("HYPERDIFF_BACKEND", "").lower() == "python":
    _backend = "python"


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    """Select ``"compiled"`` or ``"python"`` for built-in models."""
    global _backend
    if name not in ("compiled", "python"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "compiled" and _ckernel is None:
        raise RuntimeError("compiled kernel is not available in this installation")
    _backend = name


def compiled_available() -> bool:
    return _ckernel is not None


@dataclass(frozen=True)
class PerturbationParams:
    """Perturbation sizes for stress (``eps_s``) and tangent (``eps_c``).

    ``weighting="kirchhoff"`` differences ``J*sigma``; ``"cauchy"`` differences
    ``sigma`` alone and divides by the base-state ``J``.
    """

    eps_s: float = 1e-6
    eps_c: float = 1e-4
    weighting: str = "kirchhoff"

    def __post_init__(self):
        for name in ("eps_s", "eps_c"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {v!r}")
        if self.weighting not in ("kirchhoff", "cauchy"):
            raise ValueError(f"unknown weighting {self.weighting!r}")


DEFAULT_PARAMS = PerturbationParams()


class EnergyModel:
    """Strain energy density ``Psi(F)`` in Pa.

    Subclasses implement :meth:`energy`. Oracle models may also implement
    :meth:`stress` (Cauchy) and :meth:`tangent` (Jaumann, Voigt 6x6).
    ``energy`` must be deterministic and free of shared mutable state.
    """

    name = "energy"

    def energy(self, F: np.ndarray) -> float:
        raise NotImplementedError

    def stress(self, F: np.ndarray) -> np.ndarray:
        raise NotImplementedError(f"{self.name} has no analytic stress")

    def tangent(self, F: np.ndarray) -> np.ndarray:
        raise NotImplementedError(f"{self.name} has no analytic tangent")

    @property
    def has_analytic(self) -> bool:
        cls = type(self)
        return cls.stress is not EnergyModel.stress and cls.tangent is not EnergyModel.tangent

    def kernel_spec(self):
        """``(kind, params)`` for the compiled kernel, or None."""
        return None


class FunctionEnergy(EnergyModel):
    """Wrap a plain callable ``psi(F) -> float`` as an :class:`EnergyModel`."""

    def __init__(self, fn: Callable[[np.ndarray], float], name: str = "user"):
        self.fn = fn
        self.name = name

    def energy(self, F):
        return self.fn(F)


def _compiled_spec(model):
    if _backend != "compiled":
        return None
    return model.kernel_spec()


def _energy(model: EnergyModel, F: np.ndarray) -> float:
    psi = float(model.energy(F))
    if not np.isfinite(psi):
        raise NonFiniteEnergy(f"{model.name}: strain energy is not finite at F = {F.tolist()}")
    return psi


def perturb_F_for_stress(F: np.ndarray, pair: tuple[int, int], eps_s: float) -> np.ndarray:
    """``F + eps_s/2 * F^-T (e_i e_j + e_j e_i)`` for the zero-based pair ``(i, j)``."""
    i, j = pair
    G = tensor.inverse_transpose(F)
    Fh = F.copy()
    Fh[:, j] += 0.5 * eps_s * G[:, i]
    Fh[:, i] += 0.5 * eps_s * G[:, j]
    return Fh


def perturb_F_for_tangent(F: np.ndarray, pair: tuple[int, int], eps_c: float) -> np.ndarray:
    """``F + eps_c/2 * (e_k e_l + e_l e_k) F``; the dyad acts from the left."""
    k, l = pair
    Ft = F.copy()
    Ft[k, :] += 0.5 * eps_c * F[l, :]
    Ft[l, :] += 0.5 * eps_c * F[k, :]
    return Ft


def numerical_pk2(model: EnergyModel, F, eps_s: float = DEFAULT_PARAMS.eps_s) -> np.ndarray:
    """2nd Piola-Kirchhoff stress from seven energy evaluations."""
    F = np.ascontiguousarray(F, dtype=np.float64)
    spec = _compiled_spec(model)
    if spec is not None:
        return _ckernel.pk2(spec[0], spec[1], F, eps_s)
    G = tensor.inverse_transpose(F)
    psi0 = _energy(model, F)
    S = np.empty((3, 3))
    for i, j in tensor.VOIGT_PAIRS:
        Fh = F.copy()
        Fh[:, j] += 0.5 * eps_s * G[:, i]
        Fh[:, i] += 0.5 * eps_s * G[:, j]
        S[i, j] = S[j, i] = (_energy(model, Fh) - psi0) / eps_s
    return S


def cauchy_stress(model: EnergyModel, F, eps_s: float = DEFAULT_PARAMS.eps_s) -> np.ndarray:
    F = np.ascontiguousarray(F, dtype=np.float64)
    spec = _compiled_spec(model)
    if spec is not None:
        return _ckernel.cauchy(spec[0], spec[1], F, eps_s)
    if not tensor.det(F) > 0.0:
        raise NonPositiveJacobian(f"cauchy_stress: det(F) = {tensor.det(F):.6e}")
    return tensor.push_forward(numerical_pk2(model, F, eps_s), F)


def cauchy_stress_many(model: EnergyModel, Fs, eps_s: float = DEFAULT_PARAMS.eps_s) -> np.ndarray:
    """:func:`cauchy_stress` over a stack of deformation gradients ``(n, 3, 3)``."""
    Fs = np.ascontiguousarray(Fs, dtype=np.float64)
    spec = _compiled_spec(model)
    if spec is not None:
        return _ckernel.cauchy_many(spec[0], spec[1], Fs, eps_s)
    return np.array([cauchy_stress(model, F, eps_s) for F in Fs]).reshape(Fs.shape)


def numerical_tangent_jaumann(
    model: EnergyModel, F, params: PerturbationParams = DEFAULT_PARAMS
) -> np.ndarray:
    """Jaumann-rate tangent modulus as a symmetrized 6x6 Voigt matrix (Pa).

    Uses 7 stress evaluations: the base state once plus one per column.
    """
    F = np.ascontiguousarray(F, dtype=np.float64)
    kirchhoff = params.weighting == "kirchhoff"
    spec = _compiled_spec(model)
    if spec is not None:
        return _ckernel.tangent_jaumann(
            spec[0], spec[1], F, params.eps_s, params.eps_c, kirchhoff
        )
    J = tensor.det(F)
    sig0 = cauchy_stress(model, F, params.eps_s)
    C = np.empty((6, 6))
    for q, pair in enumerate(tensor.VOIGT_PAIRS):
        Ft = perturb_F_for_tangent(F, pair, params.eps_c)
        sig1 = cauchy_stress(model, Ft, params.eps_s)
        if kirchhoff:
            d = (tensor.det(Ft) * sig1 - J * sig0) / (J * params.eps_c)
        else:
            d = (sig1 - sig0) / (J * params.eps_c)
        for s, (i, j) in enumerate(tensor.VOIGT_PAIRS):
            C[s, q] = d[i, j]
    return 0.5 * (C + C.T)


def _rate_correction(sigma: np.ndarray) -> np.ndarray:
    """Voigt matrix of 1/2 (d_ik s_jl + d_il s_jk + d_jk s_il + d_jl s_ik)."""
    d = tensor.IDENTITY
    out = np.empty((6, 6))
    for p, (i, j) in enumerate(tensor.VOIGT_PAIRS):
        for q, (k, l) in enumerate(tensor.VOIGT_PAIRS):
            out[p, q] = 0.5 * (
                d[i, k] * sigma[j, l]
                + d[i, l] * sigma[j, k]
                + d[j, k] * sigma[i, l]
                + d[j, l] * sigma[i, k]
            )
    return out


def jaumann_to_oldroyd(Cj: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """Convert a Jaumann-rate tangent to the Oldroyd-rate elasticity tensor."""
    return Cj - _rate_correction(sigma)


def oldroyd_to_jaumann(Cc: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """Inverse of :func:`jaumann_to_oldroyd`, exact in floating point.

    Plain ``Cc + corr`` can miss the original by an ulp. The sum is nudged
    until ``fl(Cj - corr) == Cc`` holds entrywise, so a round trip restores
    the input bit for bit wherever the forward subtraction was injective
    (i.e. did not merge neighbouring floats).
    """
    corr = _rate_correction(sigma)
    Cj = Cc + corr
    for _ in range(4):
        miss = (Cj - corr) != Cc
        if not miss.any():
            break
        up = (Cj - corr) < Cc
        Cj[miss] = np.nextafter(Cj[miss], np.where(up[miss], np.inf, -np.inf))
    return Cj
