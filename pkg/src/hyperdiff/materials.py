"""Reference hyperelastic models.

:class:`NeoHookean` carries closed-form Cauchy stress and Jaumann tangent
and serves as the oracle for the differencing kernel. :class:`Holzapfel`
(two fiber families, no tension/compression switch) provides only its
energy. :func:`richardson_stress_oracle` gives an independent
high-accuracy stress for any energy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import tensor
from .errors import ExponentOverflow, NonPositiveJacobian
from .numdiff import EnergyModel, _energy

EXP_CAP = 700.0


def _jacobian(F, where):
    J = tensor.det(F)
    if not J > 0.0:
        raise NonPositiveJacobian(f"{where}: det(F) = {J:.6e}")
    return J


@dataclass(frozen=True)
class NeoHookean(EnergyModel):
    """``Psi = c10 (I1_bar - 3) + (J - 1)**2 / d``.

    Parameters
    ----------
    c10 : float
        Isochoric constant, Pa.
    d : float
        Volumetric compliance, 1/Pa.
    volumetric : bool
        Drop the volumetric term when False (incompressible drivers).
    """

    c10: float = 80e3
    d: float = 2e-6
    volumetric: bool = True
    name: str = field(default="neo-hookean", compare=False)

    def __post_init__(self):
        if not (self.c10 > 0 and self.d > 0):
            raise ValueError("NeoHookean needs c10 > 0 and d > 0")

    def energy(self, F):
        return neo_hookean_energy(self, F)

    def stress(self, F):
        return neo_hookean_stress(self, F)

    def tangent(self, F):
        return neo_hookean_tangent(self, F)

    def isochoric(self) -> NeoHookean:
        return replace(self, volumetric=False)

    def kernel_spec(self):
        return 0, np.array([self.c10, self.d, float(self.volumetric)])


def neo_hookean_energy(p: NeoHookean, F) -> float:
    J = _jacobian(F, "neo_hookean_energy")
    trc = float(np.sum(F * F))
    psi = p.c10 * (J ** (-2.0 / 3.0) * trc - 3.0)
    if p.volumetric:
        psi += (J - 1.0) ** 2 / p.d
    return psi


def _bbar(F):
    J = _jacobian(F, "neo_hookean")
    return J, J ** (-2.0 / 3.0) * (F @ F.T)


def neo_hookean_stress(p: NeoHookean, F) -> np.ndarray:
    J, b = _bbar(F)
    I = tensor.IDENTITY
    sigma = 2.0 * p.c10 / J * (b - np.trace(b) / 3.0 * I)
    if p.volumetric:
        sigma = sigma + 2.0 / p.d * (J - 1.0) * I
    return 0.5 * (sigma + sigma.T)


def neo_hookean_tangent_full(p: NeoHookean, F) -> np.ndarray:
    """Four-index Jaumann tangent ``(3, 3, 3, 3)`` of the Neo-Hookean model."""
    J, b = _bbar(F)
    d = tensor.IDENTITY
    dik_bjl = np.einsum("ik,jl->ijkl", d, b)
    c = 0.5 * (
        dik_bjl
        + np.einsum("ik,jl->ijkl", b, d)
        + np.einsum("il,jk->ijkl", d, b)
        + np.einsum("il,jk->ijkl", b, d)
    )
    c -= 2.0 / 3.0 * (np.einsum("ij,kl->ijkl", d, b) + np.einsum("ij,kl->ijkl", b, d))
    dd = np.einsum("ij,kl->ijkl", d, d)
    c += 2.0 / 9.0 * np.trace(b) * dd
    c *= 2.0 * p.c10 / J
    if p.volumetric:
        c += 2.0 / p.d * (2.0 * J - 1.0) * dd
    return c


def neo_hookean_tangent(p: NeoHookean, F) -> np.ndarray:
    return tensor.full_to_voigt(neo_hookean_tangent_full(p, F))


def fiber_pair(angle_deg: float, plane: tuple[int, int] = (1, 2)) -> tuple[tuple, tuple]:
    """Unit fibers at +/- ``angle_deg`` from axis ``plane[0]`` toward ``plane[1]``.

    The default places them in the (theta, z) plane of an (r, theta, z) basis.
    """
    a = math.radians(angle_deg)
    u = [0.0, 0.0, 0.0]
    v = [0.0, 0.0, 0.0]
    u[plane[0]] = v[plane[0]] = math.cos(a)
    u[plane[1]] = math.sin(a)
    v[plane[1]] = -math.sin(a)
    return tuple(u), tuple(v)


_DEFAULT_A0, _DEFAULT_G0 = fiber_pair(39.76)


@dataclass(frozen=True)
class Holzapfel(EnergyModel):
    """Two-fiber anisotropic energy::

        Psi = c10 (I1_bar - 3)
              + k1 / (2 k2) [(exp(k2 (I4_bar - 1)**2) - 1) + (exp(k2 (I6_bar - 1)**2) - 1)]
              + ((J**2 - 1) / 2 - ln J) / d

    Fiber terms are active in compression too.
    """

    c10: float = 2.212e4
    d: float = 1e-6
    k1: float = 206.0
    k2: float = 1.465
    a0: tuple = _DEFAULT_A0
    g0: tuple = _DEFAULT_G0
    volumetric: bool = True
    name: str = field(default="holzapfel", compare=False)

    def __post_init__(self):
        if not self.k2 > 0:
            raise ValueError("Holzapfel needs k2 > 0")
        if not (self.c10 > 0 and self.d > 0 and self.k1 >= 0):
            raise ValueError("Holzapfel needs c10 > 0, d > 0, k1 >= 0")
        for name in ("a0", "g0"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (3,) or abs(np.linalg.norm(v) - 1.0) > 1e-12:
                raise ValueError(f"{name} must be a unit 3-vector")
            object.__setattr__(self, name, tuple(float(x) for x in v))

    def energy(self, F):
        return holzapfel_energy(self, F)

    def isochoric(self) -> Holzapfel:
        return replace(self, volumetric=False)

    def kernel_spec(self):
        return 1, np.array(
            [self.c10, self.d, self.k1, self.k2, *self.a0, *self.g0, float(self.volumetric)]
        )


def holzapfel_energy(p: Holzapfel, F) -> float:
    J = _jacobian(F, "holzapfel_energy")
    jm23 = J ** (-2.0 / 3.0)
    trc = float(np.sum(F * F))
    fa = F @ np.asarray(p.a0)
    fg = F @ np.asarray(p.g0)
    i4 = jm23 * float(fa @ fa)
    i6 = jm23 * float(fg @ fg)
    x4 = p.k2 * (i4 - 1.0) ** 2
    x6 = p.k2 * (i6 - 1.0) ** 2
    if x4 > EXP_CAP or x6 > EXP_CAP:
        raise ExponentOverflow(
            f"holzapfel_energy: fiber exponent {max(x4, x6):.4g} exceeds {EXP_CAP:g}"
        )
    psi = p.c10 * (jm23 * trc - 3.0)
    psi += p.k1 / (2.0 * p.k2) * ((math.exp(x4) - 1.0) + (math.exp(x6) - 1.0))
    if p.volumetric:
        psi += ((J * J - 1.0) / 2.0 - math.log(J)) / p.d
    return psi


def _central_kirchhoff(model: EnergyModel, F, h: float) -> np.ndarray:
    # spatial perturbation F + h/2 (e_i e_j + e_j e_i) F: every component of F
    # moves by O(h) relative, however stretched the state is
    tau = np.empty((3, 3))
    for i, j in tensor.VOIGT_PAIRS:
        dF = 0.5 * h * (tensor.sym_dyad(i, j) @ F)
        tau[i, j] = tau[j, i] = (_energy(model, F + dF) - _energy(model, F - dF)) / (2.0 * h)
    return tau


def richardson_stress_oracle(model: EnergyModel, F, h: float = 1e-3) -> np.ndarray:
    """Cauchy stress from central differences extrapolated over ``h`` and ``h/2``.

    The strain perturbation is applied in the current configuration, so the
    difference quotients give Kirchhoff stress; it is pulled back to 2nd
    Piola-Kirchhoff and pushed forward again. Error is O(h**4) for smooth
    energies, and the scheme shares no code path with the one-sided kernel.
    """
    F = np.asarray(F, dtype=np.float64)
    tau = (4.0 * _central_kirchhoff(model, F, 0.5 * h) - _central_kirchhoff(model, F, h)) / 3.0
    Finv = tensor.inverse_transpose(F).T
    return tensor.push_forward(Finv @ tau @ Finv.T, F)
