"""Inflation of an incompressible thick-walled tube.

Kinematics in the cylindrical basis (r, theta, z) with fixed axial stretch::

    r(R)**2 = r_i**2 + (R**2 - R_i**2) / lambda_z
    F = diag(1 / (lambda_theta lambda_z), r / R, lambda_z)

Radial equilibrium with a traction-free outer wall gives the luminal
pressure ``P = int (s_tt - s_rr) / r dr``. The hydrostatic part of the
stress drops out of that difference, so only the isochoric part of the
energy is differentiated; the wall pressure field is recovered afterwards
from the same integral.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import RootNotBracketed
from .materials import Holzapfel, richardson_stress_oracle
from .numdiff import DEFAULT_PARAMS, EnergyModel, PerturbationParams, cauchy_stress_many
from .sweep import sci

DEFAULT_PRESSURES = (0.0, 6.25, 12.5, 18.75, 25.0)
PANEL_POINTS = 8
RADIUS_TOL = 1e-10


@dataclass(frozen=True)
class CylinderGeometry:
    """Reference radii in mm. The defaults are placeholders of rat-artery size."""

    inner_radius: float = 0.4
    outer_radius: float = 0.5
    axial_stretch: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.inner_radius < self.outer_radius:
            raise ValueError("need 0 < inner_radius < outer_radius")
        if not self.axial_stretch > 0.0:
            raise ValueError("axial_stretch must be positive")

    def current_radius(self, inner_radius_current, R):
        R = np.asarray(R, dtype=float)
        return np.sqrt(inner_radius_current ** 2 + (R ** 2 - self.inner_radius ** 2) / self.axial_stretch)

    def reference_radius(self, inner_radius_current, r):
        r = np.asarray(r, dtype=float)
        return np.sqrt(self.inner_radius ** 2 + self.axial_stretch * (r ** 2 - inner_radius_current ** 2))


@dataclass
class InflationState:
    pressure: float  # kPa
    inner_radius: float  # mm
    outer_radius: float  # mm
    normalized_radius: np.ndarray
    max_principal: np.ndarray  # Pa

    @property
    def nonuniformity(self) -> float:
        s = self.max_principal
        return float((s.max() - s.min()) / s.mean())


def kinematics(geometry: CylinderGeometry, inner_radius_current: float, R) -> np.ndarray:
    """Deformation gradient(s) at reference radius ``R``; det is 1 by construction."""
    R = np.asarray(R, dtype=float)
    r = geometry.current_radius(inner_radius_current, R)
    lz = geometry.axial_stretch
    lt = r / R
    F = np.zeros(R.shape + (3, 3))
    F[..., 0, 0] = 1.0 / (lt * lz)
    F[..., 1, 1] = lt
    F[..., 2, 2] = lz
    return F


@lru_cache(maxsize=None)
def _gauss(n):
    return np.polynomial.legendre.leggauss(n)


def _panel_nodes(a, b, n=PANEL_POINTS):
    """Gauss-Legendre nodes and weights on each panel ``[a[k], b[k]]``."""
    x, w = _gauss(n)
    a = np.asarray(a, dtype=float)[:, None]
    b = np.asarray(b, dtype=float)[:, None]
    half = 0.5 * (b - a)
    return half * x + 0.5 * (a + b), half * w


def _isochoric(material):
    iso = getattr(material, "isochoric", None)
    return iso() if iso is not None else material


def _stress_fn(material, params, oracle):
    iso = _isochoric(material)
    if oracle == "kernel":
        return lambda Fs: cauchy_stress_many(iso, Fs, params.eps_s)
    if oracle == "richardson":
        return lambda Fs: np.array([richardson_stress_oracle(iso, F) for F in Fs])
    raise ValueError(f"unknown stress oracle {oracle!r}")


def _integrand(geometry, r_i, R, stress):
    """``(s_tt - s_rr) R / (lambda_z r**2)``, the equilibrium integrand in ``R``."""
    flat = R.ravel()
    sig = stress(kinematics(geometry, r_i, flat))
    r = geometry.current_radius(r_i, flat)
    val = (sig[:, 1, 1] - sig[:, 0, 0]) * flat / (geometry.axial_stretch * r ** 2)
    return val.reshape(R.shape), sig


def luminal_pressure(
    geometry: CylinderGeometry,
    material: EnergyModel,
    inner_radius_current: float,
    params: PerturbationParams = DEFAULT_PARAMS,
    n_points: int = 64,
    oracle: str = "kernel",
) -> float:
    """Luminal pressure in kPa that holds the inner wall at ``inner_radius_current``.

    ``n_points`` Gauss points spread over panels of 8 across the wall.
    """
    if n_points % PANEL_POINTS:
        raise ValueError(f"n_points must be a multiple of {PANEL_POINTS}")
    edges = np.linspace(geometry.inner_radius, geometry.outer_radius, n_points // PANEL_POINTS + 1)
    R, w = _panel_nodes(edges[:-1], edges[1:])
    f, _ = _integrand(geometry, inner_radius_current, R, _stress_fn(material, params, oracle))
    return float(np.sum(f * w)) / 1e3


def _bracket(pressure_of, r0, target, grow=1.05, r_max=None):
    lo, p_lo = r0, pressure_of(r0)
    hi = r0 * grow
    r_max = r_max or 10.0 * r0
    while hi <= r_max:
        p_hi = pressure_of(hi)
        if p_hi >= target:
            return lo, p_lo, hi, p_hi
        lo, p_lo = hi, p_hi
        hi *= grow
    raise RootNotBracketed(f"inflate: pressure {target:g} kPa not reached for inner radius <= {r_max:g} mm")


def solve_inner_radius(pressure_of, r0, target, tol=RADIUS_TOL) -> float:
    """Safeguarded Newton for ``pressure_of(r) = target`` with bisection fallback."""
    if target == 0.0:
        return r0
    lo, p_lo, hi, p_hi = _bracket(pressure_of, r0, target)
    r = lo + (target - p_lo) * (hi - lo) / (p_hi - p_lo)
    for _ in range(200):
        p = pressure_of(r)
        if p < target:
            lo = r
        else:
            hi = r
        h = 1e-6 * r
        slope = (pressure_of(r + h) - pressure_of(r - h)) / (2.0 * h)
        step = (target - p) / slope if slope > 0 else np.inf
        r_new = r + step
        if not lo < r_new < hi:
            r_new = 0.5 * (lo + hi)
        if abs(r_new - r) < tol or hi - lo < tol:
            return r_new
        r = r_new
    return r


def transmural_profile(
    geometry: CylinderGeometry,
    material: EnergyModel,
    inner_radius_current: float,
    pressure: float,
    params: PerturbationParams = DEFAULT_PARAMS,
    samples: int = 64,
    oracle: str = "kernel",
):
    """Max principal Cauchy stress (Pa) at ``samples`` normalized radii.

    The radial stress is rebuilt from the inner boundary value ``-P`` by
    integrating the equilibrium integrand panel by panel between samples.
    Returns ``(xi, max_principal, sigma_rr_outer)``; the last is the outer
    wall traction and should vanish.
    """
    stress = _stress_fn(material, params, oracle)
    r_i = inner_radius_current
    r_o = float(geometry.current_radius(r_i, geometry.outer_radius))
    xi = np.linspace(0.0, 1.0, samples)
    R_s = geometry.reference_radius(r_i, r_i + xi * (r_o - r_i))
    R_s[0], R_s[-1] = geometry.inner_radius, geometry.outer_radius
    R, w = _panel_nodes(R_s[:-1], R_s[1:])
    f, _ = _integrand(geometry, r_i, R, stress)
    srr = -pressure * 1e3 + np.concatenate([[0.0], np.cumsum(np.sum(f * w, axis=1))])

    sig_iso = stress(kinematics(geometry, r_i, R_s))
    shift = srr - sig_iso[:, 0, 0]
    sig = sig_iso + shift[:, None, None] * np.eye(3)
    top = np.linalg.eigvalsh(sig)[:, -1]
    return xi, top, float(srr[-1])


def inflate(
    geometry: CylinderGeometry = CylinderGeometry(),
    material: EnergyModel | None = None,
    pressures=DEFAULT_PRESSURES,
    params: PerturbationParams = DEFAULT_PARAMS,
    samples: int = 64,
    n_points: int = 64,
) -> list[InflationState]:
    """Equilibrium states at each luminal pressure (kPa)."""
    material = material if material is not None else Holzapfel()
    states = []
    for P in pressures:
        if P < 0:
            raise ValueError("pressures must be non-negative")

        def pressure_of(r):
            return luminal_pressure(geometry, material, r, params, n_points)

        r_i = solve_inner_radius(pressure_of, geometry.inner_radius, float(P))
        xi, top, _ = transmural_profile(geometry, material, r_i, float(P), params, samples)
        states.append(
            InflationState(float(P), r_i, float(geometry.current_radius(r_i, geometry.outer_radius)), xi, top)
        )
    return states


def write_inflation_csv(states, outdir) -> tuple[Path, Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    curve = outdir / "inflation.csv"
    wall = outdir / "transmural.csv"
    with open(curve, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["pressure_kPa", "inner_radius_mm", "outer_radius_mm"])
        for s in states:
            w.writerow([sci(s.pressure), sci(s.inner_radius), sci(s.outer_radius)])
    with open(wall, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["pressure_kPa", "normalized_radius", "max_principal_stress_Pa"])
        for s in states:
            for x, v in zip(s.normalized_radius, s.max_principal):
                w.writerow([sci(s.pressure), sci(x), sci(v)])
    return curve, wall
