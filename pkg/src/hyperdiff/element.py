"""Homogeneous single-element load programs on a unit cube.

A cube under homogeneous deformation is represented by one material point.
Each program prescribes some components of ``F`` in equal increments and
solves the remaining ("free") components by Newton iteration so that the
matching Cauchy stress components vanish (traction-free faces).
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import tensor
from .numdiff import (
    DEFAULT_PARAMS,
    EnergyModel,
    PerturbationParams,
    cauchy_stress,
    jaumann_to_oldroyd,
    numerical_tangent_jaumann,
)
from .sweep import sci

# kind -> (default displacement in mm, prescribed component(s), sign, free components)
PROGRAMS = {
    "compress": (0.75, ((0, 0),), -1.0, ((1, 1), (2, 2))),
    "tension": (3.0, ((0, 0),), 1.0, ((1, 1), (2, 2))),
    "biaxial": (3.0, ((0, 0), (1, 1)), 1.0, ((2, 2),)),
    "shear": (1.0, ((0, 1),), 1.0, ((0, 0), (1, 1), (2, 2))),
}
PRIMARY = {"compress": (0, 0), "tension": (0, 0), "biaxial": (0, 0), "shear": (0, 1)}

TOLERANCE = 1e-6
MAX_ITERATIONS = 25


@dataclass(frozen=True)
class LoadProgram:
    kind: str
    displacement: float | None = None
    increments: int = 20
    length: float = 1.0

    def __post_init__(self):
        if self.kind not in PROGRAMS:
            raise ValueError(f"unknown load program {self.kind!r}; choose from {tuple(PROGRAMS)}")
        if self.increments < 1:
            raise ValueError("increments must be >= 1")
        if self.displacement is None:
            object.__setattr__(self, "displacement", PROGRAMS[self.kind][0])

    @property
    def prescribed(self):
        return PROGRAMS[self.kind][1]

    @property
    def free(self):
        return PROGRAMS[self.kind][3]

    @property
    def primary(self):
        return PRIMARY[self.kind]

    def prescribed_value(self, n: int) -> float:
        """Prescribed ``F`` component after increment ``n``."""
        u = PROGRAMS[self.kind][2] * self.displacement * n / self.increments
        return u / self.length if self.kind == "shear" else 1.0 + u / self.length


@dataclass
class SolveReport:
    program: LoadProgram
    mode: str
    prescribed: list = field(default_factory=list)
    iterations: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    free_values: list = field(default_factory=list)
    stresses: list = field(default_factory=list)
    converged: bool = True

    @property
    def total_iterations(self) -> int:
        return int(sum(self.iterations))

    @property
    def final_stress(self) -> np.ndarray:
        return self.stresses[-1]

    @property
    def primary_series(self) -> np.ndarray:
        i, j = self.program.primary
        return np.array([s[i, j] for s in self.stresses])


def _gradient(program: LoadProgram, value: float, x: np.ndarray) -> np.ndarray:
    F = np.eye(3)
    for ij in program.prescribed:
        F[ij] = value
    for ij, v in zip(program.free, x):
        F[ij] = v
    return F


def traction_jacobian(F, sigma, C_jaumann, free) -> np.ndarray:
    """``d sigma[free] / d F[free]`` from a Jaumann-rate tangent.

    With the Oldroyd form ``C_old`` and ``L = dF F^-1``,
    ``d sigma = C_old : D + L sigma + sigma L^T - tr(D) sigma``.
    """
    C4 = tensor.voigt_to_full(jaumann_to_oldroyd(C_jaumann, sigma))
    Finv = tensor.inverse_transpose(F).T
    jac = np.empty((len(free), len(free)))
    for col, (a, b) in enumerate(free):
        L = np.outer(np.eye(3)[a], Finv[b])
        D = 0.5 * (L + L.T)
        dsig = np.einsum("ijkl,kl->ij", C4, D) + L @ sigma + sigma @ L.T - np.trace(D) * sigma
        jac[:, col] = [dsig[ij] for ij in free]
    return jac


def _fd_jacobian(stress, program, value, x, r0, h=1e-7):
    jac = np.empty((len(x), len(x)))
    for col in range(len(x)):
        xp = x.copy()
        xp[col] += h
        sig = stress(_gradient(program, value, xp))
        jac[:, col] = ([sig[ij] for ij in program.free] - r0) / h
    return jac


def solve_program(
    program: LoadProgram,
    material: EnergyModel,
    mode: str = "numerical",
    params: PerturbationParams = DEFAULT_PARAMS,
    jacobian: str = "tangent",
    tol: float = TOLERANCE,
    max_iterations: int = MAX_ITERATIONS,
) -> SolveReport:
    """Run ``program`` with the numerical or the analytic material routine.

    ``jacobian="tangent"`` linearizes the free tractions with the material
    tangent; ``"fd"`` differences the stress routine instead. A failed
    increment ends the run with ``converged=False``.
    """
    if mode == "numerical":
        def stress(F):
            return cauchy_stress(material, F, params.eps_s)

        def tangent(F):
            return numerical_tangent_jaumann(material, F, params)
    elif mode == "analytic":
        if not material.has_analytic:
            raise ValueError(f"{material.name} has no analytic stress/tangent")
        stress, tangent = material.stress, material.tangent
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if jacobian not in ("tangent", "fd"):
        raise ValueError(f"unknown jacobian {jacobian!r}")

    report = SolveReport(program, mode)
    x = np.array([1.0 for _ in program.free])
    for n in range(1, program.increments + 1):
        value = program.prescribed_value(n)
        history = []
        its = 0
        while True:
            F = _gradient(program, value, x)
            sig = stress(F)
            r = np.array([sig[ij] for ij in program.free])
            res = float(np.max(np.abs(r)))
            history.append(res)
            if res <= tol * max(1.0, float(np.max(np.abs(sig)))):
                break
            if its == max_iterations:
                report.converged = False
                break
            if jacobian == "tangent":
                jac = traction_jacobian(F, sig, tangent(F), program.free)
            else:
                jac = _fd_jacobian(stress, program, value, x, r)
            x = x - np.linalg.solve(jac, r)
            its += 1
        report.prescribed.append(value)
        report.iterations.append(its)
        report.residuals.append(history)
        report.free_values.append(x.copy())
        report.stresses.append(sig)
        if not report.converged:
            break
    return report


def relative_error(num: float, ana: float) -> float:
    if ana != 0.0:
        return abs(num - ana) / abs(ana)
    return 0.0 if num == ana else float("inf")


@dataclass
class ModeComparison:
    numerical: SolveReport
    analytic: SolveReport

    @property
    def rel_error(self) -> float:
        """Relative error of the primary stress component at the final increment."""
        i, j = self.numerical.program.primary
        return relative_error(self.numerical.final_stress[i, j], self.analytic.final_stress[i, j])

    @property
    def rel_error_series(self) -> np.ndarray:
        return np.array(
            [relative_error(a, b) for a, b in zip(self.numerical.primary_series, self.analytic.primary_series)]
        )

    def write_csv(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        num, ana = self.numerical, self.analytic
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow([
                "increment", "lambda_prescribed", "sigma_primary_numerical",
                "sigma_primary_analytic", "iterations_numerical", "iterations_analytic", "rel_err",
            ])
            rows = zip(num.prescribed, num.primary_series, ana.primary_series,
                       num.iterations, ana.iterations, self.rel_error_series)
            for n, (lam, sn, sa, itn, ita, err) in enumerate(rows, 1):
                w.writerow([n, sci(lam), sci(sn), sci(sa), itn, ita, sci(err)])
        return path


def compare_modes(
    program: LoadProgram,
    material: EnergyModel,
    params: PerturbationParams = DEFAULT_PARAMS,
    **solver_options,
) -> ModeComparison:
    return ModeComparison(
        solve_program(program, material, "numerical", params, **solver_options),
        solve_program(program, material, "analytic", params, **solver_options),
    )
