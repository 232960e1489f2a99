"""Perturbation-size sweep against an analytic oracle.

Three isochoric load paths are sampled; for every decade ``eps`` in
``1e-1 .. 1e-16`` the numerical stress along each path and the numerical
tangent at each path's final state are scored by the fraction of variance
unexplained, ``FVU = SS_res / SS_tot``.
"""
from __future__ import annotations

import csv
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import tensor
from .errors import DegenerateDenominator, HyperdiffError
from .numdiff import EnergyModel, PerturbationParams, cauchy_stress_many, numerical_tangent_jaumann

PATH_KINDS = ("uniaxial", "biaxial", "shear")
PATH_RANGES = {"uniaxial": (0.25, 4.0), "biaxial": (1.0, 4.0), "shear": (0.0, 0.5)}
# stress component scored on each path
PATH_COMPONENT = {"uniaxial": (0, 0), "biaxial": (0, 0), "shear": (0, 1)}
EPS_DECADES = tuple(10.0 ** -k for k in range(1, 17))


@dataclass(frozen=True)
class LoadPath:
    kind: str
    samples: int = 50

    def __post_init__(self):
        if self.kind not in PATH_KINDS:
            raise ValueError(f"unknown path kind {self.kind!r}; choose from {PATH_KINDS}")
        if self.samples < 2:
            raise ValueError("a load path needs at least 2 samples")

    @property
    def range(self) -> tuple[float, float]:
        return PATH_RANGES[self.kind]

    @property
    def component(self) -> tuple[int, int]:
        return PATH_COMPONENT[self.kind]


def path_gradient(kind: str, level: float) -> np.ndarray:
    """Isochoric deformation gradient of ``kind`` at stretch or shear ``level``."""
    if kind == "uniaxial":
        lat = level ** -0.5
        return np.diag([level, lat, lat])
    if kind == "biaxial":
        return np.diag([level, level, level ** -2])
    if kind == "shear":
        F = np.eye(3)
        F[0, 1] = level
        return F
    raise ValueError(f"unknown path kind {kind!r}")


def generate_path(path: LoadPath) -> np.ndarray:
    """Uniformly sampled deformation gradients, shape ``(samples, 3, 3)``."""
    lo, hi = path.range
    return np.array([path_gradient(path.kind, x) for x in np.linspace(lo, hi, path.samples)])


def fvu(numerical, analytical) -> float:
    """``sum (num - ana)**2 / sum (ana - mean(ana))**2`` over all entries."""
    num = np.asarray(numerical, dtype=np.float64).ravel()
    ana = np.asarray(analytical, dtype=np.float64).ravel()
    if num.shape != ana.shape:
        raise ValueError("numerical and analytical series differ in length")
    if ana.size < 2:
        raise ValueError("FVU needs at least two values")
    ss_tot = float(np.sum((ana - ana.mean()) ** 2))
    if ss_tot < 1e-30:
        raise DegenerateDenominator("analytical series is constant; FVU undefined")
    return float(np.sum((num - ana) ** 2)) / ss_tot


def fvu_stress(numerical, analytical) -> float:
    return fvu(numerical, analytical)


def fvu_tangent(numerical: np.ndarray, analytical: np.ndarray, entries: str = "voigt") -> float:
    """FVU over the 36 Voigt entries, or all 81 ``ijkl`` entries with ``entries="full"``."""
    if entries == "full":
        return fvu(tensor.voigt_to_full(numerical), tensor.voigt_to_full(analytical))
    if entries != "voigt":
        raise ValueError(f"unknown entries mode {entries!r}")
    return fvu(numerical, analytical)


@dataclass
class FvuGrid:
    """Sweep results. ``fvu_sigma[path]`` has shape (n_s,), ``fvu_tangent[path]`` (n_s, n_c)."""

    eps_s_values: tuple
    eps_c_values: tuple
    fvu_sigma: dict = field(default_factory=dict)
    fvu_tangent: dict = field(default_factory=dict)

    @property
    def paths(self):
        return tuple(self.fvu_sigma)

    def stress_argmin(self, path: str | None = None) -> float:
        """Best ``eps_s``; without ``path`` the worst case over paths is minimized."""
        scores = self.fvu_sigma[path] if path else np.max([self.fvu_sigma[p] for p in self.paths], 0)
        return self.eps_s_values[int(np.argmin(scores))]

    def tangent_argmin(self, path: str | None = None) -> tuple[float, float]:
        if path:
            scores = self.fvu_tangent[path]
        else:
            scores = np.max([self.fvu_tangent[p] for p in self.paths], 0)
        i, j = np.unravel_index(int(np.argmin(scores)), scores.shape)
        return self.eps_s_values[i], self.eps_c_values[j]

    def stress_fvu(self, path: str, eps_s: float) -> float:
        return float(self.fvu_sigma[path][self.eps_s_values.index(eps_s)])

    def tangent_fvu(self, path: str, eps_s: float, eps_c: float) -> float:
        i = self.eps_s_values.index(eps_s)
        j = self.eps_c_values.index(eps_c)
        return float(self.fvu_tangent[path][i, j])

    def write_csv(self, outdir) -> tuple[Path, Path]:
        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        stress_file = outdir / "fvu_stress.csv"
        tangent_file = outdir / "fvu_tangent.csv"
        with open(stress_file, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["path", "eps_s", "fvu"])
            for p in self.paths:
                for es, v in zip(self.eps_s_values, self.fvu_sigma[p]):
                    w.writerow([p, sci(es), sci(v)])
        with open(tangent_file, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["path", "eps_s", "eps_c", "fvu"])
            for p in self.paths:
                for i, es in enumerate(self.eps_s_values):
                    for j, ec in enumerate(self.eps_c_values):
                        w.writerow([p, sci(es), sci(ec), sci(self.fvu_tangent[p][i, j])])
        return stress_file, tangent_file


def sci(x: float) -> str:
    """Scientific notation with 17 significant digits."""
    return f"{x:.16e}"


def _safe(fn, *args) -> float:
    # round-off regimes may produce NaN/overflow; score them as failures
    try:
        with np.errstate(all="ignore"):
            v = fn(*args)
    except (HyperdiffError, FloatingPointError, ZeroDivisionError, OverflowError):
        return np.inf
    return v if np.isfinite(v) else np.inf


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HYPERDIFF_THREADS", "1")))
    except ValueError:
        return 1


def run_sweep(
    model: EnergyModel,
    paths=PATH_KINDS,
    samples: int = 50,
    eps_s_values=EPS_DECADES,
    eps_c_values=EPS_DECADES,
    entries: str = "voigt",
    threads: int | None = None,
) -> FvuGrid:
    """Score every ``(path, eps_s)`` stress cell and ``(path, eps_s, eps_c)`` tangent cell.

    Cells are independent and are aggregated in a fixed order, so the result
    does not depend on ``threads`` (default from ``HYPERDIFF_THREADS``).
    """
    if not model.has_analytic:
        raise ValueError(f"{model.name} lacks analytic stress/tangent; cannot run a sweep")
    eps_s_values = tuple(eps_s_values)
    eps_c_values = tuple(eps_c_values)
    grid = FvuGrid(eps_s_values, eps_c_values)

    def stress_cell(Fs, ana, ij, es):
        num = cauchy_stress_many(model, Fs, es)[:, ij[0], ij[1]]
        return fvu_stress(num, ana)

    def tangent_cell(F, C_ana, es, ec):
        return fvu_tangent(numerical_tangent_jaumann(model, F, PerturbationParams(es, ec)), C_ana, entries)

    jobs = []
    for kind in paths:
        path = LoadPath(kind, samples)
        Fs = generate_path(path)
        ij = path.component
        ana = np.array([model.stress(F)[ij] for F in Fs])
        C_ana = model.tangent(Fs[-1])
        for es in eps_s_values:
            jobs.append(("s", kind, stress_cell, (Fs, ana, ij, es)))
        for es in eps_s_values:
            for ec in eps_c_values:
                jobs.append(("t", kind, tangent_cell, (Fs[-1], C_ana, es, ec)))

    n = threads if threads is not None else _threads()
    if n > 1:
        with ThreadPoolExecutor(n) as pool:
            values = list(pool.map(lambda job: _safe(job[2], *job[3]), jobs))
    else:
        values = [_safe(job[2], *job[3]) for job in jobs]

    ns, nc = len(eps_s_values), len(eps_c_values)
    it = iter(zip(jobs, values))
    for kind in paths:
        grid.fvu_sigma[kind] = np.array([next(it)[1] for _ in range(ns)])
        grid.fvu_tangent[kind] = np.array([next(it)[1] for _ in range(ns * nc)]).reshape(ns, nc)
    return grid
