"""Acceptance criteria, one check per criterion.

Run under pytest, or directly (``python tests/test_acceptance.py``) for a
pass/fail summary. Each check returns ``(passed, detail)``; sub-results are
listed in the detail so a failure names the part that missed.
"""
from __future__ import annotations

import sys
import time

import numpy as np
import pytest

from hyperdiff import tensor
from hyperdiff.cli import main as cli_main
from hyperdiff.element import PROGRAMS, LoadProgram, compare_modes
from hyperdiff.inflation import CylinderGeometry, inflate, luminal_pressure
from hyperdiff.materials import Holzapfel, NeoHookean
from hyperdiff.numdiff import jaumann_to_oldroyd, numerical_tangent_jaumann, oldroyd_to_jaumann
from hyperdiff.sweep import PATH_KINDS, run_sweep

NH = NeoHookean(c10=8e4, d=2e-6)

_cache = {}


def _full_grid():
    if "grid" not in _cache:
        t0 = time.perf_counter()
        _cache["grid"] = run_sweep(NH)
        _cache["grid_time"] = time.perf_counter() - t0
    return _cache["grid"], _cache["grid_time"]


def _parts(parts):
    ok = all(p for _, p, _ in parts)
    detail = "; ".join(f"{name}: {'ok' if p else 'MISS'} ({info})" for name, p, info in parts)
    return ok, detail


def criterion_1():
    t0 = time.perf_counter()
    grid = run_sweep(NH, eps_c_values=(1e-4,))
    elapsed = time.perf_counter() - t0
    band = [e for e in grid.eps_s_values if 1e-12 <= e <= 1e-4]
    worst = max(grid.stress_fvu(p, e) for p in PATH_KINDS for e in band)
    arg = grid.stress_argmin()
    return _parts([
        ("FVU <= 1e-4 on [1e-12, 1e-4]", worst <= 1e-4, f"max {worst:.3e}"),
        ("argmin eps_s = 1e-8", arg == 1e-8, f"argmin {arg:.0e}"),
        ("runtime <= 10 s", elapsed <= 10.0, f"{elapsed:.2f} s"),
    ])


def criterion_2():
    grid, elapsed = _full_grid()
    tan = {p: grid.tangent_fvu(p, 1e-6, 1e-4) for p in PATH_KINDS}
    sig = {p: grid.stress_fvu(p, 1e-6) for p in PATH_KINDS}
    fmt = ", ".join
    return _parts([
        ("tangent FVU <= 1e-4", max(tan.values()) <= 1e-4, fmt(f"{p} {v:.2e}" for p, v in tan.items())),
        ("stress FVU <= 1e-10", max(sig.values()) <= 1e-10, fmt(f"{p} {v:.2e}" for p, v in sig.items())),
        ("runtime <= 60 s", elapsed <= 60.0, f"{elapsed:.2f} s"),
    ])


def criterion_3():
    C = numerical_tangent_jaumann(NH, np.eye(3))
    c1111 = 2 * NH.c10 * 4 / 3 + 2 / NH.d
    c1212 = 2 * NH.c10
    e1 = abs(C[0, 0] - c1111) / c1111
    e2 = abs(C[3, 3] - c1212) / c1212
    return _parts([
        ("C1111 ~ 1.21333e6", e1 <= 1e-3, f"{C[0, 0]:.6e}, rel {e1:.2e}"),
        ("C1212 = 1.6e5", e2 <= 1e-3, f"{C[3, 3]:.6e}, rel {e2:.2e}"),
    ])


def criterion_4():
    t0 = time.perf_counter()
    parts = []
    for kind in PROGRAMS:
        cmp = compare_modes(LoadProgram(kind), NH)
        num, ana = cmp.numerical, cmp.analytic
        conv = num.converged and ana.converged and len(num.iterations) == len(ana.iterations) == 20
        band = abs(num.total_iterations - ana.total_iterations) <= 0.3 * ana.total_iterations
        parts.append((f"{kind} converged x20", conv, f"{len(num.iterations)}/{len(ana.iterations)}"))
        parts.append((f"{kind} rel err <= 1e-3", cmp.rel_error <= 1e-3, f"{cmp.rel_error:.2e}"))
        parts.append((f"{kind} iterations +-30%", band, f"{num.total_iterations} vs {ana.total_iterations}"))
    elapsed = time.perf_counter() - t0
    parts.append(("runtime <= 5 s", elapsed <= 5.0, f"{elapsed:.2f} s"))
    return _parts(parts)


def _loop_oldroyd(Cj, sigma):
    d = np.eye(3)
    out = Cj.copy()
    for p, (i, j) in enumerate(tensor.VOIGT_PAIRS):
        for q, (k, l) in enumerate(tensor.VOIGT_PAIRS):
            out[p, q] = Cj[p, q] - 0.5 * (
                d[i, k] * sigma[j, l] + d[i, l] * sigma[j, k] + d[j, k] * sigma[i, l] + d[j, l] * sigma[i, k]
            )
    return out


def criterion_5():
    rng = np.random.default_rng(5)
    trips = exact = zero_ok = 0
    entries_missed = 0
    for _ in range(100):
        C = rng.standard_normal((6, 6)) * 1e6
        C = 0.5 * (C + C.T)
        a = rng.standard_normal((3, 3)) * 1e5
        sigma = 0.5 * (a + a.T)
        Co = jaumann_to_oldroyd(C, sigma)
        back = oldroyd_to_jaumann(Co, sigma)
        trips += bool(np.array_equal(back, C))
        entries_missed += int(np.sum(back != C))
        exact += bool(np.array_equal(Co, _loop_oldroyd(C, sigma)))
        z = np.zeros((3, 3))
        zero_ok += bool(np.array_equal(jaumann_to_oldroyd(C, z), C) and np.array_equal(oldroyd_to_jaumann(C, z), C))
    return _parts([
        ("round trip bit-exact", trips == 100, f"{trips}/100 inputs, {entries_missed}/3600 entries not restored"),
        ("identity at sigma = 0", zero_ok == 100, f"{zero_ok}/100"),
        ("matches four-index loop", exact == 100, f"{exact}/100"),
    ])


def criterion_6():
    t0 = time.perf_counter()
    geo, hz = CylinderGeometry(), Holzapfel()
    p0 = luminal_pressure(geo, hz, geo.inner_radius)
    states = inflate(geo, hz)
    radii = [s.inner_radius for s in states]
    inner = all(s.max_principal[0] > s.max_principal[-1] for s in states if s.pressure > 0)
    nonu = [s.nonuniformity for s in states]
    r25 = states[-1].inner_radius
    p25 = luminal_pressure(geo, hz, r25)
    p25_d = luminal_pressure(geo, Holzapfel(d=1e-3), r25)
    p25_r = luminal_pressure(geo, hz, r25, oracle="richardson")
    elapsed = time.perf_counter() - t0
    return _parts([
        ("P(R_i) = 0 within 1e-9 kPa", abs(p0) <= 1e-9, f"{p0:.3e} kPa"),
        ("monotone P-r", bool(np.all(np.diff(radii) > 0)), " < ".join(f"{r:.4f}" for r in radii)),
        ("inner > outer stress", inner, f"at 25 kPa {states[-1].max_principal[0]:.4g} > {states[-1].max_principal[-1]:.4g}"),
        ("non-uniformity grows", bool(np.all(np.diff(nonu) > 0)), " < ".join(f"{u:.3g}" for u in nonu)),
        ("D invariance 1e-8", abs(p25_d - p25) <= 1e-8 * abs(p25), f"rel {abs(p25_d - p25) / abs(p25):.1e}"),
        ("Richardson 1e-4", abs(p25_r - p25) <= 1e-4 * abs(p25_r), f"rel {abs(p25_r - p25) / abs(p25_r):.1e}"),
        ("runtime <= 10 s", elapsed <= 10.0, f"{elapsed:.2f} s"),
    ])


def criterion_7():
    import contextlib
    import io

    buf = io.StringIO()
    t0 = time.perf_counter()
    with contextlib.redirect_stdout(buf):
        status = cli_main(["check"])
    elapsed = time.perf_counter() - t0
    failed = [line for line in buf.getvalue().splitlines() if line.startswith("FAIL")]
    return _parts([
        ("all invariants pass, exit 0", status == 0 and not failed, f"exit {status}, {len(failed)} failed"),
        ("runtime <= 2 s", elapsed <= 2.0, f"{elapsed:.2f} s"),
    ])


CRITERIA = {
    1: ("sweep optimum (stress)", criterion_1),
    2: ("sweep optimum (tangent)", criterion_2),
    3: ("oracle equivalence at identity", criterion_3),
    4: ("single-element verification", criterion_4),
    5: ("rate conversion", criterion_5),
    6: ("inflation properties", criterion_6),
    7: ("invariant suite", criterion_7),
}


def _report(number):
    title, fn = CRITERIA[number]
    ok, detail = fn()
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} | {detail}"
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = _report(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_report(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
