"""Command-line entry point: ``hyperdiff {sweep,element,inflate,check}``.

Every subcommand reproduces its default experiment with no arguments.
Exit status is 0 on success, 1 when a computation fails and 2 on bad
configuration.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import tensor
from .config import load_geometry, load_material
from .errors import ConfigError, ExponentOverflow, HyperdiffError
from .materials import Holzapfel, NeoHookean
from .numdiff import (
    PerturbationParams,
    cauchy_stress,
    jaumann_to_oldroyd,
    numerical_pk2,
    numerical_tangent_jaumann,
    oldroyd_to_jaumann,
)

PROGRAM_ALIASES = {"simple-shear": "shear", "compression": "compress", "extension": "tension"}


def _params(args) -> PerturbationParams:
    try:
        return PerturbationParams(args.eps_s, args.eps_c)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _material(args, default):
    return load_material(args.material) if args.material else default


def cmd_sweep(args) -> int:
    from .sweep import PATH_KINDS, run_sweep

    model = _material(args, NeoHookean())
    if not model.has_analytic:
        raise ConfigError(f"sweep: material {model.name} has no analytic oracle")
    paths = (args.path,) if args.path else PATH_KINDS
    grid = run_sweep(model, paths=paths)
    files = grid.write_csv(args.out)
    es = grid.stress_argmin()
    ts, tc = grid.tangent_argmin()
    print(f"stress optimum: eps_s = {es:.0e}")
    for p in grid.paths:
        print(f"  {p:9s} argmin eps_s = {grid.stress_argmin(p):.0e}")
    print(f"tangent optimum: (eps_s, eps_c) = ({ts:.0e}, {tc:.0e})")
    for p in grid.paths:
        s, c = grid.tangent_argmin(p)
        print(f"  {p:9s} argmin = ({s:.0e}, {c:.0e})")
    for f in files:
        print(f"wrote {f}")
    return 0


def cmd_element(args) -> int:
    from .element import PROGRAMS, LoadProgram, compare_modes

    model = _material(args, NeoHookean())
    if args.program:
        kinds = (PROGRAM_ALIASES.get(args.program, args.program),)
    else:
        kinds = tuple(PROGRAMS)
    params = _params(args)
    print(f"{'program':10s} {'iter num':>9s} {'iter ana':>9s} {'stress rel err':>15s}")
    errors = []
    status = 0
    for kind in kinds:
        cmp = compare_modes(LoadProgram(kind), model, params)
        path = cmp.write_csv(Path(args.out) / f"element_{kind}.csv")
        ok = cmp.numerical.converged and cmp.analytic.converged
        status |= 0 if ok else 1
        errors.append(cmp.rel_error)
        flag = "" if ok else "  (not converged)"
        print(
            f"{kind:10s} {cmp.numerical.total_iterations:9d} {cmp.analytic.total_iterations:9d}"
            f" {cmp.rel_error:15.3e}{flag}   -> {path}"
        )
    print(f"average relative stress error: {np.mean(errors):.3e}")
    return status


def cmd_inflate(args) -> int:
    from .inflation import CylinderGeometry, inflate, write_inflation_csv

    model = _material(args, Holzapfel())
    if not isinstance(model, Holzapfel):
        raise ConfigError("inflate: material must be holzapfel")
    geometry = load_geometry(args.geometry) if args.geometry else CylinderGeometry()
    if args.pressure < 0:
        raise ConfigError("inflate: --pressure must be non-negative")
    levels = np.linspace(0.0, args.pressure, 5)
    states = inflate(geometry, model, levels, _params(args))
    files = write_inflation_csv(states, args.out)
    print(f"{'P (kPa)':>9s} {'r_i (mm)':>10s} {'r_o (mm)':>10s} {'s_max inner':>12s} {'s_max outer':>12s}")
    for s in states:
        print(
            f"{s.pressure:9.3f} {s.inner_radius:10.5f} {s.outer_radius:10.5f}"
            f" {s.max_principal[0]:12.5g} {s.max_principal[-1]:12.5g}"
        )
    for f in files:
        print(f"wrote {f}")
    return 0


def invariant_checks(params: PerturbationParams = PerturbationParams()):
    """Yield ``(name, passed, detail)`` for the built-in invariant suite."""
    from .sweep import PATH_KINDS, LoadPath, generate_path

    nh, hz = NeoHookean(), Holzapfel()
    I = np.eye(3)
    for m in (nh, hz):
        s = cauchy_stress(m, I, params.eps_s)
        err = float(np.max(np.abs(s)))
        yield f"identity stress {m.name}", err <= 1e-4 * m.c10, f"max|sigma| = {err:.3e} Pa"

    rng = np.random.default_rng(20240601)
    worst = 0.0
    for _ in range(5):
        F = I + 0.2 * rng.standard_normal((3, 3))
        for m in (nh, hz):
            S = numerical_pk2(m, F, params.eps_s)
            sig = cauchy_stress(m, F, params.eps_s)
            C = numerical_tangent_jaumann(m, F, params)
            worst = max(worst, np.max(np.abs(S - S.T)), np.max(np.abs(sig - sig.T)), np.max(np.abs(C - C.T)))
    yield "symmetry of S, sigma, tangent", worst == 0.0, f"max asymmetry = {worst:.3e}"

    det_err = max(
        abs(tensor.det(F) - 1.0) for k in PATH_KINDS for F in generate_path(LoadPath(k))
    )
    yield "det(F) = 1 on load paths", det_err <= 1e-12, f"max |det - 1| = {det_err:.3e}"

    swapped = Holzapfel(a0=hz.g0, g0=hz.a0)
    F = I + 0.2 * rng.standard_normal((3, 3))
    e1, e2 = hz.energy(F), swapped.energy(F)
    yield "fiber-swap symmetry", e1 == e2, f"{e1!r} vs {e2!r}"

    try:
        hz.energy(np.diag([1.0, 30.0, 1.0 / 30.0]))
        cap = False
        detail = "no error raised"
    except ExponentOverflow as exc:
        cap, detail = True, str(exc)
    yield "exponent cap raises", cap, detail

    F = np.diag([2.0, 2.0 ** -0.5, 2.0 ** -0.5])
    num = cauchy_stress(nh, F, params.eps_s)
    ana = nh.stress(F)
    rel = float(np.max(np.abs(num - ana)) / np.max(np.abs(ana)))
    yield "oracle equivalence stress", rel <= 1e-4, f"max rel err = {rel:.3e}"
    Cn = numerical_tangent_jaumann(nh, F, params)
    Ca = nh.tangent(F)
    rel = float(np.max(np.abs(Cn - Ca)) / np.max(np.abs(Ca)))
    yield "oracle equivalence tangent", rel <= 1e-3, f"max rel err = {rel:.3e}"

    Co = jaumann_to_oldroyd(Cn, num)
    back = oldroyd_to_jaumann(Co, num)
    same_image = bool(np.array_equal(jaumann_to_oldroyd(back, num), Co))
    zero = bool(np.array_equal(oldroyd_to_jaumann(jaumann_to_oldroyd(Cn, 0 * num), 0 * num), Cn))
    yield "rate conversion round trip", same_image and zero, (
        f"{int(np.sum(back == Cn))}/36 entries restored bit-exactly, image exact = {same_image}"
    )


def cmd_check(args) -> int:
    t0 = time.perf_counter()
    failed = 0
    for name, ok, detail in invariant_checks(_params(args)):
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    print(f"{failed} failed, {time.perf_counter() - t0:.2f} s")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps-s", type=float, default=1e-6, help="stress perturbation (default 1e-6)")
    common.add_argument("--eps-c", type=float, default=1e-4, help="tangent perturbation (default 1e-4)")
    common.add_argument("--material", help="key=value material file")
    common.add_argument("--out", default="hyperdiff-out", help="output directory")

    parser = argparse.ArgumentParser(prog="hyperdiff", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("sweep", parents=[common], help="perturbation-size sweep (FVU grid)")
    p.add_argument("--path", choices=("uniaxial", "biaxial", "shear"))
    p.set_defaults(func=cmd_sweep)
    p = sub.add_parser("element", parents=[common], help="single-element load programs")
    p.add_argument(
        "--program", choices=("compress", "tension", "biaxial", "shear", *PROGRAM_ALIASES)
    )
    p.set_defaults(func=cmd_element)
    p = sub.add_parser("inflate", parents=[common], help="thick-walled artery inflation")
    p.add_argument("--pressure", type=float, default=25.0, help="final luminal pressure, kPa")
    p.add_argument("--geometry", help="key=value geometry file")
    p.set_defaults(func=cmd_inflate)
    p = sub.add_parser("check", parents=[common], help="built-in invariant suite")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _params(args)
        return args.func(args)
    except ConfigError as exc:
        print(f"hyperdiff {args.command}: configuration error: {exc}", file=sys.stderr)
        return 2
    except HyperdiffError as exc:
        print(f"hyperdiff {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
