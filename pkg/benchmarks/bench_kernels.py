"""Compare the compiled kernel with the NumPy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Reports the best-of-N wall time per workload and the speed-up, and checks
that both backends agree on each result.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from hyperdiff import numdiff
from hyperdiff.inflation import inflate
from hyperdiff.materials import Holzapfel, NeoHookean
from hyperdiff.sweep import run_sweep

F = np.array([[1.3, 0.2, 0.0], [0.1, 0.9, 0.05], [0.0, -0.1, 0.85]])

WORKLOADS = {
    "cauchy x1000 (holzapfel)": lambda: [numdiff.cauchy_stress(Holzapfel(), F) for _ in range(1000)],
    "tangent x200 (holzapfel)": lambda: [numdiff.numerical_tangent_jaumann(Holzapfel(), F) for _ in range(200)],
    "full sweep (neo-hookean)": lambda: run_sweep(NeoHookean()),
    "inflation to 25 kPa": lambda: inflate(),
}


def _time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if not numdiff.compiled_available():
        raise SystemExit("compiled kernel not built; reinstall with Cython available")

    print(f"{'workload':28s} {'compiled':>10s} {'python':>10s} {'speed-up':>9s}")
    for name, fn in WORKLOADS.items():
        times = {}
        for backend in ("compiled", "python"):
            numdiff.set_backend(backend)
            times[backend] = _time(fn, args.repeat)
        numdiff.set_backend("compiled")
        print(
            f"{name:28s} {times['compiled']:9.4f}s {times['python']:9.4f}s"
            f" {times['python'] / times['compiled']:8.1f}x"
        )

    numdiff.set_backend("python")
    ref = numdiff.numerical_tangent_jaumann(Holzapfel(), F)
    numdiff.set_backend("compiled")
    got = numdiff.numerical_tangent_jaumann(Holzapfel(), F)
    print(f"max relative tangent difference: {np.abs(got - ref).max() / np.abs(ref).max():.2e}")


if __name__ == "__main__":
    main()
