"""Build the optional Cython kernel.

The package works without it: ``hyperdiff.numdiff`` falls back to the
NumPy implementation when ``hyperdiff._ckernel`` cannot be imported.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("HYPERDIFF_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "hyperdiff._ckernel",
                    ["src/hyperdiff/_ckernel.pyx"],
                    # no FMA contraction: keep rounding close to the NumPy path
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
