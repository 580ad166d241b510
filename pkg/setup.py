"""Build script: compiles the optional grid-scan extension when Cython and a
C compiler are available, otherwise installs the pure-Python package (the
numpy fallback kernels are selected at import time)."""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "colludetect.kernels._gridscan",
                ["src/colludetect/kernels/_gridscan.pyx"],
                include_dirs=[numpy.get_include()],
                # -ffp-contract=off keeps the compiled kernels bit-identical
                # to the numpy fallback (no FMA fusion).
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    print("colludetect: Cython not available, installing without the "
          "compiled grid-scan kernels", file=sys.stderr)

setup(ext_modules=ext_modules)
