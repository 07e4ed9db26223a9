"""Build script for the optional compiled arithmetic kernels.

The package works without the extension (a pure-Python fallback is selected
at import time); set HECKECLIFFORD_PURE=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("HECKECLIFFORD_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "heckeclifford._ckernels",
                    ["src/heckeclifford/_ckernels.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
