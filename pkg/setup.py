"""Build the optional Cython kernels.

The package works without them: ``robustlat.kernels`` falls back to the
pure-Python implementation when the extension cannot be imported.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("ROBUSTLAT_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("robustlat._kernels", ["src/robustlat/_kernels.pyx"])],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
