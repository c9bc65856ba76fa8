import os

from setuptools import setup

ext_modules = []
if os.environ.get("MARKSAT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            "src/marksat/_kernels.pyx",
            language_level=3,
            compiler_directives={"boundscheck": False, "wraparound": False},
        )
    except ImportError:
        # Pure-python fallback kernels are selected at import time.
        ext_modules = []

setup(ext_modules=ext_modules)
