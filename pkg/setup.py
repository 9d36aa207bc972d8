import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("FRACTALC_SKIP_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "fractalc._kernels_cy",
                    ["src/fractalc/_kernels_cy.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # Build without the compiled core; the package falls back to the
        # pure-Python kernels at import time.
        ext_modules = []

setup(ext_modules=ext_modules)
