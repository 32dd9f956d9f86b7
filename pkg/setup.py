# Builds the optional compiled kernels. The package imports and runs without
# them (see picx.kernels), so a failed compile is not fatal.
import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("PICX_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "picx._ckernels",
                ["src/picx/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
