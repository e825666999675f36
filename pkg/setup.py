import os

import numpy as np
from setuptools import Extension, setup

# Set QLB_NO_EXT=1 to skip the compiled kernel; the numpy fallback is used instead.
ext_modules = []
if not os.environ.get("QLB_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "qlb._ckernels",
                    ["src/qlb/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3", "-fno-fast-math", "-ffp-contract=off"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
