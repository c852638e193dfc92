# Build with: pip install -e . --no-build-isolation
# The compiled kernels are optional; growthlab.kernels falls back to pure Python.
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("GROWTHLAB_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        import numpy

        ext_modules = cythonize(
            [
                Extension(
                    "growthlab._ckernels",
                    ["src/growthlab/_ckernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
