import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled kernel is optional: hamdiff._kernels falls back to the pure
# Python implementation when the extension is missing.
ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "hamdiff._kernels._fast",
                ["src/hamdiff/_kernels/_fast.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
