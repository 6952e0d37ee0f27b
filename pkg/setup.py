"""Build script: compiles the optional accelerator extension.

The package is fully functional without the extension (a pure-Python twin is
selected at import time), so any failure to build it is non-fatal.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "cutkit._accel",
                ["src/cutkit/_accel.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception:  # pragma: no cover - build hosts without Cython/numpy
    ext_modules = []

setup(ext_modules=ext_modules)
