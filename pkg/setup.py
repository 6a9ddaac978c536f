import sys

from setuptools import Extension, setup

# The compiled successor kernel is optional: if Cython (or a C compiler) is
# unavailable the package falls back to the pure-Python kernel at import time.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "nfacanon.kernels._ckernels",
                ["src/nfacanon/kernels/_ckernels.pyx"],
            )
        ],
        language_level=3,
    )
except Exception as e:  # pragma: no cover
    print(f"warning: building without compiled kernels ({e})", file=sys.stderr)

setup(ext_modules=ext_modules)
