"""Build script.

The compiled kernel extension is optional: if Cython or a C compiler is
missing the package installs pure-Python and selects the fallback kernels
at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/adelchern/_kernels_c.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print("adelchern: building without compiled kernels (%s)" % exc)

setup(ext_modules=ext_modules)
