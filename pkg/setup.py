"""Build script: compiles the optional search-kernel extension.

The package is pure Python except for ``swapbribery._kernels``, a small
Cython module mirroring ``swapbribery._search``. If Cython or a C compiler
is unavailable the build falls back to the pure-Python search kernel,
which is selected automatically at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/swapbribery/_kernels.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"swapbribery: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
