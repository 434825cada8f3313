"""Build script: compiles the optional Cython kernel.

The package works without the extension (a pure-Python fallback is selected
at import time), so any failure here is non-fatal for `pip install`.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/superalg/_kernel.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"superalg: building without compiled kernel ({exc})")

setup(ext_modules=ext_modules)
