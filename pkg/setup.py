"""Build script.

Tries to compile the Cython simplex kernel; falls back to the pure-Python
implementation if Cython or a C compiler is unavailable.  The package works
either way -- `csthresh.lp` picks the fastest available kernel at import.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("csthresh._simplex_cy", ["src/csthresh/_simplex_cy.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"csthresh: building without compiled simplex kernel ({exc})")

setup(ext_modules=ext_modules)
