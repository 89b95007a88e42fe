"""Build script: compiles the optional exact-arithmetic kernel extension.

The package works without the extension (a pure-Python twin of every kernel
is selected at import time), so a missing compiler or Cython only costs speed.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/wonderland/_kernels_cy.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
