"""Builds the optional compiled kernel; a pure-Python fallback ships regardless."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "blochiso._kernels.backend_cy",
                ["src/blochiso/_kernels/backend_cy.pyx"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
