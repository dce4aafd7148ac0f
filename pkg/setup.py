"""Build the optional compiled kernels; the package falls back to pure Python without them."""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("CHOWRING_PURE_PYTHON", "0") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            ["src/chowring/_kernels.pyx"],
            compiler_directives={"language_level": 3},
            quiet=True,
        )

setup(ext_modules=ext_modules)
