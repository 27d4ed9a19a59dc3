import os

from setuptools import setup
from setuptools.extension import Extension

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "ldpc_forge.kernels._speedups",
        ["src/ldpc_forge/kernels/_speedups.pyx"],
        extra_compile_args=["-O3"],
    )
]

# LDPC_FORGE_PURE=1 skips the compiled kernels entirely; the package then
# falls back to the pure-Python implementations at import time.
if cythonize is not None and os.environ.get("LDPC_FORGE_PURE") != "1":
    ext_modules = cythonize(extensions, language_level=3)
else:
    ext_modules = []

setup(ext_modules=ext_modules)
