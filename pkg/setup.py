"""Build the optional Cython core for finite-field kernels.

The extension is optional: if Cython or a C compiler is missing, the
package installs without it and falls back to ``tamebrauer._fqcore_py``.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("TBL_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "tamebrauer._fqcore",
                    ["src/tamebrauer/_fqcore.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # pragma: no cover - build environment dependent
        print(f"tamebrauer: building without compiled core ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
