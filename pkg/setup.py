"""Build the optional Cython kernels.

If Cython or a C compiler is missing the package still installs and the
pure-Python kernels are used at import time.
"""
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernels not built ({exc}); using pure Python", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: failed to build {ext.name} ({exc}); using pure Python", file=sys.stderr)


ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        ["src/bicomplex_hilbert/_ckernels.pyx"],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
    for ext in ext_modules:
        ext.extra_compile_args = ["-O3"]

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
