"""Build the optional compiled kernels; the package works without them."""
import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class optional_build_ext(build_ext):
    # A failed compile must not fail the install: stratamon.kernels falls back
    # to the pure-Python implementation.
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            self.announce(f"skipping compiled kernels: {exc}", level=3)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self.announce(f"skipping {ext.name}: {exc}", level=3)


ext_modules = []
if cythonize is not None and not os.environ.get("STRATAMON_NO_EXT"):
    ext_modules = cythonize(
        [Extension("stratamon._kernels", ["src/stratamon/_kernels.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
