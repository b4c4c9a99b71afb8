"""Build script for the optional compiled EM kernel.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so a failed compile only prints a warning.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the Cython kernel if possible; never fail the install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            print(f"warning: compiled kernel skipped ({exc}); "
                  "lexsynth will use the pure-Python EM backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "lexsynth will use the pure-Python EM backend")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available; skipping compiled kernel")
        return []
    return cythonize(
        [
            Extension(
                "lexsynth.align._em_kernel",
                ["src/lexsynth/align/_em_kernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
