"""Build script: compiles the optional kernel extension.

The package works without the extension (pure-Python kernel fallback);
compilation failures therefore only emit a warning.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "supercong.kernels._ckernels",
                ["src/supercong/kernels/_ckernels.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover
    print(f"warning: building without compiled kernels ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
