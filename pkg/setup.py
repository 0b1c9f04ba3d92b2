"""Build the optional Cython kernels; the package works without them."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("DNLS_LAB_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext = Extension(
            "dnls_lab._kernels",
            ["src/dnls_lab/_kernels.pyx"],
            include_dirs=[numpy.get_include()],
            # no -ffast-math: reductions must stay in strict sequential order
            extra_compile_args=["-O2"],
        )
        ext_modules = cythonize(
            [ext],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
                "embedsignature": True,
            },
        )

setup(ext_modules=ext_modules)
