import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SCANLIGHT_PURE_PYTHON") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "scanlight.kernels._core",
                    ["src/scanlight/kernels/_core.pyx"],
                    include_dirs=[numpy.get_include()],
                    # -ffp-contract=off: no FMA fusion, keeps results
                    # bit-identical to the numpy fallback on every arch
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        # No Cython/numpy at build time: install the pure-python fallback only.
        ext_modules = []

setup(ext_modules=ext_modules)
