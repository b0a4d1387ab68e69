import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/ratdec/_kernels/_fqkernel.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    print("Cython not available; building without the compiled kernel "
          "(the pure-Python fallback will be used)", file=sys.stderr)

setup(ext_modules=ext_modules)
