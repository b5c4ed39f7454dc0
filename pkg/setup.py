from setuptools import Extension, setup
from Cython.Build import cythonize

ext = Extension(
    "wordspace.kernels._inner",
    ["src/wordspace/kernels/_inner.pyx"],
    extra_compile_args=["-O3"],
)

setup(ext_modules=cythonize([ext], language_level=3))
