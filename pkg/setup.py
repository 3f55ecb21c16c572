from setuptools import Extension, setup

# The compiled kernel is optional: echidx falls back to a pure-Python
# implementation of the same routines when the extension is unavailable.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("echidx._kernels", ["src/echidx/_kernels.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
