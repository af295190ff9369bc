from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("persplit._core._echelon", ["src/persplit/_core/_echelon.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # Pure-Python fallback in persplit._core is used when the extension
    # cannot be built.
    ext_modules = []

setup(ext_modules=ext_modules)
