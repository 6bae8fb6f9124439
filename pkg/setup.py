from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("dequiv._kernels", ["src/dequiv/_kernels.pyx"])],
        language_level=3,
    )
except ImportError:
    # the pure-Python kernel twin is used when the extension is unavailable
    ext_modules = []

setup(ext_modules=ext_modules)
