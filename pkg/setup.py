from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = [
        Extension(
            "ballgrad._kernels",
            ["src/ballgrad/_kernels.pyx"],
            extra_compile_args=["-O3"],
            libraries=["m"],
        )
    ]
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})
else:
    # no Cython available: install with the pure-python kernels only
    ext_modules = []

setup(ext_modules=ext_modules)
