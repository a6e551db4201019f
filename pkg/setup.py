from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # the pure-Python fallback still works
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("crossfam._clique_ext", ["src/crossfam/_clique_ext.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
