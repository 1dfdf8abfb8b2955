"""Build hook for the optional compiled search kernel.

If Cython or a C++ compiler is missing the package still installs and
falls back to the pure-Python search.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("noaverify.search._kernel", ["src/noaverify/search/_kernel.pyx"],
                   language="c++", optional=True)],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
