"""Build the optional compiled kernels.

The extension works on gmpy2's ``mpq`` payloads, so it must link the very
libgmp that gmpy2 loaded (wheels bundle a private copy in ``gmpy2.libs``).
If Cython, gmpy2 headers or a compiler are missing, the package installs
without it and ``palc.kernels`` falls back to pure Python.
"""

import glob
import os

from setuptools import setup


def _extensions():
    if os.environ.get("PALC_NO_EXT"):
        return []
    try:
        import gmpy2
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    pkg_dir = os.path.dirname(gmpy2.__file__)
    bundled = sorted(glob.glob(os.path.join(pkg_dir + ".libs", "libgmp*.so*")))
    if bundled:
        link = {"extra_link_args": [bundled[0], "-Wl,-rpath," + os.path.dirname(bundled[0])]}
    else:
        link = {"libraries": ["gmp"]}
    ext = Extension(
        "palc._ckernels",
        ["src/palc/_ckernels.pyx"],
        include_dirs=[pkg_dir],
        extra_compile_args=["-O2"],
        optional=True,
        **link,
    )
    return cythonize([ext], compiler_directives={"language_level": "3"}, quiet=True)


setup(ext_modules=_extensions())
