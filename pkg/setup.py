import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("QMACMAHON_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:  # no Cython: install the pure-Python kernel only
        pass
    else:
        ext_modules = cythonize(
            [Extension("qmacmahon._ckernel", ["src/qmacmahon/_ckernel.pyx"])],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
