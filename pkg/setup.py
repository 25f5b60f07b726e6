import os

from setuptools import setup

ext_modules = []
if os.environ.get("KDPATHS_NO_EXT", "") in ("", "0"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:  # fallback kernels are used at runtime
        pass
    else:
        ext_modules = cythonize(
            [Extension("kdpaths._speedups", ["src/kdpaths/_speedups.pyx"],
                       include_dirs=[np.get_include()],
                       define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
