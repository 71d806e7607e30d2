"""Build script for the conjfix extension module.

The wheel compiles the C++ core directly into the extension, so a plain
``pip install -e . --no-build-isolation`` needs nothing beyond a C++20
compiler and an installed pybind11.
"""

import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext_modules = [
    Pybind11Extension(
        "conjfix._core",
        sorted(glob.glob("src/*.cpp")) + ["python/bindings.cpp"],
        include_dirs=["include", "vendor"],
        cxx_std=20,
    ),
]

setup(ext_modules=ext_modules, cmdclass={"build_ext": build_ext})
