"""Build script for the pullinlab extension module.

The compiled core (everything under src/) is built straight into the
extension; nothing is linked against the CMake tree, so `pip install` works
from a clean checkout.  Eigen is taken from EIGEN3_INCLUDE_DIR when set and
from the usual system location otherwise.
"""

import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

CORE_SOURCES = [
    "src/domain.cpp",
    "src/rearrange.cpp",
    "src/operators.cpp",
    "src/mems.cpp",
    "src/newton.cpp",
    "src/spectral.cpp",
    "src/config.cpp",
    "src/cases.cpp",
    "src/report.cpp",
    "src/python/bindings.cpp",
]

eigen_include = os.environ.get("EIGEN3_INCLUDE_DIR", "/usr/include/eigen3")

ext = Pybind11Extension(
    "pullinlab._core",
    sources=CORE_SOURCES,
    include_dirs=["include", "vendor", eigen_include],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
