#!/usr/bin/env python3
"""
Setup script for zn-falconer.
For modern Python packaging, prefer pyproject.toml, but setup.py is kept for compatibility.
"""

from setuptools import setup, find_packages
from pathlib import Path

# Read the contents of README file
this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text(encoding='utf-8')

setup(
    name="zn-falconer",
    version="1.0.0",
    description="Exact squared-distance statistics over Z_n^d",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="https://github.com/seu-usuario/zn-falconer",
    project_urls={
        "Bug Tracker": "https://github.com/seu-usuario/zn-falconer/issues",
        "Source Code": "https://github.com/seu-usuario/zn-falconer",
        "Changelog": "https://github.com/seu-usuario/zn-falconer/blob/main/CHANGELOG.md",
    },
    packages=find_packages(exclude=["tests", "tests.*", "docs", "examples", "examples.*"]),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Operating System :: OS Independent",
        "Environment :: Console",
        "Natural Language :: Portuguese (Brazilian)",
    ],
    python_requires=">=3.10",
    install_requires=[
        "click>=8.0",
        "numpy>=1.24",
        "sympy>=1.12",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0",
            "pytest-cov>=4.0",
            "pytest-mock>=3.11",
            "hypothesis>=6.80",
            "black>=22.0",
            "mypy>=0.990",
        ],
        "test": [
            "pytest>=7.0",
            "pytest-cov>=4.0",
            "hypothesis>=6.80",
        ],
    },
    entry_points={
        "console_scripts": [
            "znfal=znfal.cli:cli",
        ],
    },
    include_package_data=True,
    zip_safe=False,
    keywords=["combinatorics", "distances", "modular-arithmetic", "crt", "additive-energy", "cli"],
    platforms=["any"],
)
