"""Setup script for maxscale"""
import os
import sys

from setuptools import setup

with open("README.md", "r") as fh:
    long_description = fh.read()

sys.path.append(os.path.abspath("."))

setup(
    name="maxscale",
    version=__import__("maxscale").__version__,
    packages=["maxscale"],
    package_data={"maxscale": ["report.schema.json"]},
    entry_points={
        "console_scripts": [
            "maxscale = maxscale.__main__:main"
        ]
    },
    install_requires=[
        "numpy>=1.17",
        "networkx>=3.1",
        "sympy>=1.5",
    ],
    extras_require={
        "test": ["hypothesis>=5.0", "jsonschema>=3.0"],
    },
    description=(
        "Diagonal scaling, spectral and matrix-power analysis in the "
        "max-times semiring."
    ),
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Development Status :: 4 - Beta"
    ],
    python_requires=">=3.8",
    keywords=["max-times", "max-plus", "tropical", "diagonal scaling"],
    license="MIT",
    include_package_data=True
)
