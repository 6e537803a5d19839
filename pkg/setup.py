#!/usr/bin/env python3
"""
Setup script for the core entropy engine
"""

from setuptools import find_packages, setup

with open("README.md", encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="core-entropy",
    version="1.0.0",
    description="Exact core entropy of quadratic kneading sequences",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    python_requires=">=3.9",
    install_requires=[
        "numpy==1.26.2",
        "scipy==1.11.4",
        "pandas==2.1.3",
        "pydantic==2.5.0",
        "pydantic-settings==2.1.0",
        "python-dotenv==1.0.0",
        "structlog==23.2.0",
    ],
    extras_require={
        "test": ["pytest==7.4.3", "pytest-cov==4.1.0"],
    },
    entry_points={
        "console_scripts": [
            "core-entropy=core_entropy.main:main",
        ],
    },
)
