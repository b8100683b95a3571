# ================================
# FILE: setup.py
# ================================

from setuptools import setup, find_packages

setup(
    name="hamuni",
    version="1.0.0",
    description="Universality checks, normal forms and certificates for two-qubit Hamiltonians",
    long_description="Which two-qubit Hamiltonians generate every gate",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[
        "click>=8.0",
        "rich>=13.0",
        "pyyaml>=6.0",
        "numpy>=1.21",
        "scipy>=1.9.0",
        "pandas>=1.5",
    ],
    extras_require={
        "fast": ["numba>=0.56.0"],
        "dev": ["pytest>=7.0"],
    },
    entry_points={
        "console_scripts": [
            "hamuni=cli.main:main",
        ],
    },
    python_requires=">=3.9",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Physics",
    ],
)
