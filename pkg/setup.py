"""Setup file."""
from setuptools import setup, find_packages

with open("README.md", "r") as fh:
    long_description = fh.read()

INSTALL_REQUIRES = ["setuptools", "sympy>=1.12", "numpy>=1.22"]

DEV_REQUIREMENTS = [
    "flake8==6.0",
    "coverage",
]

setup(
    name="wlp_gamma",
    version="0.1.0",
    python_requires=">=3.9",
    setup_requires=["wheel>=0.37.1,<=0.42.0"],
    install_requires=INSTALL_REQUIRES,
    extras_require={"dev": DEV_REQUIREMENTS},
    author="wlp-gamma maintainers",
    license="MIT",
    description="Exact Gamma criterion for the weak Lefschetz property in socle degree three",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(include=["src"]),
    package_data={"src": ["resources/*.json"]},
    entry_points={"console_scripts": ["wlp-gamma=src.__main__:main"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Intended Audience :: Science/Research",
    ],
)
