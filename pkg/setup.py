from diracwalk import __version__, __title__, __author__, __license__
from setuptools import setup, find_packages

with open("README.md", "r") as fh:
    long_description = fh.read()


setup(
    version=__version__,
    name=__title__,
    author=__author__,
    license=__license__,
    author_email="lewis@recruit-hub.com",
    description="Unitary quantum walk simulator for the generalized Dirac equation",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="https://github.com/recruithub/diracwalk",
    packages=find_packages(exclude=["tests"]),
    install_requires=[
        "numpy>=1.24,<3",
    ],
    entry_points={
        "console_scripts": [
            "diracwalk=diracwalk.cli:main",
        ],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    python_requires=">=3.10",
)
