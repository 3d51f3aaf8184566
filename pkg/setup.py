#!/usr/bin/env python3
from setuptools import setup

version = "0.1.0"

setup(
    name="hoprep",
    packages=["hoprep"],
    install_requires=[
        "urllib3",
    ],
    entry_points={"console_scripts": ["hoprep = hoprep.cli:main"]},
    version=version,
    description="Higher-order clause set preprocessor",
    keywords=["logic", "theorem proving", "preprocessing", "higher-order"],
    classifiers=[
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Development Status :: 3 - Alpha",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    long_description="""\
Higher-order clause set preprocessor
------------------------------------

Loads a clause set in the .chol format from a file or URL and removes
literals, clauses and predicate symbols while preserving satisfiability and
unsatisfiability: hidden literal based elimination, predicate elimination,
blocked clause elimination and (quasi)pure literal elimination.

See: hoprep.hoprep.preprocess(url=None, file=None, string_content=None, techniques=None)

This version requires Python 3.9 or later.

""",
)
