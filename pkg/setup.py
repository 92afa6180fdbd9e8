#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup, find_packages

exec(open("flossh/version.py").read())

setup(
    name="flossh",
    version=__version__,
    description="Floquet spectra and edge states of a light-driven "
    + "Su-Schrieffer-Heeger chain",
    license="MIT",
    keywords=["floquet", "ssh", "topological", "edge states", "bessel", "photonics"],
    install_requires=[
        "pyyaml",
        "logbook",
        "pytest",
        "numpy",
        "scipy",
    ],
    entry_points={"console_scripts": ["flossh = flossh.__main__:console"]},
    packages=find_packages(),
    package_data={
        "flossh.resources.configs": ["*.yml", "flossh/resources/configs/*.yml"],
    },
    test_suite="pytest-runner",
    tests_require=["pytest"],
)
