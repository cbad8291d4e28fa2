#!/usr/bin/env python
# -*- coding: utf-8 -*-

import os
from setuptools import setup, find_packages


if os.path.exists('README.rst'):
    long_description = open('README.rst').read()
else:
    long_description = '''Software reliability growth models, optimal release times and module test prioritization.'''

setup(
    name='SRGM-Release',
    version='0.1.0',
    license='MIT',
    packages=find_packages(exclude=['tests']),
    description='Software reliability growth models, optimal release times and module test prioritization.',
    long_description=long_description,
    keywords='software reliability srgm nhpp release testing cost optimization',
    zip_safe=False,
    python_requires='>=3.6',
    entry_points={'console_scripts': ['srgm = srgmrelease.cli:cli']},
    tests_require=['pytest'],
    install_requires=[
        'appdirs', 'click', 'numpy', 'scipy', 'six', 'PyYAML'
    ],
    classifiers=[
        'Intended Audience :: Developers',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Software Development :: Quality Assurance',
        'Topic :: Software Development :: Testing',
    ],
)
