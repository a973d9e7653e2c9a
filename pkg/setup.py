#!/usr/bin/env python3
"""
Package setup for zetalab

Usage:
    pip install -e .          # development install with the zetalab command
    python -m unittest discover -s tests -t .
"""

from pathlib import Path

from setuptools import find_packages, setup

here = Path(__file__).parent


def read_requirements():
    """Pinned runtime requirements from requirements.txt (comments dropped)"""
    lines = (here / 'requirements.txt').read_text(encoding='utf-8').splitlines()
    return [line.strip() for line in lines if line.strip() and not line.lstrip().startswith('#')]


setup(
    name='zetalab',
    version='1.0.0',
    description='Zeta integral representations, Laurent series and summation identities with an errata ledger',
    long_description=(here / 'README.md').read_text(encoding='utf-8'),
    long_description_content_type='text/markdown',
    license='MIT',
    packages=find_packages(exclude=('tests',)),
    python_requires='>=3.9',
    install_requires=read_requirements(),
    entry_points={
        'console_scripts': [
            'zetalab=zetalab.cli:main',
        ],
    },
)
