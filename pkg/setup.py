#!/usr/bin/env python
from setuptools import setup, find_packages

setup(name='transurf',
      version='1.0',
      description='Construction and numerical certification of minimal translation surfaces '
                  'generated by space curves with a constant operator spectrum',
      packages=find_packages(exclude=['tests', 'tests.*']),
      scripts=[
      ],
      python_requires='>=3.8',
      install_requires=[
          'numpy',
          'scipy >= 1.12',
          'pandas >= 1.5',
          'jsonpickle',
          'tqdm',
          'trimesh',
      ],
      extras_require={
          'tests': [
              'pytest',
              'hypothesis',
          ],
      },
      entry_points={
          'console_scripts': [
              'transurf=transurf.bin.cli:main',
          ],
      },
      zip_safe=True)
