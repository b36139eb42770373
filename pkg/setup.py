from setuptools import find_packages, setup

__version__ = '0.3.0'
URL = 'https://github.com/two-weight-poisson/twp'

with open("README.md", "r") as fh:
    long_description = fh.read()

install_requires = [
    'numpy>1.20.3',
    'omegaconf',
    'pandas>=1.4',
    'PyYAML',
    'scipy',
    'tqdm',
]

experiment_requires = [
    'hydra-core',
]

doc_requires = experiment_requires + [
    'docutils',
    'sphinx',
    'sphinx-copybutton',
    'furo',
]

test_requires = experiment_requires + [
    'pytest',
]
classifiers = [
    "Development Status :: 3 - Alpha",
    "Intended Audience :: Science/Research",
    "Topic :: Scientific/Engineering :: Mathematics",
    "License :: OSI Approved :: MIT License",
    "Programming Language :: Python :: 3.8",
    "Programming Language :: Python :: 3.9",
    "Programming Language :: Python :: 3.10",
    "Programming Language :: Python :: 3.11",
]
setup(
    name='two-weight-poisson',
    version=__version__,
    description='Numerical testing conditions for two-weight inequalities '
    'of Poisson operators on a two-ended manifold',
    long_description=long_description,
    long_description_content_type="text/markdown",
    url=URL,
    license="MIT",
    classifiers=classifiers,
    keywords=[
        'harmonic-analysis', 'two-weight-inequality', 'poisson-kernel',
        'testing-conditions', 'dyadic-cubes', 'non-doubling-measures'
    ],
    python_requires='>=3.8',
    install_requires=install_requires,
    extras_require={
        'experiment': experiment_requires,
        'test': test_requires,
        'doc': doc_requires,
    },
    entry_points={
        'console_scripts': ['twp=twp.cli:main'],
    },
    packages=find_packages(exclude=['examples*', 'tests*']),
)
