import sys
from os import path
from codecs import open
from setuptools import setup
sys.path.insert(0, path.abspath(path.dirname(__file__)))
from theta_boundary.constants import ProjInfo

here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

setup(
    name=ProjInfo.PROJECT_NAME,
    version=ProjInfo.VERSION,
    description=ProjInfo.DESCRIPTION,
    long_description_content_type="text/markdown",
    long_description=long_description,
    author=ProjInfo.AUTHOR_FULL_NAME,

    # Classifiers help users find your project by categorizing it.
    # https://pypi.python.org/pypi?%3Aaction=list_classifiers
    classifiers=[  # Optional
        'Development Status :: 4 - Beta',

        'Intended Audience :: Science/Research',
        'Intended Audience :: Education',

        'Topic :: Scientific/Engineering :: Mathematics',

        'Operating System :: OS Independent',

        'Natural Language :: English',

        'License :: OSI Approved :: MIT License',

        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
    ],

    # Note that this is a string of words separated by whitespace, not a list.
    keywords='intersection theory chow ring theta divisor abelian varieties algebraic geometry',  # Optional
    packages=["theta_boundary"],
    python_requires='>=3.8',
    install_requires=[
        'colorama>=0.4.3',
        'Click>=7.0',
        'sympy>=1.9',
    ],

    # For example, the following provides a command called `theta-boundary` which
    # executes the function `cli` from this package when invoked.
    entry_points={
        'console_scripts': 'theta-boundary=theta_boundary.__main__:cli'
    },
)
