import re

import setuptools

def get_description():
    with open('README.md', 'r') as file:
        return file.read()

def get_version():
    with open('obeq/__init__.py', 'r') as file:
        return re.search(r"__version__ = '([^']+)'", file.read()).group(1)

def main():
    setuptools.setup(
        name = 'obeq',
        version = get_version(),

        keywords = [
            'Functional Equations',
            'Robust Regression',
            'Gamma Distribution',
            'Kernel Density Estimation',
        ],

        description = 'Executable tools for the Olkin-Baker functional equation.',
        long_description = get_description(),
        long_description_content_type = 'text/markdown',

        packages = setuptools.find_packages(exclude = ['tests']),

        install_requires = [
            'numpy>=1.17',
            'scipy>=1.4',
        ],

        python_requires = '>=3.7',

        classifiers = [
            'Intended Audience :: Science/Research',
            'Operating System :: OS Independent',
            'Programming Language :: Python :: 3',
            'Topic :: Scientific/Engineering :: Mathematics',
        ],
    )

if (__name__ == '__main__'):
    main()
