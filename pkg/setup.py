from setuptools import find_packages
from setuptools import setup

version = '0.1.0'

setup(name='dwarith',
      version=version,
      description='Arithmetic Dijkgraaf-Witten invariants of finite quotient models',
      author='dwarith developers',
      license='MIT',
      install_requires=['numpy>=1.17.0',
                        'sympy>=1.14'],
      extras_require={
          'tests': ['pytest>=3.5.0'],
      },
      python_requires='>=3.9',
      classifiers=[
          'Development Status :: 3 - Alpha',
          'Intended Audience :: Science/Research',
          'License :: OSI Approved :: MIT License',
          'Programming Language :: Python :: 3 :: Only',
          'Programming Language :: Python :: 3',
          'Programming Language :: Python :: 3.9',
          'Topic :: Scientific/Engineering :: Mathematics'
      ],
      packages=find_packages(exclude=['tests', 'tests.*', 'examples', 'examples.*']),
      package_data={'dwarith': ['data/*.json']},
      entry_points={
          'console_scripts': ['dwarith = dwarith.cli:main'],
      })
