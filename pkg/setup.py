from setuptools import setup

setup(
    name='radial-channels',
    version='0.1.0',
    packages=['radialchannels'],
    license='MIT',
    description='Capacities and entropies of radial multiplier channels on fermion algebras.',
    python_requires='>=3.7',
    install_requires=['numpy>=1.17', 'scipy>=1.4'],
    entry_points={'console_scripts': ['radial-channels = radialchannels.cli:main']},
)
