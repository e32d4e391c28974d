from setuptools import setup

setup(name='superlab',
        version='0.1',
        description='Exact computer algebra for planed LRT Lie supergroup structures on gl(1|1)',
        packages=['superlab'],
        install_requires=['numpy', 'pandas', 'sympy'],
        extras_require={'test': ['pytest', 'hypothesis']},
        entry_points={'console_scripts': ['superlab=superlab.cli:main']}
        )
