from setuptools import setup, find_packages

setup(
    name='pySDDB',
    version='0.1.0',
    packages=find_packages(where='src'),
    package_dir={'': 'src'},
    package_data={'pySDDB': ['configs/*.json']},
    install_requires=['numpy>=1.20', 'pandas>=1.3', 'tqdm', 'scipy>=1.6',
                      'statsmodels>=0.12'],
    entry_points={'console_scripts': ['sddb = pySDDB.cli:main']}
)
