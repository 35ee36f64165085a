
from setuptools import find_packages,setup

exec(open("xtele/_version.py").read())


setup(
    name = "xtele",
    description= "Closed forms and brute-force oracles for entanglement, Bell-CHSH violation and teleportation fidelity of two-qubit X states",
    long_description = open("README.rst",encoding="utf8").read(),
    version = __version__,
    packages= find_packages(exclude=["tests"]),
    license="European Union Public License 1.2",
    python_requires = ">=3.8.0",
    package_data={"": ["*.txt", "*.rst", "*.json"]},
    install_requires = [
        "numpy >= 1.21.2",
        "scipy >= 1.7.0",
        "pandas >= 1.5.0",
        "tqdm",
    ],
    extras_require={
        "test": ["pytest", "hypothesis"],
    },

    entry_points={
    "console_scripts": [
        "xtele=xtele.cli:main",
    ],
},

)
