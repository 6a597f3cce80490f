"""Package setup for Łukasiewicz Workbench."""
from setuptools import setup, find_packages

setup(
    name="lukasiewicz-workbench",
    version="1.0.0",
    description="Exact decision procedure, proof checker and consistency lab for Łukasiewicz logic",
    author="Priyansh Jain",
    license="MIT",
    packages=find_packages(exclude=["tests*"]),
    py_modules=["main"],
    python_requires=">=3.10",
    install_requires=[
        "pydantic>=2.11.0,<3.0.0",
        "python-dotenv>=1.0.0",
        "lark>=1.2.0",
    ],
    extras_require={
        "dev": [
            "pytest>=8.0.0",
            "pytest-cov>=6.0.0",
            "hypothesis>=6.100.0",
            "ruff>=0.8.0",
        ]
    },
    entry_points={
        "console_scripts": [
            "lukasiewicz=main:main",
        ]
    },
)
