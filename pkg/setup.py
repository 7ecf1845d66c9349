import pacraft

from setuptools import setup

VERSION = pacraft.__version__

with open("README.md") as fh:
    README = fh.read()

setup(
    name="pacraft",
    version="{}".format(VERSION),
    packages=["pacraft",
              "pacraft.generator"],
    package_dir={"pacraft": "pacraft"},
    package_data={"pacraft": ["generator/templates/*"]},
    install_requires=[
        "argparse",
        "jinja2",
        "pycddlib>=2.1,<3",
        "sympy"
    ],
    tests_require=[
        "pytest"
    ],
    description="Exact Minkowski realisations of permutoassociahedra. "
                "Build them. Verify them. Export them.",
    long_description=README,
    long_description_content_type="text/markdown",
    author="pacraft developers",
    license="GPL3",
    entry_points={
        "console_scripts": [
            "pa = pacraft.pacraft:main"
        ]
    }
)
