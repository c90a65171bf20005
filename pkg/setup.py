from setuptools import setup, find_packages

setup(name="pulsal",
      version="0.1",
      description="Pulse-domain signal processing with integrate-and-fire "
      "converters",
      author="The pulsal developers",
      packages=find_packages(exclude=["tests", "tests.*"]),
      python_requires=">=3.8",
      install_requires=[
          "numpy>=1.17",
          "scipy>=1.8",
          "pandas>=1.0",
          "sortedcontainers>=2.0",
          "cached-property>=1.5",
      ],
      entry_points={
          "console_scripts": [
              "pulsal = tools.pulsal:main",
          ]
      })
