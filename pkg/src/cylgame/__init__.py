"""Workbench for finite relation- and cylindric-algebra atom structures."""

__version__ = "0.1.0"
