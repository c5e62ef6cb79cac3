"""Sphinx configuration."""
import os
import sys

sys.path.insert(0, os.path.abspath(".."))

project = "ndc2"
author = "ndc2 Contributors"
copyright = "2026, ndc2 Contributors"
extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx_rtd_theme",
    "myst_parser",
    "sphinx_copybutton",
]
autodoc_typehints = "description"
html_theme = "sphinx_rtd_theme"
myst_heading_anchors = 3
