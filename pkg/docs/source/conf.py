# -*- coding: utf-8 -*-
#
# Sphinx configuration for the maxscale documentation.
#
# Build with ``sphinx-build -b html docs/source docs/build/html`` from the
# repository root (see docs.sh).

import os
import sys

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
sys.path.insert(0, ROOT)

import maxscale  # noqa: E402


# -- Project information -----------------------------------------------------

project = u"maxscale"
copyright = u"2020, maxscale developers"
author = u"maxscale developers"

release = maxscale.__version__
version = ".".join(release.split(".")[:2])


# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "sphinxarg.ext",
]

source_suffix = ".rst"
master_doc = "index"
exclude_patterns = []
pygments_style = "sphinx"

# Operations are documented in the order they appear in each module.
autodoc_member_order = "bysource"
autodoc_default_options = {
    "members": True,
    "show-inheritance": True,
}

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "networkx": ("https://networkx.org/documentation/stable", None),
}


# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
html_static_path = []

htmlhelp_basename = "maxscaledoc"


# -- Options for manual page output ------------------------------------------

man_pages = [
    ("commandline", "maxscale", u"Max-times scaling and spectral analysis",
     [author], 1)
]
