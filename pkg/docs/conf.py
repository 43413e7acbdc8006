"""Sphinx configuration for the pynomkit manual."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from pynomkit import __version__  # noqa: E402

project = "pynomkit"
copyright = "2025, pynomkit contributors"
author = "pynomkit contributors"
release = __version__
version = ".".join(release.split(".")[:2])

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.doctest",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
    "sphinx.ext.intersphinx",
    "sphinx_autodoc_typehints",
]

exclude_patterns = ["_build"]
master_doc = "index"

html_theme = "sphinx_rtd_theme"
html_title = f"pynomkit {release}"

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "networkx": ("https://networkx.org/documentation/stable", None),
    "click": ("https://click.palletsprojects.com/en/stable", None),
}

autodoc_default_options = {
    "members": True,
    "member-order": "bysource",
    "exclude-members": "__weakref__, __post_init__",
}
autodoc_typehints = "description"
autodoc_type_aliases = {
    "Label": "pynomkit.automaton.Label",
    "Source": "pynomkit.automaton.Source",
}

napoleon_google_docstring = True
napoleon_numpy_docstring = False

# Doctest blocks in the guide run against the built-in examples.
doctest_global_setup = """
from pynomkit import UPWord, get_example, up_member
session = get_example("session").automaton()
universal = get_example("universal").automaton()
"""
