"""Sphinx configuration of the Affine Coherent States docs."""

import sys
from pathlib import Path

# Both ``acs`` and the root ``config`` module are documented.
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from acs import __version__  # noqa: E402

project = 'Affine Coherent States'
copyright = '2026, Affine Coherent States Team'  # noqa: A001
author = 'Affine Coherent States Team'
release = __version__
version = __version__

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
]

# Google-style docstrings with typed Args sections
napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_include_init_with_doc = True
napoleon_use_param = True
napoleon_use_rtype = True
napoleon_attr_annotations = True

master_doc = 'index'
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

html_theme = 'sphinx_rtd_theme'
html_theme_options = {
    'prev_next_buttons_location': 'bottom',
    'collapse_navigation': True,
    'navigation_depth': 3,
}

autodoc_default_options = {
    'members': True,
    'member-order': 'bysource',
    'undoc-members': True,
    'exclude-members': '__weakref__',
}
autodoc_typehints = 'description'

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
    'click': ('https://click.palletsprojects.com/en/stable/', None),
}
