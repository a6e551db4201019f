"""Selects the compiled clique kernel when available.

Set ``CROSSFAM_PURE=1`` to force the pure-Python implementation.
"""
import os

from . import _clique_py

BACKEND = "python"
clique_search = _clique_py.clique_search

if os.environ.get("CROSSFAM_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _clique_ext
    except ImportError:
        pass
    else:
        clique_search = _clique_ext.clique_search
        BACKEND = "cython"
