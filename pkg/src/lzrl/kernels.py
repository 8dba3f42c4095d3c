"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module takes over.  Setting ``LZRL_PURE_PYTHON=1``
forces the fallback.
"""

import os

from . import _pykernels

if os.environ.get("LZRL_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND

suffix_array = _impl.suffix_array
lcp_array = _impl.lcp_array
smaller_neighbours = _impl.smaller_neighbours
factor_lengths = _impl.factor_lengths
rightmost_sources = _impl.rightmost_sources
greedy_factorize = _impl.greedy_factorize
optimal_parse = _impl.optimal_parse


def available_backends():
    """Map backend name to kernel module for every importable backend."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
