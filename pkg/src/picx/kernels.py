"""Kernel backend selection.

The compiled extension ``picx._ckernels`` is used when it imports; otherwise
the pure-Python module is used. Set ``PICX_PURE_PYTHON=1`` to force the
fallback (the test suite runs both).
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if not os.environ.get("PICX_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels

sorted_vectors = _impl.sorted_vectors
pairing_bounded = _impl.pairing_bounded
rank_mod_p = _impl.rank_mod_p


def backends():
    """Map of available backend name -> module, compiled first when present."""
    found = {}
    try:
        from . import _ckernels

        found["compiled"] = _ckernels
    except ImportError:
        pass
    found["python"] = _pykernels
    return found
