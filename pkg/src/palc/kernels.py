"""Hot-kernel dispatch.

Uses the compiled ``_ckernels`` extension when it was built, else the
pure-Python reference.  ``PALC_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels

if os.environ.get("PALC_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "python" if _impl is _pykernels else "cython"

pivot = _impl.pivot
simplex_run = _impl.simplex_run
triangle = _impl.triangle
bayes = _impl.bayes
