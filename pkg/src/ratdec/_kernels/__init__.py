"""Kernel backend selection.

The compiled Cython module is preferred when it imported cleanly; the
pure-Python module is a drop-in replacement.  Set ``RATDEC_PURE_PYTHON=1``
to force the fallback (used by the benchmark and the cross-check tests).
"""

import os

from . import _fqkernel_py

if os.environ.get("RATDEC_PURE_PYTHON"):
    _impl = _fqkernel_py
else:
    try:
        from . import _fqkernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _fqkernel_py

BACKEND = _impl.BACKEND_NAME

poly_eval = _impl.poly_eval
poly_mul = _impl.poly_mul
poly_roots = _impl.poly_roots
mobius_compose = _impl.mobius_compose
pgl_fixing_scan = _impl.pgl_fixing_scan
