"""Kernel selection.

The compiled GMP kernels are used when the extension was built; otherwise the
pure-Python reference implementation is imported.  Setting
``HOLOCERT_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernels_py as python_kernels

if os.environ.get("HOLOCERT_PURE_PYTHON", "") not in ("", "0"):
    _impl = python_kernels
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = python_kernels

compiled_kernels = _impl if _impl is not python_kernels else None

IMPLEMENTATION = _impl.IMPLEMENTATION
extend_terms = _impl.extend_terms
ratio_pairs = _impl.ratio_pairs
scan_logmono3 = _impl.scan_logmono3
scan_laguerre2 = _impl.scan_laguerre2
scan_u_bounds = _impl.scan_u_bounds
