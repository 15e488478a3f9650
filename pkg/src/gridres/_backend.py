"""Kernel backend selection.

Prefers the compiled extension; falls back to the pure-Python kernels when
the extension is absent or GRIDRES_PURE_PYTHON is set. Both backends expose
distance_stats, betweenness_counts, and jacobi_eigh with identical numerics.
"""

import os

if os.environ.get("GRIDRES_PURE_PYTHON"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels


def kernel_backend() -> str:
    """Name of the active kernel backend: 'compiled' or 'pure-python'."""
    return kernels.BACKEND
