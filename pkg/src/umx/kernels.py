"""Backend selection for the hot loops.

The compiled extension ``umx._kernels`` is used when it imports; setting
``UMX_PURE_PYTHON=1`` forces the reference implementation.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("UMX_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

triangle_failures = _impl.triangle_failures
first_expansion = _impl.first_expansion
find_strict_noncyclic = _impl.find_strict_noncyclic


def backends():
    """Mapping of every importable backend name to its module."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels as compiled
    except ImportError:
        pass
    else:
        found["cython"] = compiled
    return found
