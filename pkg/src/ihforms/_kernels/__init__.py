"""Hot kernels: compiled core when available, pure-Python fallback otherwise.

The backend is chosen once at import.  Setting ``IHFORMS_PURE_PYTHON=1``
forces the fallback (used by the test suite and the benchmark to compare
both implementations).
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if not os.environ.get("IHFORMS_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl  # noqa: F811

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels

rref_mod_p = _impl.rref_mod_p
matmul_mod_p = _impl.matmul_mod_p
bareiss_pivot = _impl.bareiss_pivot
smith_int64 = _impl.smith_int64

bareiss_pivot_object = _pykernels.bareiss_pivot_object
smith_lists = _pykernels.smith_lists


def compiled_available():
    try:
        from . import _ckernels  # noqa: F401
    except ImportError:
        return False
    return True


def backend_module(name):
    """Return the kernel module for ``"python"`` or ``"cython"``."""
    if name == "python":
        return _pykernels
    from . import _ckernels

    return _ckernels


__all__ = [
    "BACKEND",
    "rref_mod_p",
    "matmul_mod_p",
    "bareiss_pivot",
    "bareiss_pivot_object",
    "smith_int64",
    "smith_lists",
    "compiled_available",
    "backend_module",
]
