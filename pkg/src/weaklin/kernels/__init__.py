"""Integer-coded sup-(x) / inf-(->) matrix kernels.

The compiled extension ``_ckernels`` is used when it was built; otherwise
the numpy module ``_pykernels`` is selected.  Setting the environment
variable ``WEAKLIN_PURE=1`` forces the fallback.
"""
import os

from weaklin.kernels import _pykernels

TNORM_MIN = _pykernels.TNORM_MIN
TNORM_LUKASIEWICZ = _pykernels.TNORM_LUKASIEWICZ

_impl = _pykernels
BACKEND = "python"
if os.environ.get("WEAKLIN_PURE", "") in ("", "0"):
    try:
        from weaklin.kernels import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        pass

compose = _impl.compose
right_residual = _impl.right_residual
left_residual = _impl.left_residual


def implementations():
    """Map backend name to kernel module for every implementation available."""
    found = {"python": _pykernels}
    try:
        from weaklin.kernels import _ckernels
        found["cython"] = _ckernels
    except ImportError:
        pass
    return found


class use_backend:
    """Context manager routing the module-level kernels to one implementation.

    Used by the benchmark and the cross-backend tests; not thread safe.
    """

    def __init__(self, name: str):
        self.impl = implementations()[name]
        self.name = name

    def __enter__(self):
        global compose, right_residual, left_residual, BACKEND
        self._saved = (compose, right_residual, left_residual, BACKEND)
        compose, right_residual, left_residual = (
            self.impl.compose, self.impl.right_residual, self.impl.left_residual)
        BACKEND = self.name
        return self.impl

    def __exit__(self, *exc):
        global compose, right_residual, left_residual, BACKEND
        compose, right_residual, left_residual, BACKEND = self._saved
        return False
