"""Numpy implementation of the integer-coded matrix kernels.

Matrices hold codes ``0..top`` of a finite chain.  With ``TNORM_MIN`` the
codes are ranks and the structure is Goedel; with ``TNORM_LUKASIEWICZ``
code ``k`` stands for ``k/top``.  All arithmetic is on int64, hence exact.
"""
import numpy as np

TNORM_MIN = 0
TNORM_LUKASIEWICZ = 1


def _mul(x, y, tnorm, top):
    if tnorm == TNORM_MIN:
        return np.minimum(x, y)
    return np.maximum(x + y - top, 0)


def _imp(x, y, tnorm, top):
    if tnorm == TNORM_MIN:
        return np.where(x <= y, top, y)
    return np.minimum(top - x + y, top)


def compose(R, S, tnorm, top):
    """Sup-product ``(R o S)[a, c] = max_b R[a, b] (x) S[b, c]``."""
    return _mul(R[:, :, None], S[None, :, :], tnorm, top).max(axis=1).astype(np.int64)


def right_residual(Z, V, tnorm, top):
    """``(Z / V)[a, b] = min_a' V[a', a] -> Z[a', b]``."""
    return _imp(V[:, :, None], Z[:, None, :], tnorm, top).min(axis=0).astype(np.int64)


def left_residual(Z, W, tnorm, top):
    """``(Z \\ W)[a, b] = min_b' W[b, b'] -> Z[a, b']``."""
    return _imp(W[None, :, :], Z[:, None, :], tnorm, top).min(axis=2).astype(np.int64)
