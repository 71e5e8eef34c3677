"""Matrix algebras used by the relation and solver layers.

Two interchangeable backends evaluate composition, residuals, meets and
converses on 2-D numpy arrays:

* :class:`IndexAlgebra` codes a finite set of truth values as int64 and
  calls the compiled (or numpy) kernels.  It serves every structure whose
  operations stay inside a known finite chain: Goedel (codes are ranks of
  the values involved), Lukasiewicz, finite chains and Boolean (code ``k``
  means ``k/d`` for the common denominator ``d``).
* :class:`ExactAlgebra` keeps ``Fraction`` objects and loops in Python.  It
  is the only route for the product structure and doubles as an
  independent reference for the coded route.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable

import numpy as np

from weaklin import kernels
from weaklin.lattice import ONE, ZERO, TNORM_MIN, ResiduatedLattice

# keep top - x + y and x + y inside int64
_MAX_DENOMINATOR = 1 << 60


class IndexAlgebra:
    exact = False

    def __init__(self, lattice: ResiduatedLattice, values: Iterable[Fraction]):
        if lattice.tnorm is None:
            raise ValueError(f"{lattice.name} has no finite integer coding")
        self.lattice = lattice
        self.tnorm = lattice.tnorm
        values = set(values) | {ZERO, ONE}
        if self.tnorm == TNORM_MIN:
            table = sorted(values)
        else:
            d = lcm(*(v.denominator for v in values))
            if d > _MAX_DENOMINATOR:
                raise OverflowError("common denominator too large for int64 coding")
            table = [Fraction(k, d) for k in range(d + 1)]
        self.table = table
        self.top = len(table) - 1
        self.bottom = 0
        if self.tnorm == TNORM_MIN:
            self._code = {v: i for i, v in enumerate(table)}
        else:
            self._code = {}

    def code(self, v: Fraction) -> int:
        c = self._code.get(v)
        if c is None:
            if self.tnorm == TNORM_MIN:
                raise KeyError(f"{v} is not among the coded values")
            c = self._code[v] = v.numerator * (self.top // v.denominator)
        return c

    def encode(self, rows) -> np.ndarray:
        code = self.code
        return np.array([[code(v) for v in row] for row in rows], dtype=np.int64)

    def decode(self, arr: np.ndarray) -> tuple:
        t = self.table
        return tuple(tuple(t[c] for c in row) for row in arr.tolist())

    def compose(self, X, Y):
        return kernels.compose(X, Y, self.tnorm, self.top)

    def right_residual(self, Z, V):
        return kernels.right_residual(Z, V, self.tnorm, self.top)

    def left_residual(self, Z, W):
        return kernels.left_residual(Z, W, self.tnorm, self.top)

    def full(self, shape) -> np.ndarray:
        return np.full(shape, self.top, dtype=np.int64)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)


class ExactAlgebra:
    exact = True

    def __init__(self, lattice: ResiduatedLattice, values: Iterable[Fraction] = ()):
        self.lattice = lattice
        self.top = ONE
        self.bottom = ZERO

    def encode(self, rows) -> np.ndarray:
        arr = np.empty((len(rows), len(rows[0])), dtype=object)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                arr[i, j] = v
        return arr

    def decode(self, arr) -> tuple:
        return tuple(tuple(row) for row in arr.tolist())

    def compose(self, X, Y):
        mul = self.lattice._mul
        Xl, Yl = X.tolist(), Y.T.tolist()
        out = np.empty((len(Xl), len(Yl)), dtype=object)
        for a, xrow in enumerate(Xl):
            for c, ycol in enumerate(Yl):
                best = ZERO
                for x, y in zip(xrow, ycol):
                    v = mul(x, y)
                    if v > best:
                        best = v
                out[a, c] = best
        return out

    def right_residual(self, Z, V):
        imp = self.lattice._imp
        Zc, Vc = Z.T.tolist(), V.T.tolist()
        out = np.empty(Z.shape, dtype=object)
        for a, vcol in enumerate(Vc):
            for b, zcol in enumerate(Zc):
                out[a, b] = min((imp(v, z) for v, z in zip(vcol, zcol)), default=ONE)
        return out

    def left_residual(self, Z, W):
        imp = self.lattice._imp
        Zl, Wl = Z.tolist(), W.tolist()
        out = np.empty(Z.shape, dtype=object)
        for a, zrow in enumerate(Zl):
            for b, wrow in enumerate(Wl):
                out[a, b] = min((imp(w, z) for w, z in zip(wrow, zrow)), default=ONE)
        return out

    def full(self, shape) -> np.ndarray:
        return np.full(shape, ONE, dtype=object)

    def zeros(self, shape) -> np.ndarray:
        return np.full(shape, ZERO, dtype=object)


def make_algebra(lattice: ResiduatedLattice, values: Iterable[Fraction], exact: bool = False):
    """Pick the coded backend when the structure allows it, else the exact one."""
    if exact or lattice.tnorm is None:
        return ExactAlgebra(lattice)
    try:
        return IndexAlgebra(lattice, values)
    except OverflowError:
        return ExactAlgebra(lattice)


# Array helpers valid for both backends.

def meet(X, Y):
    return np.minimum(X, Y)


def join(X, Y):
    return np.maximum(X, Y)


def leq(X, Y) -> bool:
    return bool((X <= Y).all())


def equal(X, Y) -> bool:
    return bool((X == Y).all())


def crisp(X, top, bottom):
    """Crisp part: ``top`` where the entry equals ``top``, ``bottom`` elsewhere."""
    out = np.where(X == top, top, bottom)
    return out.astype(X.dtype)
