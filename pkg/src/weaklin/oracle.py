"""Brute-force reference computations for small instances.

Nothing here goes through the solver's operators or the matrix kernels.
Candidates are enumerated as index arrays into a finite carrier; products
are looked up in a table built from the lattice's own operation, and the
inequalities are checked exactly as the systems are written.  The greatest
solution is then the join of all enumerated solutions.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from weaklin.errors import InconsistencyError, SpaceTooLargeError
from weaklin.lattice import ONE, ZERO, ResiduatedLattice, generated_subalgebra
from weaklin.relation import FuzzyEquivalence, FuzzyRelation

DEFAULT_LIMIT = 10 ** 6
_CHUNK = 1 << 15


class EnumerationSpace:
    """All ``rows x cols`` matrices with entries from ``carrier``."""

    def __init__(self, carrier: Sequence[Fraction], rows: int, cols: int, limit: int = DEFAULT_LIMIT):
        self.carrier = tuple(sorted(set(carrier) | {ZERO, ONE}))
        self.rows, self.cols = rows, cols
        self.limit = limit
        if self.size > limit:
            raise SpaceTooLargeError(
                f"{len(self.carrier)}^{rows * cols} = {self.size} candidates exceeds {limit}")

    @property
    def size(self) -> int:
        return len(self.carrier) ** (self.rows * self.cols)

    def is_closed(self, lattice: ResiduatedLattice) -> bool:
        c = set(self.carrier)
        return all(lattice._mul(x, y) in c and lattice._imp(x, y) in c for x in c for y in c)

    def index_arrays(self) -> Iterator[np.ndarray]:
        """Chunks of candidates as int arrays of shape ``(n, rows, cols)``."""
        k, cells = len(self.carrier), self.rows * self.cols
        for start in range(0, self.size, _CHUNK):
            codes = np.arange(start, min(start + _CHUNK, self.size), dtype=np.int64)
            digits = np.empty((len(codes), cells), dtype=np.int64)
            for c in range(cells - 1, -1, -1):
                digits[:, c] = codes % k
                codes = codes // k
            yield digits.reshape(-1, self.rows, self.cols)


def enumerate_relations(space: EnumerationSpace, lattice: ResiduatedLattice,
                        domain=None, codomain=None) -> Iterator[FuzzyRelation]:
    carrier = space.carrier
    for block in space.index_arrays():
        for cand in block.tolist():
            yield FuzzyRelation(tuple(tuple(carrier[i] for i in row) for row in cand),
                                lattice, domain, codomain, _trusted=True)


def enumerate_equivalences(lattice: ResiduatedLattice, carrier: Sequence[Fraction],
                           n: int, labels=None) -> Iterator[FuzzyEquivalence]:
    """Every fuzzy equivalence on ``n`` points with values in ``carrier``.

    Reflexivity and symmetry are built in; transitivity is checked pointwise.
    """
    carrier = tuple(sorted(set(carrier) | {ZERO, ONE}))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mul = lattice._mul
    for values in itertools.product(carrier, repeat=len(pairs)):
        M = [[ONE if i == j else None for j in range(n)] for i in range(n)]
        for (i, j), v in zip(pairs, values):
            M[i][j] = M[j][i] = v
        if all(mul(M[i][j], M[j][k]) <= M[i][k]
               for i in range(n) for j in range(n) for k in range(n)):
            yield FuzzyEquivalence(tuple(map(tuple, M)), lattice, labels, labels, _trusted=True)


class _Tables:
    """Product table over a carrier, with results ranked in the finite set of
    all pairwise products (sups of such products stay in that set)."""

    def __init__(self, lattice: ResiduatedLattice, carrier: tuple):
        self.carrier = carrier
        self.pos = {v: i for i, v in enumerate(carrier)}
        prods = sorted({lattice._mul(x, y) for x in carrier for y in carrier})
        rank = {v: i for i, v in enumerate(prods)}
        self.mul = np.array([[rank[lattice._mul(x, y)] for y in carrier] for x in carrier],
                            dtype=np.int64)

    def encode(self, R: FuzzyRelation) -> np.ndarray:
        try:
            return np.array([[self.pos[v] for v in row] for row in R.rows], dtype=np.int64)
        except KeyError as exc:
            raise ValueError(f"value {exc.args[0]} of the system is outside the carrier") from None

    def compose(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Batched sup-product; either operand may be 2-D (shared) or 3-D (per candidate)."""
        if X.ndim == 2:
            X = X[None]
        if Y.ndim == 2:
            Y = Y[None]
        return self.mul[X[:, :, :, None], Y[:, None, :, :]].max(axis=2)


def _leq(X, Y) -> np.ndarray:
    return (X <= Y).all(axis=(1, 2))


def _eq(X, Y) -> np.ndarray:
    return (X == Y).all(axis=(1, 2))


def _raw_mask(kind, t: _Tables, U, V, W, bound) -> np.ndarray:
    """Which candidates in the batch ``U`` satisfy the system as written."""
    Ut = U.transpose(0, 2, 1)
    n = U.shape[0]
    ok = np.ones(n, dtype=bool)
    v_ = kind.variant
    if not kind.homogeneous:
        ok &= _leq(U, bound[None])
        for Vi, Wi in zip(V, W):
            if v_ in (1, 3):
                ok &= _leq(t.compose(Ut, Vi), t.compose(Wi, Ut))
            if v_ in (2, 4):
                ok &= _leq(t.compose(Vi, U), t.compose(U, Wi))
            if v_ == 3:
                ok &= _leq(t.compose(U, Wi), t.compose(Vi, U))
            if v_ == 4:
                ok &= _leq(t.compose(Wi, Ut), t.compose(Ut, Vi))
            if v_ == 5:
                ok &= _eq(t.compose(Vi, U), t.compose(U, Wi))
            if v_ == 6:
                ok &= _eq(t.compose(Ut, Vi), t.compose(Wi, Ut))
        return ok
    ok &= _leq(U, bound[None])
    subjects = [U]
    if v_ >= 4:
        ok &= _leq(Ut, bound[None])
        subjects.append(Ut)
    for X in subjects:
        for Vi in V:
            left, right = t.compose(X, Vi), t.compose(Vi, X)
            if v_ in (1, 4):
                ok &= _leq(left, right)
            elif v_ in (2, 5):
                ok &= _leq(right, left)
            else:
                ok &= _eq(left, right)
    return ok


def _bound_as_indices(t: _Tables, Z: FuzzyRelation) -> np.ndarray:
    # U <= Z with U carrier-valued: compare against the largest carrier value below each entry
    out = np.empty(Z.shape, dtype=np.int64)
    for i, row in enumerate(Z.rows):
        for j, z in enumerate(row):
            out[i, j] = max(k for k, c in enumerate(t.carrier) if c <= z)
    return out


class _Problem:
    def __init__(self, system, carrier, limit):
        lattice = system.lattice
        if carrier is None:
            carrier = generated_subalgebra(lattice, system.values(), cap=64)
            if carrier is None:
                raise SpaceTooLargeError("the values generate a carrier too large to enumerate")
        self.space = EnumerationSpace(carrier, len(system.A), len(system.B), limit)
        self.tables = _Tables(lattice, self.space.carrier)
        enc = self.tables.encode
        self.V = [enc(v) for v in system.V]
        self.W = [enc(w) for w in system.W]
        self.bound = _bound_as_indices(self.tables, system.bound)
        self.system = system

    def masks(self):
        for block in self.space.index_arrays():
            yield block, _raw_mask(self.system.kind, self.tables, block, self.V, self.W, self.bound)

    def decode(self, X) -> FuzzyRelation:
        c = self.space.carrier
        s = self.system
        return FuzzyRelation(tuple(tuple(c[i] for i in row) for row in X.tolist()),
                             s.lattice, s.A, s.B, _trusted=True)


def is_solution(system, R: FuzzyRelation, carrier: Optional[Sequence[Fraction]] = None) -> bool:
    """Independent check of the raw system at one relation whose entries lie in the carrier."""
    if carrier is None:
        carrier = set(R.image()) | system.values()
    carrier = tuple(sorted(set(carrier) | {ZERO, ONE}))
    t = _Tables(system.lattice, carrier)
    U = t.encode(R)[None]
    return bool(_raw_mask(system.kind, t, U, [t.encode(v) for v in system.V],
                          [t.encode(w) for w in system.W], _bound_as_indices(t, system.bound))[0])


def brute_force_solutions(system, carrier: Optional[Sequence[Fraction]] = None,
                          limit: int = DEFAULT_LIMIT) -> list:
    """Every solution with entries in the carrier (default: generated by the system's values)."""
    p = _Problem(system, carrier, limit)
    out = []
    for block, mask in p.masks():
        out.extend(p.decode(X) for X in block[mask])
    return out


def brute_force_greatest(system, carrier: Optional[Sequence[Fraction]] = None,
                         limit: int = DEFAULT_LIMIT) -> FuzzyRelation:
    """Join of all carrier-valued solutions, re-verified to be a solution itself.

    With the default carrier (the subalgebra generated by the system's values)
    this is the greatest solution.  An explicit carrier that is not closed
    gives the greatest solution among carrier-valued relations.
    """
    p = _Problem(system, carrier, limit)
    best = np.zeros((len(system.A), len(system.B)), dtype=np.int64)
    for block, mask in p.masks():
        if mask.any():
            best = np.maximum(best, block[mask].max(axis=0))
    if not _raw_mask(system.kind, p.tables, best[None], p.V, p.W, p.bound)[0]:
        raise InconsistencyError("join of enumerated solutions is not a solution")
    R = p.decode(best)
    from weaklin.solver import verify_solution
    if not verify_solution(system, R):
        raise InconsistencyError("oracle result rejected by verify_solution")
    return R
