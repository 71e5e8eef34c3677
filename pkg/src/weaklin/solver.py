"""Weakly linear systems and their greatest solutions.

A heterogeneous system relates an unknown ``U`` between ``A`` and ``B`` to
families ``V_i`` on ``A`` and ``W_i`` on ``B`` and a bound ``Z``; a
homogeneous one has a single set and ``W_i = V_i``.  Every variant is a
conjunction of some of four inequality shapes::

    part 1:  U^-1 o V_i <= W_i o U^-1      U <= [(W_i o U^-1) \\ V_i]^-1
    part 2:  V_i o U    <= U o W_i         U <= (U o W_i) / V_i
    part 3:  U o W_i    <= V_i o U         U <= (V_i o U) \\ W_i
    part 4:  W_i o U^-1 <= U^-1 o V_i      U <= [(U^-1 o V_i) / W_i]^-1

and the right-hand column, met over ``i``, is the isotone operator whose
greatest post-fixed point below the bound is the greatest solution.  It is
found by iterating ``R_1 = Z``, ``R_{k+1} = R_k /\\ phi(R_k)`` until two
consecutive terms agree exactly.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from weaklin import algebra
from weaklin.errors import (InconsistencyError, NotCrispError,
                            ShapeMismatchError)
from weaklin.lattice import generated_subalgebra
from weaklin.relation import FuzzyRelation, _same_lattice, algebra_for, converse, meet

HETEROGENEOUS_PARTS = {1: (1,), 2: (2,), 3: (1, 3), 4: (2, 4), 5: (2, 3), 6: (1, 4)}

# homogeneous variant -> (parts of the rewritten heterogeneous system with
# W_i = V_i, whether the bound is W /\ W^-1, whether to solve the dual
# system on converses and transpose back)
HOMOGENEOUS_PLAN = {
    1: ((2,), False, True),
    2: ((2,), False, False),
    3: ((2, 3), False, False),
    4: ((1, 3), True, False),
    5: ((2, 4), True, False),
    6: ((1, 2, 3, 4), True, False),
}


@dataclass(frozen=True)
class SystemKind:
    homogeneous: bool
    variant: int

    def __post_init__(self):
        if self.variant not in range(1, 7):
            raise ValueError(f"variant must be 1..6, got {self.variant}")

    @classmethod
    def parse(cls, text: str) -> "SystemKind":
        m = re.fullmatch(r"\s*wl([12])-([1-6])\s*", text.lower())
        if not m:
            raise ValueError(f"unknown system kind {text!r}; expected wl1-1 .. wl2-6")
        return cls(m.group(1) == "1", int(m.group(2)))

    def __str__(self) -> str:
        return f"wl{1 if self.homogeneous else 2}-{self.variant}"


class Status(str, enum.Enum):
    STABILIZED = "stabilized"
    CAP_REACHED = "cap_reached"


@dataclass(frozen=True)
class SolveReport:
    solution: FuzzyRelation
    iterations: int
    status: Status
    verified: bool

    @property
    def stabilized(self) -> bool:
        return self.status is Status.STABILIZED


@dataclass(frozen=True)
class Termination:
    """Outcome of :func:`predict_termination`."""
    guaranteed: bool
    subalgebra_size: Optional[int] = None

    def __str__(self) -> str:
        return f"GuaranteedFinite({self.subalgebra_size})" if self.guaranteed else "Unknown"


class WeaklyLinearSystem:
    """A weakly linear system of fuzzy relation inequalities.

    Build one with :meth:`heterogeneous` or :meth:`homogeneous`.  ``bound``
    is ``Z`` for heterogeneous systems and ``W`` for homogeneous ones; it
    defaults to the universal relation.
    """

    def __init__(self, kind: SystemKind, V: Sequence[FuzzyRelation],
                 W: Optional[Sequence[FuzzyRelation]] = None,
                 bound: Optional[FuzzyRelation] = None, index: Optional[Sequence] = None):
        self.kind = kind
        self.V = tuple(V)
        self.W = self.V if kind.homogeneous else tuple(W or ())
        if len(self.V) != len(self.W):
            raise ShapeMismatchError(f"{len(self.V)} relations on A but {len(self.W)} on B")
        if bound is None:
            if not self.V:
                raise ShapeMismatchError("a system with an empty index set needs an explicit bound")
            bound = FuzzyRelation.universal(self.V[0].lattice, self.V[0].domain,
                                            self.W[0].domain)
        self.bound = bound
        self.A = bound.domain
        self.B = bound.codomain
        self.lattice = _same_lattice(bound, *self.V, *self.W)
        for v in self.V:
            if v.domain != self.A or v.codomain != self.A:
                raise ShapeMismatchError("every V_i must be a relation on the domain of the bound")
        for w in self.W:
            if w.domain != self.B or w.codomain != self.B:
                raise ShapeMismatchError("every W_i must be a relation on the codomain of the bound")
        if kind.homogeneous and self.A != self.B:
            raise ShapeMismatchError("a homogeneous bound must be a relation on a single set")
        self.index = tuple(index) if index is not None else tuple(range(len(self.V)))
        if len(self.index) != len(self.V):
            raise ShapeMismatchError("index labels do not match the number of relations")

    @classmethod
    def heterogeneous(cls, variant: int, V, W, Z=None, index=None) -> "WeaklyLinearSystem":
        return cls(SystemKind(False, variant), V, W, Z, index)

    @classmethod
    def homogeneous(cls, variant: int, V, W=None, index=None) -> "WeaklyLinearSystem":
        return cls(SystemKind(True, variant), V, None, W, index)

    def with_variant(self, variant: int) -> "WeaklyLinearSystem":
        return WeaklyLinearSystem(SystemKind(self.kind.homogeneous, variant), self.V,
                                  None if self.kind.homogeneous else self.W,
                                  self.bound, self.index)

    def values(self) -> set:
        out = set(self.bound.image())
        for r in self.V + self.W:
            out |= r.image()
        return out

    def __repr__(self) -> str:
        return (f"<WeaklyLinearSystem {self.kind} |A|={len(self.A)} |B|={len(self.B)} "
                f"|I|={len(self.V)} over {self.lattice.name}>")


# ---------------------------------------------------------------------------
# encoded evaluation

class _Encoded:
    """A system coded for one algebra backend, oriented for iteration.

    For the homogeneous variant 1 the dual system (converse relations) is
    stored and ``flip`` records that results must be transposed back.
    """

    def __init__(self, system: WeaklyLinearSystem, extra=(), exact: bool = False):
        self.system = system
        self.alg = alg = algebra_for(system.bound, *system.V, *system.W, *extra, exact=exact)
        V = [alg.encode(v.rows) for v in system.V]
        W = [alg.encode(w.rows) for w in system.W]
        Z = alg.encode(system.bound.rows)
        if system.kind.homogeneous:
            parts, symmetric_bound, flip = HOMOGENEOUS_PLAN[system.kind.variant]
            if flip:
                V = W = [v.T for v in V]
                Z = Z.T
            if symmetric_bound:
                Z = np.minimum(Z, Z.T)
        else:
            parts, flip = HETEROGENEOUS_PARTS[system.kind.variant], False
        self.V, self.W, self.Z = V, W, Z
        self.parts, self.flip = parts, flip

    def encode(self, R: FuzzyRelation) -> np.ndarray:
        X = self.alg.encode(R.rows)
        return X.T if self.flip else X

    def decode(self, X: np.ndarray) -> FuzzyRelation:
        if self.flip:
            X = X.T
        s = self.system
        return FuzzyRelation(self.alg.decode(X), s.lattice, s.A, s.B, _trusted=True)


def _part(alg, V, W, R, p):
    """Greatest U satisfying inequality shape ``p`` with R substituted on the right."""
    out = alg.full(R.shape)
    for v, w in zip(V, W):
        if p == 1:
            g = alg.left_residual(alg.compose(w, R.T), v).T
        elif p == 2:
            g = alg.right_residual(alg.compose(R, w), v)
        elif p == 3:
            g = alg.left_residual(alg.compose(v, R), w)
        else:
            g = alg.right_residual(alg.compose(R.T, v), w).T
        out = np.minimum(out, g)
    return out


def _phi(alg, V, W, R, parts):
    out = alg.full(R.shape)
    for p in parts:
        out = np.minimum(out, _part(alg, V, W, R, p))
    return out


def _crisp_part(alg, V, W, rho, p):
    """Crisp part of ``_part`` computed from the pointwise characterization."""
    ok = np.ones(rho.shape, dtype=bool)
    for v, w in zip(V, W):
        if p == 1:    # V(a,a') <= (W o rho^-1)(b,a') for all a'
            C = alg.compose(w, rho.T)
            ok &= (v[:, None, :] <= C[None, :, :]).all(axis=2)
        elif p == 2:  # V(a',a) <= (rho o W)(a',b) for all a'
            D = alg.compose(rho, w)
            ok &= (v[:, :, None] <= D[:, None, :]).all(axis=0)
        elif p == 3:  # W(b,b') <= (V o rho)(a,b') for all b'
            G = alg.compose(v, rho)
            ok &= (w[None, :, :] <= G[:, None, :]).all(axis=2)
        else:         # W(b',b) <= (rho^-1 o V)(b',a) for all b'
            H = alg.compose(rho.T, v)
            ok &= (w[:, None, :] <= H[:, :, None]).all(axis=0)
    return ok


def _phi_crisp(alg, V, W, rho, parts):
    ok = np.ones(rho.shape, dtype=bool)
    for p in parts:
        ok &= _crisp_part(alg, V, W, rho, p)
    return np.where(ok, alg.top, alg.bottom).astype(rho.dtype)


def _holds(alg, V, W, U, p) -> bool:
    """Direct check of inequality shape ``p`` for every i."""
    for v, w in zip(V, W):
        if p == 1:
            lhs, rhs = alg.compose(U.T, v), alg.compose(w, U.T)
        elif p == 2:
            lhs, rhs = alg.compose(v, U), alg.compose(U, w)
        elif p == 3:
            lhs, rhs = alg.compose(U, w), alg.compose(v, U)
        else:
            lhs, rhs = alg.compose(w, U.T), alg.compose(U.T, v)
        if not algebra.leq(lhs, rhs):
            return False
    return True


def _satisfies_raw(system: WeaklyLinearSystem, alg, U) -> bool:
    """Check ``U`` against the system exactly as written, without any rewriting."""
    V = [alg.encode(v.rows) for v in system.V]
    W = [alg.encode(w.rows) for w in system.W]
    bound = alg.encode(system.bound.rows)
    t = system.kind.variant
    if not system.kind.homogeneous:
        return algebra.leq(U, bound) and all(
            _holds(alg, V, W, U, p) for p in HETEROGENEOUS_PARTS[t])

    def commutes(X, mode):
        # mode: "<=" X o V <= V o X ; ">=" V o X <= X o V ; "==" both
        for v in V:
            left, right = alg.compose(X, v), alg.compose(v, X)
            if mode == "<=" and not algebra.leq(left, right):
                return False
            if mode == ">=" and not algebra.leq(right, left):
                return False
            if mode == "==" and not algebra.equal(left, right):
                return False
        return True

    mode = {1: "<=", 2: ">=", 3: "=="}[(t - 1) % 3 + 1]
    if not (algebra.leq(U, bound) and commutes(U, mode)):
        return False
    if t >= 4:
        return algebra.leq(U.T, bound) and commutes(U.T, mode)
    return True


def _check_shape(system: WeaklyLinearSystem, R: FuzzyRelation) -> None:
    _same_lattice(system.bound, R)
    if R.domain != system.A or R.codomain != system.B:
        raise ShapeMismatchError(
            f"relation of shape {R.shape} does not match the system's {len(system.A)}x{len(system.B)}")


# ---------------------------------------------------------------------------
# public operations

def phi(system: WeaklyLinearSystem, t: Optional[int], R: FuzzyRelation) -> FuzzyRelation:
    """Evaluate the operator of variant ``t`` (default: the system's own) at ``R``.

    For heterogeneous systems this is the operator of ``wl2-t``; for
    homogeneous ones the operator of the rewritten ``wl1-t`` system, so that
    in both cases ``U`` is a solution iff ``U <= phi(U)`` and ``U`` lies
    below the bound.
    """
    _check_shape(system, R)
    if t is not None and t != system.kind.variant:
        system = system.with_variant(t)
    enc = _Encoded(system, extra=(R,))
    X = enc.encode(R)
    return enc.decode(_phi(enc.alg, enc.V, enc.W, X, enc.parts))


def phi_crisp(system: WeaklyLinearSystem, t: Optional[int], rho: FuzzyRelation) -> FuzzyRelation:
    """Crisp part of :func:`phi` at a crisp relation, from the pointwise characterization."""
    _check_shape(system, rho)
    if not rho.is_crisp():
        raise NotCrispError("phi_crisp needs a crisp (0/1-valued) relation")
    if t is not None and t != system.kind.variant:
        system = system.with_variant(t)
    enc = _Encoded(system, extra=(rho,))
    X = enc.encode(rho)
    return enc.decode(_phi_crisp(enc.alg, enc.V, enc.W, X, enc.parts))


def sequence(system: WeaklyLinearSystem, max_iterations: int = 1000,
             exact: bool = False) -> Iterator[FuzzyRelation]:
    """Yield ``R_1 = Z, R_2, ...`` up to the first term equal to its successor,
    or ``max_iterations + 1`` terms if that never happens."""
    enc = _Encoded(system, exact=exact)
    X = enc.Z
    yield enc.decode(X)
    for _ in range(max_iterations):
        Y = np.minimum(X, _phi(enc.alg, enc.V, enc.W, X, enc.parts))
        if algebra.equal(X, Y):
            return
        X = Y
        yield enc.decode(X)


def solve_greatest(system: WeaklyLinearSystem, max_iterations: int = 1000,
                   exact: bool = False) -> SolveReport:
    """Greatest solution by post-fixed-point iteration below the bound.

    ``iterations`` is the least ``k`` with ``R_k = R_{k+1}``.  If the cap is
    hit first the report carries ``R_{cap+1}``, which lies above every
    solution, with status ``CAP_REACHED``.  ``exact=True`` forces the
    Fraction backend even where an integer coding exists.
    """
    if max_iterations < 1:
        raise ValueError("max_iterations must be at least 1")
    enc = _Encoded(system, exact=exact)
    alg = enc.alg
    X = enc.Z
    status = Status.CAP_REACHED
    iterations = max_iterations
    for k in range(1, max_iterations + 1):
        Y = np.minimum(X, _phi(alg, enc.V, enc.W, X, enc.parts))
        if algebra.equal(X, Y):
            status, iterations = Status.STABILIZED, k
            break
        X = Y
    solution = enc.decode(X)
    verified = verify_solution(system, solution)
    if status is Status.STABILIZED and not verified:
        raise InconsistencyError(f"stabilized iterate fails the {system.kind} system")
    return SolveReport(solution, iterations, status, verified)


def solve_greatest_crisp(system: WeaklyLinearSystem) -> SolveReport:
    """Greatest crisp solution: iterate ``rho_{k+1} = rho_k /\\ phi^c(rho_k)``
    from the crisp part of the bound.  Always terminates."""
    enc = _Encoded(system)
    alg = enc.alg
    X = algebra.crisp(enc.Z, alg.top, alg.bottom)
    k = 1
    while True:
        Y = np.minimum(X, _phi_crisp(alg, enc.V, enc.W, X, enc.parts))
        if algebra.equal(X, Y):
            break
        X = Y
        k += 1
    solution = enc.decode(X)
    verified = verify_solution(system, solution)
    if not verified:
        raise InconsistencyError(f"crisp iterate fails the {system.kind} system")
    return SolveReport(solution, k, Status.STABILIZED, verified)


def verify_solution(system: WeaklyLinearSystem, R: FuzzyRelation) -> bool:
    """Whether ``R`` satisfies every inequality/equation of the system and its bound.

    The raw inequalities decide the answer; the post-fixed-point form
    ``R <= phi(R)`` (below the bound) is evaluated as well and any
    disagreement raises :class:`InconsistencyError`.
    """
    _check_shape(system, R)
    enc = _Encoded(system, extra=(R,))
    alg = enc.alg
    U = alg.encode(R.rows)
    direct = _satisfies_raw(system, alg, U)
    X = enc.encode(R)
    fixed = algebra.leq(X, enc.Z) and algebra.leq(X, _phi(alg, enc.V, enc.W, X, enc.parts))
    if direct != fixed:
        raise InconsistencyError(
            f"direct check ({direct}) and operator form ({fixed}) disagree for {system.kind}")
    return direct


def predict_termination(system: WeaklyLinearSystem, cap: int = 4096) -> Termination:
    """Saturate the values of the system; a finite closure guarantees that
    :func:`solve_greatest` stabilizes."""
    closure = generated_subalgebra(system.lattice, system.values(), cap)
    if closure is None:
        return Termination(False)
    return Termination(True, len(closure))


def homogeneous_bound(system: WeaklyLinearSystem) -> FuzzyRelation:
    """Bound actually imposed on ``U`` (``W /\\ W^-1`` for variants 4-6)."""
    if system.kind.homogeneous and system.kind.variant >= 4:
        return meet(system.bound, converse(system.bound))
    return system.bound
