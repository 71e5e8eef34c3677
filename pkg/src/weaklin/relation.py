"""Fuzzy relations between finite labelled sets.

A :class:`FuzzyRelation` is an immutable ``|A| x |B|`` matrix of exact
truth values bound to one residuated lattice.  Composition is the
sup-(x) matrix product; residuals are the matching inf-(->) products.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Sequence

import numpy as np

from weaklin import algebra
from weaklin.errors import (LatticeMismatchError, NotAnEquivalenceError,
                            NotAnLFunctionError, ShapeMismatchError)
from weaklin.lattice import ONE, ZERO, ResiduatedLattice, truth


def _labels(spec, n: int, what: str) -> tuple:
    if spec is None:
        return tuple(range(n))
    if isinstance(spec, int):
        if spec != n:
            raise ShapeMismatchError(f"{what} size {spec} does not match {n}")
        return tuple(range(n))
    labels = tuple(spec)
    if len(labels) != n:
        raise ShapeMismatchError(f"{len(labels)} {what} labels for {n} entries")
    if len(set(labels)) != n:
        raise ShapeMismatchError(f"duplicate {what} labels: {labels}")
    return labels


class FuzzyRelation:
    """Fuzzy relation between ``domain`` and ``codomain`` over ``lattice``.

    ``entries`` is a rectangular nested sequence; each entry may be a
    ``Fraction``, an ``int`` or an exact scalar string (``"0.3"``,
    ``"3/10"``).  Labels default to ``0..n-1``.  Both index sets must be
    non-empty.
    """

    __slots__ = ("lattice", "domain", "codomain", "rows", "_hash")

    def __init__(self, entries, lattice: ResiduatedLattice, domain=None, codomain=None,
                 *, _trusted: bool = False):
        if _trusted:
            rows = entries
        else:
            rows = tuple(tuple(truth(v) for v in row) for row in entries)
            if not rows or not rows[0]:
                raise ShapeMismatchError("fuzzy relations need non-empty domain and codomain")
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ShapeMismatchError("matrix rows have different lengths")
            for row in rows:
                lattice.check(*row)
        self.lattice = lattice
        self.rows = rows
        self.domain = _labels(domain, len(rows), "domain")
        self.codomain = _labels(codomain, len(rows[0]), "codomain")
        self._hash = None

    # -- construction helpers -------------------------------------------------

    @classmethod
    def constant(cls, value, lattice, domain, codomain=None):
        value = truth(value)
        lattice.check(value)
        codomain = domain if codomain is None else codomain
        n = domain if isinstance(domain, int) else len(domain)
        m = codomain if isinstance(codomain, int) else len(codomain)
        if n < 1 or m < 1:
            raise ShapeMismatchError("fuzzy relations need non-empty domain and codomain")
        rows = tuple((value,) * m for _ in range(n))
        return cls(rows, lattice, domain, codomain, _trusted=True)

    @classmethod
    def universal(cls, lattice, domain, codomain=None):
        return cls.constant(ONE, lattice, domain, codomain)

    @classmethod
    def empty(cls, lattice, domain, codomain=None):
        return cls.constant(ZERO, lattice, domain, codomain)

    @classmethod
    def identity(cls, lattice, labels):
        n = labels if isinstance(labels, int) else len(labels)
        rows = tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
        return cls(rows, lattice, labels, labels, _trusted=True)

    def _derive(self, rows, domain=None, codomain=None):
        return FuzzyRelation(rows, self.lattice,
                             self.domain if domain is None else domain,
                             self.codomain if codomain is None else codomain,
                             _trusted=True)

    # -- inspection -------------------------------------------------------------

    @property
    def shape(self) -> tuple:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, key):
        i, j = key
        return self.rows[i][j]

    def entry(self, a: Hashable, b: Hashable) -> Fraction:
        """Entry addressed by labels rather than positions."""
        return self.rows[self.domain.index(a)][self.codomain.index(b)]

    def image(self) -> frozenset:
        return frozenset(v for row in self.rows for v in row)

    def is_crisp(self) -> bool:
        return all(v == ZERO or v == ONE for row in self.rows for v in row)

    def to_array(self) -> np.ndarray:
        arr = np.empty(self.shape, dtype=object)
        for i, row in enumerate(self.rows):
            arr[i, :] = row
        return arr

    def tolist(self) -> list:
        return [list(r) for r in self.rows]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in row) for row in self.rows)
        return f"FuzzyRelation([{body}], {self.lattice.name})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FuzzyRelation):
            return NotImplemented
        return (self.rows == other.rows and self.lattice == other.lattice
                and self.domain == other.domain and self.codomain == other.codomain)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.lattice, self.domain, self.codomain))
        return self._hash

    # Comparisons call _leq directly: a reflected call through the operator
    # would bounce between a relation and a FuzzyEquivalence forever.
    def __le__(self, other: "FuzzyRelation") -> bool:
        return _leq(self, other)

    def __ge__(self, other: "FuzzyRelation") -> bool:
        return _leq(other, self)

    def __lt__(self, other):
        return _leq(self, other) and self != other

    def __gt__(self, other):
        return _leq(other, self) and self != other

    # -- operator sugar ---------------------------------------------------------

    @property
    def T(self) -> "FuzzyRelation":
        return converse(self)

    def __matmul__(self, other):
        return compose(self, other)

    def __and__(self, other):
        return meet(self, other)

    def __or__(self, other):
        return join(self, other)


class FuzzyEquivalence(FuzzyRelation):
    """A reflexive, symmetric and transitive fuzzy relation; checked on construction."""

    __slots__ = ()

    def __init__(self, entries, lattice, domain=None, codomain=None, *, _trusted=False):
        super().__init__(entries, lattice, domain, codomain, _trusted=_trusted)
        if self.domain != self.codomain:
            raise NotAnEquivalenceError("an equivalence needs identical domain and codomain labels")
        if not (is_reflexive(self) and is_symmetric(self) and is_transitive(self)):
            raise NotAnEquivalenceError(f"not a fuzzy equivalence: {self!r}")

    @classmethod
    def of(cls, R: FuzzyRelation) -> "FuzzyEquivalence":
        if isinstance(R, FuzzyEquivalence):
            return R
        return cls(R.rows, R.lattice, R.domain, R.codomain, _trusted=True)


# ---------------------------------------------------------------------------
# structural checks

def _same_lattice(*rels: FuzzyRelation) -> ResiduatedLattice:
    lat = rels[0].lattice
    for r in rels[1:]:
        if r.lattice != lat:
            raise LatticeMismatchError(f"relations over {lat.name} and {r.lattice.name}")
    return lat


def _leq(R: FuzzyRelation, S: FuzzyRelation) -> bool:
    _same_shape(R, S)
    return all(x <= y for r, s in zip(R.rows, S.rows) for x, y in zip(r, s))


def _same_shape(R: FuzzyRelation, S: FuzzyRelation) -> None:
    _same_lattice(R, S)
    if R.domain != S.domain or R.codomain != S.codomain:
        raise ShapeMismatchError(
            f"relations differ in shape/labels: {R.shape} vs {S.shape}")


def _square(R: FuzzyRelation) -> None:
    if R.domain != R.codomain:
        raise ShapeMismatchError(f"relation is not on a single set: {R.shape}")


def algebra_for(*rels: FuzzyRelation, exact: bool = False):
    """Backend able to evaluate every operation among ``rels`` exactly."""
    lat = _same_lattice(*rels)
    values = set()
    for r in rels:
        values |= r.image()
    return algebra.make_algebra(lat, values, exact=exact)


# ---------------------------------------------------------------------------
# algebra of relations

def compose(R: FuzzyRelation, S: FuzzyRelation) -> FuzzyRelation:
    """``(R o S)(a, c) = sup_b R(a, b) (x) S(b, c)``."""
    _same_lattice(R, S)
    if R.codomain != S.domain:
        raise ShapeMismatchError(
            f"cannot compose {R.shape} with {S.shape}: codomain/domain labels differ")
    alg = algebra_for(R, S)
    out = alg.compose(alg.encode(R.rows), alg.encode(S.rows))
    return FuzzyRelation(alg.decode(out), R.lattice, R.domain, S.codomain, _trusted=True)


def converse(R: FuzzyRelation) -> FuzzyRelation:
    rows = tuple(zip(*R.rows))
    return FuzzyRelation(rows, R.lattice, R.codomain, R.domain, _trusted=True)


def right_residual(Z: FuzzyRelation, V: FuzzyRelation) -> FuzzyRelation:
    """``Z / V``: the greatest ``U`` with ``V o U <= Z``; ``V`` lives on ``Z.domain``."""
    _same_lattice(Z, V)
    if V.domain != Z.domain or V.codomain != Z.domain:
        raise ShapeMismatchError("right residual needs V square on the domain of Z")
    alg = algebra_for(Z, V)
    out = alg.right_residual(alg.encode(Z.rows), alg.encode(V.rows))
    return Z._derive(alg.decode(out))


def left_residual(Z: FuzzyRelation, W: FuzzyRelation) -> FuzzyRelation:
    """``Z \\ W``: the greatest ``U`` with ``U o W <= Z``; ``W`` lives on ``Z.codomain``."""
    _same_lattice(Z, W)
    if W.domain != Z.codomain or W.codomain != Z.codomain:
        raise ShapeMismatchError("left residual needs W square on the codomain of Z")
    alg = algebra_for(Z, W)
    out = alg.left_residual(alg.encode(Z.rows), alg.encode(W.rows))
    return Z._derive(alg.decode(out))


def meet(R: FuzzyRelation, S: FuzzyRelation) -> FuzzyRelation:
    _same_shape(R, S)
    return R._derive(tuple(tuple(min(x, y) for x, y in zip(r, s)) for r, s in zip(R.rows, S.rows)))


def join(R: FuzzyRelation, S: FuzzyRelation) -> FuzzyRelation:
    _same_shape(R, S)
    return R._derive(tuple(tuple(max(x, y) for x, y in zip(r, s)) for r, s in zip(R.rows, S.rows)))


def meet_all(rels: Sequence[FuzzyRelation]) -> FuzzyRelation:
    out = rels[0]
    for r in rels[1:]:
        out = meet(out, r)
    return out


def join_all(rels: Sequence[FuzzyRelation]) -> FuzzyRelation:
    out = rels[0]
    for r in rels[1:]:
        out = join(out, r)
    return out


def crisp_part(R: FuzzyRelation) -> FuzzyRelation:
    """Entry 1 where ``R`` equals 1, else 0."""
    return R._derive(tuple(tuple(ONE if v == ONE else ZERO for v in row) for row in R.rows))


# ---------------------------------------------------------------------------
# predicates

def is_reflexive(R: FuzzyRelation) -> bool:
    _square(R)
    return all(R.rows[i][i] == ONE for i in range(len(R.rows)))


def is_symmetric(R: FuzzyRelation) -> bool:
    _square(R)
    return R.rows == tuple(zip(*R.rows))


def is_transitive(R: FuzzyRelation) -> bool:
    _square(R)
    return compose(R, R) <= R


def is_equivalence(R: FuzzyRelation) -> bool:
    return (R.domain == R.codomain and is_reflexive(R) and is_symmetric(R)
            and is_transitive(R))


def _induced(R: FuzzyRelation) -> tuple:
    bires = R.lattice._bires
    rows = R.rows
    return tuple(
        tuple(min((bires(x, y) for x, y in zip(r1, r2)), default=ONE) for r2 in rows)
        for r1 in rows)


def kernel(R: FuzzyRelation) -> FuzzyEquivalence:
    """``E(a1, a2) = inf_b R(a1, b) <-> R(a2, b)``: the greatest equivalence on the
    domain with respect to which ``R`` is extensional."""
    return FuzzyEquivalence(_induced(R), R.lattice, R.domain, R.domain, _trusted=True)


def cokernel(R: FuzzyRelation) -> FuzzyEquivalence:
    return kernel(converse(R))


def is_extensional(R: FuzzyRelation, E: FuzzyRelation, F: FuzzyRelation) -> bool:
    """Whether ``E o R <= R`` and ``R o F <= R``."""
    if E.domain != R.domain or E.codomain != R.domain:
        raise ShapeMismatchError("E must live on the domain of R")
    if F.domain != R.codomain or F.codomain != R.codomain:
        raise ShapeMismatchError("F must live on the codomain of R")
    return compose(E, R) <= R and compose(R, F) <= R


def is_partial_fuzzy_function(R: FuzzyRelation) -> bool:
    return compose(compose(R, converse(R)), R) <= R


def is_L_function(R: FuzzyRelation) -> bool:
    return all(ONE in row for row in R.rows)


def is_surjective(R: FuzzyRelation) -> bool:
    return is_L_function(converse(R))


def is_uniform(R: FuzzyRelation) -> bool:
    return (is_L_function(R) and is_surjective(R)
            and compose(compose(R, converse(R)), R) == R)


def crisp_description_indices(R: FuzzyRelation) -> tuple:
    psi = []
    for i, row in enumerate(R.rows):
        try:
            psi.append(row.index(ONE))
        except ValueError:
            raise NotAnLFunctionError(f"row {R.domain[i]!r} has no entry equal to 1") from None
    return tuple(psi)


def crisp_description(R: FuzzyRelation) -> dict:
    """A function ``psi`` with ``R(a, psi(a)) = 1`` for every ``a``.

    Picks the first codomain label carrying a 1 in each row.
    """
    psi = crisp_description_indices(R)
    return {a: R.codomain[j] for a, j in zip(R.domain, psi)}


def as_relation(entries, lattice, domain=None, codomain=None) -> FuzzyRelation:
    """Shorthand constructor accepting any nested iterable of scalars."""
    if isinstance(entries, FuzzyRelation):
        return entries
    return FuzzyRelation([list(r) for r in entries], lattice, domain, codomain)


def relations_from(matrices: Iterable, lattice, labels) -> tuple:
    return tuple(as_relation(m, lattice, labels, labels) for m in matrices)
