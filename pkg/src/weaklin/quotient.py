"""Fuzzy relational systems and their quotients by fuzzy equivalences.

Classes of a fuzzy equivalence ``E`` are the groups of elements with
identical rows of ``E`` (equivalently ``E(a, b) = 1``).  Each class is
labelled by its lowest-index member, and every formula below is evaluated
on representatives and then re-checked on all other members.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Optional, Sequence

from weaklin.errors import (InconsistencyError, NotAnEquivalenceError, NotASolutionError,
                            NotUniformError, PreconditionError, ShapeMismatchError)
from weaklin.relation import (FuzzyEquivalence, FuzzyRelation, _same_lattice, cokernel,
                              compose, converse, crisp_description_indices, is_equivalence,
                              is_uniform, kernel)
from weaklin.lattice import ONE


class FuzzyRelationalSystem:
    """A carrier together with a family of fuzzy relations on it."""

    def __init__(self, relations: Sequence[FuzzyRelation], carrier=None, index=None):
        self.relations = tuple(relations)
        if not self.relations:
            raise ShapeMismatchError("a fuzzy relational system needs at least one relation")
        self.lattice = _same_lattice(*self.relations)
        self.carrier = self.relations[0].domain if carrier is None else tuple(carrier)
        for v in self.relations:
            if v.domain != self.carrier or v.codomain != self.carrier:
                raise ShapeMismatchError("every relation must live on the carrier")
        self.index = tuple(index) if index is not None else tuple(range(len(self.relations)))
        if len(self.index) != len(self.relations):
            raise ShapeMismatchError("index labels do not match the number of relations")

    def __len__(self) -> int:
        return len(self.carrier)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FuzzyRelationalSystem) and self.carrier == other.carrier
                and self.relations == other.relations)

    def __hash__(self) -> int:
        return hash((self.carrier, self.relations))

    def __repr__(self) -> str:
        return f"<FuzzyRelationalSystem |A|={len(self.carrier)} |I|={len(self.relations)}>"


def _equivalence(E) -> FuzzyEquivalence:
    if isinstance(E, FuzzyEquivalence):
        return E
    if not is_equivalence(E):
        raise NotAnEquivalenceError("expected a fuzzy equivalence")
    return FuzzyEquivalence.of(E)


class FactorSet:
    """The classes ``A/E`` of a fuzzy equivalence."""

    def __init__(self, E):
        E = _equivalence(E)
        self.equivalence = E
        self.source = E.domain
        first = {}
        class_of = []
        for i, row in enumerate(E.rows):
            class_of.append(first.setdefault(row, len(first)))
        self.class_of = tuple(class_of)
        members = [[] for _ in first]
        for i, k in enumerate(class_of):
            members[k].append(i)
        self.classes = tuple(tuple(m) for m in members)
        self.representatives = tuple(m[0] for m in self.classes)
        self.labels = tuple(self.source[r] for r in self.representatives)
        self._pos = {a: i for i, a in enumerate(self.source)}
        # identical rows and unit entries must pick out the same classes
        for i, row in enumerate(E.rows):
            for j, v in enumerate(row):
                if (v == ONE) != (class_of[i] == class_of[j]):
                    raise InconsistencyError("E(a,b)=1 disagrees with row equality")

    def __len__(self) -> int:
        return len(self.classes)

    def class_index(self, a: Hashable) -> int:
        return self.class_of[self._pos[a]]

    def class_label(self, a: Hashable) -> Hashable:
        """Label of the class of ``a`` (the label of its representative)."""
        return self.labels[self.class_index(a)]

    def members(self, label: Hashable) -> tuple:
        k = self.labels.index(label)
        return tuple(self.source[i] for i in self.classes[k])

    def __repr__(self) -> str:
        parts = ", ".join("{" + ", ".join(map(str, self.members(l))) + "}" for l in self.labels)
        return f"<FactorSet {parts}>"


def index_of(E) -> int:
    """Number of classes of ``E``."""
    return len(FactorSet(E))


def _on_classes(M: FuzzyRelation, rows: FactorSet, cols: FactorSet, what: str) -> tuple:
    """Read ``M`` on class representatives after checking it is constant on
    every product of classes."""
    out = []
    for ci in rows.classes:
        line = []
        for cj in cols.classes:
            v = M.rows[ci[0]][cj[0]]
            if any(M.rows[i][j] != v for i in ci for j in cj):
                raise InconsistencyError(f"{what} is not well defined on classes")
            line.append(v)
        out.append(tuple(line))
    return tuple(out)


def _on_columns(M: FuzzyRelation, cols: FactorSet, what: str) -> tuple:
    out = []
    for row in M.rows:
        line = []
        for cj in cols.classes:
            v = row[cj[0]]
            if any(row[j] != v for j in cj):
                raise InconsistencyError(f"{what} is not well defined on classes")
            line.append(v)
        out.append(tuple(line))
    return tuple(out)


def quotient_system(system: FuzzyRelationalSystem, E) -> FuzzyRelationalSystem:
    """``V_i^{A/E}(E_a1, E_a2) = (E o V_i o E)(a1, a2)``."""
    E = _equivalence(E)
    if E.domain != system.carrier:
        raise ShapeMismatchError("E must be an equivalence on the carrier of the system")
    fs = FactorSet(E)
    rels = []
    for v in system.relations:
        rows = _on_classes(compose(compose(E, v), E), fs, fs, "E o V o E")
        rels.append(FuzzyRelation(rows, system.lattice, fs.labels, fs.labels, _trusted=True))
    return FuzzyRelationalSystem(rels, fs.labels, system.index)


def natural_map(E) -> FuzzyRelation:
    """``E#(a, E_b) = E(a, b)``, a relation between ``A`` and ``A/E``."""
    E = _equivalence(E)
    fs = FactorSet(E)
    rows = _on_columns(E, fs, "natural map")
    return FuzzyRelation(rows, E.lattice, E.domain, fs.labels, _trusted=True)


def _nested(F, E) -> tuple:
    F, E = _equivalence(F), _equivalence(E)
    _same_lattice(F, E)
    if F.domain != E.domain:
        raise ShapeMismatchError("E and F must live on the same set")
    if not E <= F:
        raise PreconditionError("E <= F is required")
    return F, E


def relative_quotient(F, E) -> FuzzyEquivalence:
    """``(F/E)(E_a1, E_a2) = F(a1, a2)`` for ``E <= F``."""
    F, E = _nested(F, E)
    fs = FactorSet(E)
    rows = _on_classes(F, fs, fs, "F/E")
    return FuzzyEquivalence(rows, F.lattice, fs.labels, fs.labels, _trusted=True)


def lift(F, E) -> FuzzyRelation:
    """``F_E(a1, E_a2) = F(a1, a2)``, a uniform relation between ``A`` and ``A/E``."""
    F, E = _nested(F, E)
    fs = FactorSet(E)
    rows = _on_columns(F, fs, "F_E")
    return FuzzyRelation(rows, F.lattice, F.domain, fs.labels, _trusted=True)


def class_map(E, F) -> dict:
    """For ``E <= F``: the map ``F_a -> (F/E)-class of E_a`` from ``A/F`` to ``(A/E)/(F/E)``."""
    F, E = _nested(F, E)
    fe, ff = FactorSet(E), FactorSet(F)
    fq = FactorSet(relative_quotient(F, E))
    out = {}
    for a in F.domain:
        src, dst = ff.class_label(a), fq.class_label(fe.class_label(a))
        if out.setdefault(src, dst) != dst:
            raise InconsistencyError("class map is not well defined")
    return out


def induced_bijection(R: FuzzyRelation) -> dict:
    """The bijection ``E_a -> F_psi(a)`` between the classes of the kernel and
    the cokernel of a uniform relation, keyed by class labels.

    Every ``b`` with ``R(a, b) = 1`` is tried for every ``a``, so the result
    is checked not to depend on the crisp description chosen.
    """
    if not is_uniform(R):
        raise NotUniformError("induced bijection needs a uniform fuzzy relation")
    fa, fb = FactorSet(kernel(R)), FactorSet(cokernel(R))
    psi = crisp_description_indices(R)
    out = {}
    for i, a in enumerate(R.domain):
        target = fb.class_label(R.codomain[psi[i]])
        for j, v in enumerate(R.rows[i]):
            if v == ONE and fb.class_label(R.codomain[j]) != target:
                raise InconsistencyError("induced map depends on the crisp description")
        if out.setdefault(fa.class_label(a), target) != target:
            raise InconsistencyError("induced map depends on the class representative")
    if sorted(map(repr, out.values())) != sorted(map(repr, fb.labels)) or len(out) != len(fb):
        raise InconsistencyError("induced map is not a bijection")
    return out


def is_isomorphism(mapping: dict, sys_a: FuzzyRelationalSystem,
                   sys_b: FuzzyRelationalSystem) -> bool:
    """Whether ``mapping`` (label -> label) is a bijection of carriers that
    carries every ``V_i`` onto ``W_i``."""
    if len(sys_a.carrier) != len(sys_b.carrier) or len(sys_a.relations) != len(sys_b.relations):
        return False
    if set(mapping) != set(sys_a.carrier):
        return False
    image = [mapping[a] for a in sys_a.carrier]
    if len(set(image)) != len(image) or set(image) != set(sys_b.carrier):
        return False
    pos_b = {b: j for j, b in enumerate(sys_b.carrier)}
    idx = [pos_b[b] for b in image]
    for v, w in zip(sys_a.relations, sys_b.relations):
        if v.lattice != w.lattice:
            return False
        for i, row in enumerate(v.rows):
            wrow = w.rows[idx[i]]
            if any(x != wrow[idx[j]] for j, x in enumerate(row)):
                return False
    return True


@dataclass(frozen=True)
class Decomposition:
    E: FuzzyEquivalence
    F: FuzzyEquivalence
    iso: dict


def decompose_uniform_solution(R: FuzzyRelation, system) -> Decomposition:
    """Split a uniform solution of a heterogeneous variant 3 or 5 system into
    its kernel, cokernel and the isomorphism of the two quotient systems.

    All three parts are re-verified against the homogeneous systems bounded
    by ``Z o Z^-1`` and ``Z^-1 o Z`` before returning.
    """
    from weaklin.solver import WeaklyLinearSystem, verify_solution

    if system.kind.homogeneous or system.kind.variant not in (3, 5):
        raise PreconditionError("decomposition applies to heterogeneous variants 3 and 5")
    if not system.V:
        raise PreconditionError("decomposition needs a non-empty index set")
    if not is_uniform(R):
        raise NotUniformError("decomposition needs a uniform fuzzy relation")
    if not verify_solution(system, R):
        raise NotASolutionError(f"relation does not solve the {system.kind} system")
    E, F = kernel(R), cokernel(R)
    iso = induced_bijection(R)
    Z = system.bound
    left = WeaklyLinearSystem.homogeneous(4, system.V, compose(Z, converse(Z)))
    right = WeaklyLinearSystem.homogeneous(4 if system.kind.variant == 3 else 5, system.W,
                                           compose(converse(Z), Z))
    if not verify_solution(left, E):
        raise InconsistencyError("kernel fails the homogeneous system on A")
    if not verify_solution(right, F):
        raise InconsistencyError("cokernel fails the homogeneous system on B")
    qa = quotient_system(FuzzyRelationalSystem(system.V), E)
    qb = quotient_system(FuzzyRelationalSystem(system.W), F)
    if not is_isomorphism(iso, qa, qb):
        raise InconsistencyError("induced bijection is not an isomorphism of quotients")
    return Decomposition(E, F, iso)


def reconstruct(E, F, iso: dict) -> FuzzyRelation:
    """Uniform relation ``R(a, b) = F(b_a, b)`` where ``b_a`` represents the
    class ``iso(E_a)``; the inverse of :func:`decompose_uniform_solution`.

    Raises :class:`PreconditionError` unless ``E`` and ``F`` correspond
    through ``iso``, i.e. unless ``R`` has kernel ``E`` and cokernel ``F``.
    """
    E, F = _equivalence(E), _equivalence(F)
    _same_lattice(E, F)
    fa, fb = FactorSet(E), FactorSet(F)
    if set(iso) != set(fa.labels) or sorted(map(repr, iso.values())) != sorted(map(repr, fb.labels)):
        raise PreconditionError("iso must be a bijection between the two factor sets")
    pos_b = {b: j for j, b in enumerate(F.domain)}
    rows = tuple(F.rows[pos_b[iso[fa.class_label(a)]]] for a in E.domain)
    R = FuzzyRelation(rows, E.lattice, E.domain, F.domain, _trusted=True)
    if kernel(R) != E or cokernel(R) != F:
        raise PreconditionError("E and F are not related through iso; no uniform relation has "
                                "this kernel, cokernel and induced map")
    return R
