"""Fuzzy automata: bisimulation equivalences, state reduction and
simulations between two automata, all delegated to the solver."""
from __future__ import annotations

import dataclasses
from typing import Mapping, Optional, Sequence

from weaklin.errors import ShapeMismatchError
from weaklin.lattice import ONE, ResiduatedLattice, truth
from weaklin.quotient import (FactorSet, FuzzyRelationalSystem, _equivalence, _on_classes,
                              quotient_system)
from weaklin.relation import FuzzyEquivalence, FuzzyRelation, _same_lattice, compose
from weaklin.solver import SolveReport, Status, WeaklyLinearSystem, solve_greatest

MODES = ("forward", "backward")


class FuzzyAutomaton:
    """States, an alphabet, one transition relation per letter, and fuzzy
    sets of initial (``sigma``) and terminal (``tau``) states."""

    def __init__(self, transitions: Mapping, initial: Sequence, terminal: Sequence,
                 metadata: Optional[dict] = None):
        if not transitions:
            raise ShapeMismatchError("an automaton needs a non-empty alphabet")
        self.alphabet = tuple(transitions)
        self.transitions = {x: transitions[x] for x in self.alphabet}
        deltas = list(self.transitions.values())
        self.lattice = _same_lattice(*deltas)
        self.states = deltas[0].domain
        for d in deltas:
            if d.domain != self.states or d.codomain != self.states:
                raise ShapeMismatchError("every transition relation must live on the state set")
        self.initial = self._vector(initial, "initial")
        self.terminal = self._vector(terminal, "terminal")
        self.metadata = dict(metadata or {})

    def _vector(self, values, what) -> tuple:
        out = tuple(truth(v) for v in values)
        if len(out) != len(self.states):
            raise ShapeMismatchError(f"{what} vector has {len(out)} entries for {len(self.states)} states")
        self.lattice.check(*out)
        return out

    @property
    def relational_system(self) -> FuzzyRelationalSystem:
        return FuzzyRelationalSystem([self.transitions[x] for x in self.alphabet], self.states,
                                     self.alphabet)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FuzzyAutomaton) and self.alphabet == other.alphabet
                and self.transitions == other.transitions and self.initial == other.initial
                and self.terminal == other.terminal)

    def __repr__(self) -> str:
        return (f"<FuzzyAutomaton {len(self.states)} states, alphabet {list(self.alphabet)}, "
                f"{self.lattice.name}>")


def extensionality_bound(tau: Sequence, lattice: ResiduatedLattice, states=None) -> FuzzyEquivalence:
    """``W(a, b) = tau(a) <-> tau(b)``: the greatest fuzzy equivalence with
    respect to which ``tau`` is extensional."""
    tau = [truth(v) for v in tau]
    lattice.check(*tau)
    rows = tuple(tuple(lattice._bires(x, y) for y in tau) for x in tau)
    return FuzzyEquivalence(rows, lattice, states, states, _trusted=True)


def bisimulation_system(M: FuzzyAutomaton, mode: str = "forward") -> WeaklyLinearSystem:
    """Forward: ``E o delta_x <= delta_x o E`` below the bound from ``tau``.
    Backward: ``delta_x o E <= E o delta_x`` below the bound from ``sigma``."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    deltas = [M.transitions[x] for x in M.alphabet]
    if mode == "forward":
        W = extensionality_bound(M.terminal, M.lattice, M.states)
        return WeaklyLinearSystem.homogeneous(4, deltas, W, index=M.alphabet)
    W = extensionality_bound(M.initial, M.lattice, M.states)
    return WeaklyLinearSystem.homogeneous(5, deltas, W, index=M.alphabet)


def greatest_bisimulation_equivalence(M: FuzzyAutomaton, mode: str = "forward",
                                      max_iterations: int = 1000) -> SolveReport:
    """Greatest forward or backward bisimulation equivalence of ``M``.

    On stabilization the solution is returned as a :class:`FuzzyEquivalence`.
    """
    report = solve_greatest(bisimulation_system(M, mode), max_iterations)
    if report.status is Status.STABILIZED:
        report = dataclasses.replace(report, solution=FuzzyEquivalence.of(report.solution))
    return report


def reduce(M: FuzzyAutomaton, E) -> FuzzyAutomaton:
    """Factor automaton of ``M`` by the fuzzy equivalence ``E``.

    Transitions are ``E o delta_x o E`` on classes, the initial vector is
    ``sigma o E`` and the terminal vector ``E o tau``.
    """
    E = _equivalence(E)
    if E.domain != M.states:
        raise ShapeMismatchError("E must be an equivalence on the states")
    fs = FactorSet(E)
    q = quotient_system(M.relational_system, E)
    sigma = FuzzyRelation((M.initial,), M.lattice, ("*",), M.states, _trusted=True)
    tau = FuzzyRelation(tuple((v,) for v in M.terminal), M.lattice, M.states, ("*",), _trusted=True)
    single = FactorSet(FuzzyEquivalence(((ONE,),), M.lattice, ("*",), ("*",), _trusted=True))
    initial = _on_classes(compose(sigma, E), single, fs, "sigma o E")[0]
    terminal = tuple(r[0] for r in _on_classes(compose(E, tau), fs, single, "E o tau"))
    meta = dict(M.metadata)
    meta["construction"] = "factor automaton: E o delta o E, sigma o E, E o tau"
    meta["classes"] = {lab: fs.members(lab) for lab in fs.labels}
    return FuzzyAutomaton(dict(zip(M.alphabet, q.relations)), initial, terminal, meta)


def solve_between(M: FuzzyAutomaton, N: FuzzyAutomaton, variant: int,
                  Z: Optional[FuzzyRelation] = None, max_iterations: int = 1000) -> SolveReport:
    """Greatest simulation (variants 1, 2) or bisimulation (3 to 6) between
    two automata over the same alphabet, below ``Z`` (universal by default)."""
    if set(M.alphabet) != set(N.alphabet):
        raise ShapeMismatchError(f"alphabets differ: {M.alphabet} vs {N.alphabet}")
    _same_lattice(M.transitions[M.alphabet[0]], N.transitions[N.alphabet[0]])
    V = [M.transitions[x] for x in M.alphabet]
    W = [N.transitions[x] for x in M.alphabet]
    if Z is None:
        Z = FuzzyRelation.universal(M.lattice, M.states, N.states)
    system = WeaklyLinearSystem.heterogeneous(variant, V, W, Z, index=M.alphabet)
    return solve_greatest(system, max_iterations)
