import itertools
from pathlib import Path

import pytest

from weaklin import io
from weaklin.automata import (FuzzyAutomaton, bisimulation_system, extensionality_bound,
                              greatest_bisimulation_equivalence, reduce, solve_between)
from weaklin.errors import ShapeMismatchError
from weaklin.lattice import BOOLEAN, GODEL, LUKASIEWICZ, ONE, ZERO
from weaklin.oracle import enumerate_equivalences, is_solution
from weaklin.quotient import FactorSet, index_of, natural_map, quotient_system
from weaklin.relation import FuzzyEquivalence, FuzzyRelation, is_equivalence
from weaklin.solver import WeaklyLinearSystem, solve_greatest, verify_solution

from support import (CARRIER3, HALF, PUBLISHED, V1, V2, W1, W2, F, rand_rel, rng_for,
                     word_degree)

DATA = Path(__file__).resolve().parents[1] / "data"


def automaton(deltas, sigma, tau, lattice=GODEL):
    return FuzzyAutomaton({chr(ord("a") + i): d for i, d in enumerate(deltas)}, sigma, tau)


def rand_automaton(rng, lattice, n, letters=2, carrier=CARRIER3):
    deltas = [rand_rel(rng, lattice, n, n, carrier) for _ in range(letters)]
    sigma = [rng.choice(carrier) for _ in range(n)]
    tau = [rng.choice(carrier) for _ in range(n)]
    return automaton(deltas, sigma, tau, lattice)


def test_automaton_validation():
    with pytest.raises(ShapeMismatchError):
        FuzzyAutomaton({}, [1], [1])
    with pytest.raises(ShapeMismatchError):
        automaton([V1], [1, 0], [1, 1, 1])
    with pytest.raises(ShapeMismatchError):
        automaton([V1, W1], [1, 0, 0], [1, 1, 1])


def test_extensionality_bound_examples():
    W = extensionality_bound(["0.4"] * 3, GODEL)
    assert W == FuzzyRelation.universal(GODEL, 3)
    B = extensionality_bound([1, 0, 1], BOOLEAN)
    assert B.tolist() == [[1, 0, 1], [0, 1, 0], [1, 0, 1]]
    G = extensionality_bound([1, "0.5", "0.5"], GODEL)
    assert G.rows[0][1] == G.rows[0][2] == HALF and G.rows[1][2] == ONE
    assert isinstance(G, FuzzyEquivalence)


def test_extensionality_bound_is_greatest_exhaustive():
    eqs = list(enumerate_equivalences(GODEL, CARRIER3, 3))
    for tau in itertools.product(CARRIER3, repeat=3):
        W = extensionality_bound(tau, GODEL)
        ok = [E for E in eqs if all(E.rows[i][j] <= GODEL.biresiduum(tau[i], tau[j])
                                    for i in range(3) for j in range(3))]
        assert W in ok
        assert all(E <= W for E in ok)


def test_identity_transitions_give_universal_equivalence():
    I = FuzzyRelation.identity(GODEL, 3)
    M = automaton([I, I], [1, 0, 0], ["0.3"] * 3)
    U = FuzzyRelation.universal(GODEL, 3)
    assert greatest_bisimulation_equivalence(M, "forward").solution == U
    # backward mode is bounded by the initial vector, which is not constant here
    assert greatest_bisimulation_equivalence(M, "backward").solution == extensionality_bound(
        M.initial, GODEL)


def test_single_state_automaton():
    M = automaton([F([[.4]])], [1], ["0.2"])
    rep = greatest_bisimulation_equivalence(M)
    assert rep.solution == FuzzyRelation.universal(GODEL, 1)
    assert len(reduce(M, rep.solution).states) == 1


@pytest.mark.parametrize("mode,variant", [("forward", 4), ("backward", 5)])
def test_bisimulation_matches_direct_and_oracle(mode, variant):
    M = automaton([V1], [1, 1, 1], [1, 1, 1])
    rep = greatest_bisimulation_equivalence(M, mode)
    direct = solve_greatest(WeaklyLinearSystem.homogeneous(variant, [V1],
                                                           FuzzyRelation.universal(GODEL, 3)))
    assert rep.solution == direct.solution
    # oracle: every equivalence valued in the generated subalgebra, checked raw
    system = bisimulation_system(M, mode)
    carrier = sorted(system.values() | {ZERO, ONE})
    sols = [E for E in enumerate_equivalences(GODEL, carrier, 3) if is_solution(system, E)]
    assert rep.solution in sols and all(E <= rep.solution for E in sols)
    assert isinstance(rep.solution, FuzzyEquivalence)


def test_bisimulation_is_equivalence_on_random_automata():
    rng = rng_for(1)
    for _ in range(20):
        M = rand_automaton(rng, rng.choice([GODEL, LUKASIEWICZ]), 4)
        for mode in ("forward", "backward"):
            rep = greatest_bisimulation_equivalence(M, mode)
            assert rep.stabilized and is_equivalence(rep.solution)


def test_bad_mode():
    with pytest.raises(ValueError):
        bisimulation_system(automaton([V1], [1, 0, 0], [1, 1, 1]), "sideways")


def test_reduce_by_identity_and_universal():
    M = automaton([V1, V2], [1, 0, 0], [1, ".5", 0])
    I = FuzzyRelation.identity(GODEL, 3)
    R = reduce(M, I)
    assert R.transitions == M.transitions and R.initial == M.initial and R.terminal == M.terminal
    U = reduce(M, FuzzyRelation.universal(GODEL, 3))
    assert len(U.states) == 1
    assert U.transitions["a"].rows[0][0] == max(map(max, V1.rows))
    assert U.transitions["b"].rows[0][0] == max(map(max, V2.rows))


def test_reduce_crafted_instance():
    M = io.automaton_from_document(io.load(DATA / "reducible.json"))
    rep = greatest_bisimulation_equivalence(M, "forward")
    R = reduce(M, rep.solution)
    assert len(M.states) == 3 and len(R.states) == 2
    assert index_of(rep.solution) == len(R.states)
    assert R.metadata["classes"] == {"p": ("p", "q"), "r": ("r",)}
    assert "construction" in R.metadata


def test_reduction_satisfies_natural_map_systems():
    rng = rng_for(2)
    for _ in range(15):
        M = rand_automaton(rng, GODEL, 4)
        E = greatest_bisimulation_equivalence(M, "forward").solution
        q = quotient_system(M.relational_system, E)
        deltas = list(M.relational_system.relations)
        for t in (1, 2):
            assert verify_solution(WeaklyLinearSystem.heterogeneous(t, deltas, q.relations),
                                   natural_map(E))
        assert len(reduce(M, E).states) == len(FactorSet(E))


@pytest.mark.parametrize("mode", ["forward", "backward"])
def test_reduction_preserves_word_degrees(mode):
    # a sanity check of the forward/backward pairing; not part of the contract
    rng = rng_for(3 if mode == "forward" else 4)
    shrunk = 0
    for _ in range(40):
        M = rand_automaton(rng, GODEL, 4, carrier=(ZERO, HALF, ONE))
        E = greatest_bisimulation_equivalence(M, mode).solution
        R = reduce(M, E)
        shrunk += len(R.states) < len(M.states)
        for k in range(4):
            for word in itertools.product(M.alphabet, repeat=k):
                assert word_degree(M, word) == word_degree(R, word)
    assert shrunk > 0


def test_solve_between_worked_example():
    M = io.automaton_from_document(io.load(DATA / "automaton_m.json"))
    N = io.automaton_from_document(io.load(DATA / "automaton_n.json"))
    for t in range(1, 7):
        assert solve_between(M, N, t).solution.rows == PUBLISHED[t].rows


def test_solve_between_self_contains_identity():
    rng = rng_for(5)
    for _ in range(20):
        M = rand_automaton(rng, GODEL, 3)
        I = FuzzyRelation.identity(GODEL, M.states)
        for t in range(1, 7):
            assert I <= solve_between(M, M, t).solution


def test_solve_between_empty_bound_and_mismatch():
    M = automaton([V1, V2], [1, 0, 0], [1, 1, 1])
    N = automaton([W1, W2], [1, 0], [1, 1])
    O = FuzzyRelation.empty(GODEL, 3, 2)
    assert solve_between(M, N, 3, O).solution == O
    K = FuzzyAutomaton({"z": W1}, [1, 0], [1, 1])
    with pytest.raises(ShapeMismatchError):
        solve_between(M, K, 3)
