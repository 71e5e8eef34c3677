"""Shared fixtures data and random generators for the test suite."""
import random
from fractions import Fraction

from weaklin.lattice import GODEL, FiniteChain, ONE, ZERO
from weaklin.relation import FuzzyEquivalence, FuzzyRelation, compose, converse, join
from weaklin.solver import WeaklyLinearSystem

HALF = Fraction(1, 2)
CHAIN2 = FiniteChain(2)
CARRIER3 = (ZERO, HALF, ONE)


def F(rows, lattice=GODEL, dom=None, cod=None):
    return FuzzyRelation([[str(x) for x in r] for r in rows], lattice, dom, cod)


# the worked Goedel instance: three states on A, two on B, two letters
V1 = F([[1, .3, .4], [.5, 1, .3], [.4, .6, .7]])
V2 = F([[.5, .6, .2], [.6, .3, .4], [.7, .7, 1]])
W1 = F([[1, .6], [.6, .7]])
W2 = F([[.6, .6], [.7, 1]])
PUBLISHED = {
    1: F([[1, .7], [1, .7], [.6, 1]]),
    2: F([[1, .7], [1, .7], [.7, 1]]),
    3: F([[1, .6], [1, .6], [.6, 1]]),
    4: F([[1, .7], [1, .7], [.7, 1]]),
    5: F([[1, .6], [1, .6], [.7, 1]]),
    6: F([[1, .7], [1, .7], [.6, 1]]),
}


def example_system(variant):
    return WeaklyLinearSystem.heterogeneous(variant, [V1, V2], [W1, W2])


def rand_rel(rng, lattice, n, m, carrier=CARRIER3, dom=None, cod=None):
    return FuzzyRelation(tuple(tuple(rng.choice(carrier) for _ in range(m)) for _ in range(n)),
                         lattice, dom, cod, _trusted=True)


def transitive_closure(R):
    while True:
        S = join(R, compose(R, R))
        if S == R:
            return R
        R = S


def rand_equivalence(rng, lattice, n, carrier=CARRIER3, labels=None):
    """Transitive closure of a random reflexive symmetric relation."""
    M = [[ONE if i == j else None for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            M[i][j] = M[j][i] = rng.choice(carrier)
    R = FuzzyRelation(tuple(map(tuple, M)), lattice, labels, labels, _trusted=True)
    return FuzzyEquivalence.of(transitive_closure(R))


def rand_nested(rng, lattice, n, carrier=CARRIER3):
    """A pair E <= F of fuzzy equivalences."""
    E = rand_equivalence(rng, lattice, n, carrier)
    G = rand_equivalence(rng, lattice, n, carrier)
    return E, FuzzyEquivalence.of(transitive_closure(join(E, G)))


def rand_het_system(rng, lattice, variant, n, m, k, carrier=CARRIER3, Z=True):
    V = [rand_rel(rng, lattice, n, n, carrier) for _ in range(k)]
    W = [rand_rel(rng, lattice, m, m, carrier) for _ in range(k)]
    bound = rand_rel(rng, lattice, n, m, carrier) if Z and rng.random() < 0.5 else None
    return WeaklyLinearSystem.heterogeneous(variant, V, W, bound)


def word_degree(M, word):
    """sigma o delta_x1 o ... o delta_xk o tau for an automaton M."""
    row = FuzzyRelation((M.initial,), M.lattice, ("*",), M.states, _trusted=True)
    for x in word:
        row = compose(row, M.transitions[x])
    tau = FuzzyRelation(tuple((v,) for v in M.terminal), M.lattice, M.states, ("*",), _trusted=True)
    return compose(row, tau).rows[0][0]


def rng_for(seed):
    return random.Random(seed)
