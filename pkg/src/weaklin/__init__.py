"""Weakly linear systems of fuzzy relation inequalities."""
from weaklin.errors import *  # noqa: F401,F403
from weaklin.lattice import (BOOLEAN, GODEL, LUKASIEWICZ, PRODUCT, Boolean, FiniteChain,
                             Godel, Lukasiewicz, Product, ResiduatedLattice,
                             generated_subalgebra, parse_lattice, truth)
from weaklin.relation import FuzzyEquivalence, FuzzyRelation
from weaklin.solver import (SolveReport, Status, SystemKind, Termination, WeaklyLinearSystem,
                            phi, phi_crisp, predict_termination, solve_greatest,
                            solve_greatest_crisp, verify_solution)
from weaklin.kernels import BACKEND

__version__ = "0.1.0"
