import itertools

import pytest

from weaklin.errors import (NotAnEquivalenceError, NotASolutionError,
                            NotUniformError, PreconditionError)
from weaklin.lattice import GODEL, ONE
from weaklin.oracle import enumerate_equivalences
from weaklin.relation import (FuzzyEquivalence, FuzzyRelation, cokernel, compose, converse,
                              is_uniform, join, kernel)
from weaklin.quotient import (FactorSet, FuzzyRelationalSystem, class_map,
                              decompose_uniform_solution, induced_bijection, index_of,
                              is_isomorphism, lift, natural_map, quotient_system, reconstruct,
                              relative_quotient)
from weaklin.solver import WeaklyLinearSystem, solve_greatest, verify_solution

from support import (CARRIER3, F, PUBLISHED, V1, V2, W1, W2, example_system, rand_equivalence,
                     rand_nested, rand_rel, rng_for, transitive_closure)

R3 = PUBLISHED[3]
EQ3 = list(enumerate_equivalences(GODEL, CARRIER3, 3))


def universal_on(labels):
    return FuzzyRelation.universal(GODEL, labels)


def eq_of(R):
    return FuzzyEquivalence.of(R)


def test_factor_set_classes():
    E = F([[1, 1, .5], [1, 1, .5], [.5, .5, 1]], dom=["1", "2", "3"], cod=["1", "2", "3"])
    fs = FactorSet(E)
    assert fs.classes == ((0, 1), (2,))
    assert fs.labels == ("1", "3")
    assert fs.members("1") == ("1", "2")
    assert fs.class_label("2") == "1"
    assert index_of(E) == 2
    with pytest.raises(NotAnEquivalenceError):
        FactorSet(F([[1, .5], [0, 1]]))


def test_factor_index_equals_crisp_index():
    from weaklin.relation import crisp_part
    rng = rng_for(1)
    for _ in range(30):
        E = rand_equivalence(rng, GODEL, 5)
        assert index_of(E) == len(set(crisp_part(E).rows))


def test_quotient_by_identity_and_universal():
    sys = FuzzyRelationalSystem([V1, V2])
    I = FuzzyRelation.identity(GODEL, 3)
    assert quotient_system(sys, I).relations == sys.relations
    q = quotient_system(sys, universal_on(3))
    assert len(q) == 1
    assert [v.rows[0][0] for v in q.relations] == [max(map(max, v.rows)) for v in (V1, V2)]


def test_quotient_entries_match_direct_products():
    rng = rng_for(2)
    for _ in range(30):
        E = rand_equivalence(rng, GODEL, 4)
        V = rand_rel(rng, GODEL, 4, 4)
        q = quotient_system(FuzzyRelationalSystem([V]), E).relations[0]
        M = compose(compose(E, V), E)
        fs = FactorSet(E)
        for a1, a2 in itertools.product(range(4), repeat=2):
            # every representative pair gives the same entry
            assert q.rows[fs.class_of[a1]][fs.class_of[a2]] == M.rows[a1][a2]


def test_natural_map():
    I = FuzzyRelation.identity(GODEL, 3)
    assert natural_map(I) == I
    nu = natural_map(universal_on(3))
    assert nu.shape == (3, 1) and all(r == (ONE,) for r in nu.rows)
    rng = rng_for(3)
    for _ in range(30):
        E = rand_equivalence(rng, GODEL, 3)
        N = natural_map(E)
        assert is_uniform(N) and kernel(N) == E


def test_natural_map_solves_first_two_variants():
    rng = rng_for(4)
    for _ in range(30):
        E = rand_equivalence(rng, GODEL, 3)
        V = [rand_rel(rng, GODEL, 3, 3) for _ in range(2)]
        q = quotient_system(FuzzyRelationalSystem(V), E)
        for t in (1, 2):
            s = WeaklyLinearSystem.heterogeneous(t, V, q.relations)
            assert verify_solution(s, natural_map(E))


def test_natural_map_three_way_equivalence_exhaustive():
    rng = rng_for(5)
    systems = [[rand_rel(rng, GODEL, 3, 3) for _ in range(2)] for _ in range(3)]
    assert len(EQ3) > 10
    for V in systems:
        for E in EQ3:
            hom = WeaklyLinearSystem.homogeneous(4, V, universal_on(3))
            q = quotient_system(FuzzyRelationalSystem(V), E)
            N = natural_map(E)
            s3 = WeaklyLinearSystem.heterogeneous(3, V, q.relations)
            s5 = WeaklyLinearSystem.heterogeneous(5, V, q.relations)
            i = verify_solution(hom, E)
            assert i == verify_solution(s3, N) == verify_solution(s5, N)


def test_relative_quotient_examples():
    rng = rng_for(6)
    for _ in range(20):
        E, Fq = rand_nested(rng, GODEL, 4)
        fs = FactorSet(E)
        EE = relative_quotient(E, E)
        for i, j in itertools.product(range(4), repeat=2):
            assert EE.rows[fs.class_of[i]][fs.class_of[j]] == E.rows[i][j]
            assert relative_quotient(Fq, E).rows[fs.class_of[i]][fs.class_of[j]] == Fq.rows[i][j]
        U = relative_quotient(universal_on(4), E)
        assert all(v == ONE for r in U.rows for v in r)


def test_relative_quotient_requires_nesting():
    E = F([[1, .5], [.5, 1]])
    G = F([[1, .2], [.2, 1]])
    with pytest.raises(PreconditionError):
        relative_quotient(G, E)
    with pytest.raises(PreconditionError):
        lift(G, E)


def test_lift():
    rng = rng_for(7)
    for _ in range(30):
        E, G = rand_nested(rng, GODEL, 4)
        assert lift(E, E) == natural_map(E)
        L = lift(G, E)
        assert is_uniform(L)
        assert kernel(L) == G
        assert cokernel(L) == relative_quotient(G, E)


def test_induced_bijection():
    perm = F([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dom=["a", "b", "c"], cod=["x", "y", "z"])
    assert induced_bijection(perm) == {"a": "y", "b": "z", "c": "x"}
    R = FuzzyRelation(R3.rows, GODEL, ["1", "2", "3"], ["b1", "b2"])
    assert induced_bijection(R) == {"1": "b1", "3": "b2"}
    inv = induced_bijection(converse(R))
    assert inv == {v: k for k, v in induced_bijection(R).items()}
    with pytest.raises(NotUniformError):
        induced_bijection(PUBLISHED[1])


def test_is_isomorphism():
    sa = FuzzyRelationalSystem([V1, V2])
    assert is_isomorphism({0: 0, 1: 1, 2: 2}, sa, sa)
    assert not is_isomorphism({0: 1, 1: 0, 2: 2}, sa, sa)
    sb = FuzzyRelationalSystem([W1, W2])
    assert not is_isomorphism({0: 0, 1: 1, 2: 1}, sa, sb)


def test_second_isomorphism_witness():
    rng = rng_for(8)
    for _ in range(30):
        E, G = rand_nested(rng, GODEL, 4)
        sys = FuzzyRelationalSystem([rand_rel(rng, GODEL, 4, 4) for _ in range(2)])
        lhs = quotient_system(quotient_system(sys, E), relative_quotient(G, E))
        rhs = quotient_system(sys, G)
        assert is_isomorphism(class_map(E, G), rhs, lhs)


def test_relative_quotient_is_order_embedding():
    rng = rng_for(9)
    for _ in range(60):
        E = rand_equivalence(rng, GODEL, 4)
        G = eq_of(transitive_closure(join(E, rand_equivalence(rng, GODEL, 4))))
        H = eq_of(transitive_closure(join(E, rand_equivalence(rng, GODEL, 4))))
        assert (G <= H) == (relative_quotient(G, E) <= relative_quotient(H, E))
        GH = eq_of(transitive_closure(join(G, H)))
        assert relative_quotient(G, E) <= relative_quotient(GH, E)


def _nested_setup(rng, n=4):
    V = [rand_rel(rng, GODEL, n, n) for _ in range(2)]
    W = rand_equivalence(rng, GODEL, n)
    E = solve_greatest(WeaklyLinearSystem.homogeneous(4, V, W)).solution
    return V, W, eq_of(E)


def test_quotient_solutions_correspond():
    rng = rng_for(10)
    for _ in range(25):
        V, W, E = _nested_setup(rng)
        q = quotient_system(FuzzyRelationalSystem(V), E)
        hom = WeaklyLinearSystem.homogeneous(4, V, W)
        qhom = WeaklyLinearSystem.homogeneous(4, q.relations, relative_quotient(W, E))
        for _ in range(4):
            G = eq_of(transitive_closure(join(E, rand_equivalence(rng, GODEL, 4))))
            qa = verify_solution(hom, G)
            assert qa == verify_solution(qhom, relative_quotient(G, E))
            lifted = WeaklyLinearSystem.heterogeneous(3, V, q.relations, lift(W, E))
            assert qa == verify_solution(lifted, lift(G, E))
        G = eq_of(solve_greatest(hom).solution)
        assert solve_greatest(qhom).solution == relative_quotient(G, E)


def test_compositions_of_solutions_solve_homogeneous_systems():
    rng = rng_for(11)
    for _ in range(30):
        V = [rand_rel(rng, GODEL, 3, 3) for _ in range(2)]
        W = [rand_rel(rng, GODEL, 2, 2) for _ in range(2)]
        Z = rand_rel(rng, GODEL, 3, 2)
        R = solve_greatest(WeaklyLinearSystem.heterogeneous(3, V, W, Z)).solution
        assert verify_solution(WeaklyLinearSystem.homogeneous(4, V, compose(Z, converse(Z))),
                               compose(R, converse(R)))
        assert verify_solution(WeaklyLinearSystem.homogeneous(4, W, compose(converse(Z), Z)),
                               compose(converse(R), R))


def test_uniform_greatest_solution_kernels_are_greatest():
    rng = rng_for(12)
    cases = [(example_system(3).V, example_system(3).W, FuzzyRelation.universal(GODEL, 3, 2))]
    perm = F([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    while len(cases) < 25:
        # W isomorphic to V, so a crisp bijection is a uniform solution
        V = [rand_rel(rng, GODEL, 3, 3) for _ in range(2)]
        if len(cases) % 2:
            W = [compose(compose(converse(perm), v), perm) for v in V]
            Z = FuzzyRelation.universal(GODEL, 3)
        else:
            W, Z = V, rand_equivalence(rng, GODEL, 3)
        cases.append((V, W, Z))
    hits = 0
    for V, W, Z in cases:
        assert is_uniform(Z)
        R = solve_greatest(WeaklyLinearSystem.heterogeneous(3, V, W, Z)).solution
        if not is_uniform(R):
            continue
        hits += 1
        gA = solve_greatest(WeaklyLinearSystem.homogeneous(4, V, compose(Z, converse(Z))))
        gB = solve_greatest(WeaklyLinearSystem.homogeneous(4, W, compose(converse(Z), Z)))
        assert kernel(R) == gA.solution
        assert cokernel(R) == gB.solution
    assert hits == len(cases)


def test_decompose_worked_solution():
    s = example_system(3)
    d = decompose_uniform_solution(R3, s)
    assert d.E == kernel(R3) and d.F == cokernel(R3)
    assert d.iso == {0: 0, 2: 1}
    assert reconstruct(d.E, d.F, d.iso) == R3
    with pytest.raises(NotASolutionError):
        decompose_uniform_solution(PUBLISHED[2], s)
    with pytest.raises(NotUniformError):
        decompose_uniform_solution(PUBLISHED[1], example_system(3))
    with pytest.raises(PreconditionError):
        decompose_uniform_solution(R3, example_system(1))


def test_decompose_identity():
    I = FuzzyRelation.identity(GODEL, 3)
    s = WeaklyLinearSystem.heterogeneous(3, [V1, V2], [V1, V2], I)
    d = decompose_uniform_solution(I, s)
    assert d.E == I and d.F == I and d.iso == {0: 0, 1: 1, 2: 2}


@pytest.mark.parametrize("variant", [3, 5])
def test_decompose_and_reconstruct_random(variant):
    rng = rng_for(13 + variant)
    done = 0
    for _ in range(400):
        V = [rand_rel(rng, GODEL, 3, 3) for _ in range(2)]
        W = [rand_rel(rng, GODEL, 3, 3) for _ in range(2)]
        s = WeaklyLinearSystem.heterogeneous(variant, V, W)
        R = solve_greatest(s).solution
        if not is_uniform(R):
            continue
        done += 1
        d = decompose_uniform_solution(R, s)
        back = reconstruct(d.E, d.F, d.iso)
        assert back == R and verify_solution(s, back)
        if done == 15:
            break
    assert done >= 5


def test_reconstruct_rejects_unrelated_pair():
    E = F([[1, .5], [.5, 1]])
    G = F([[1, .2], [.2, 1]])
    with pytest.raises(PreconditionError):
        reconstruct(E, G, {0: 0, 1: 1})


def test_class_map_needs_nesting():
    with pytest.raises(PreconditionError):
        class_map(F([[1, .5], [.5, 1]]), F([[1, .2], [.2, 1]]))


def test_inconsistent_quotient_detected():
    # a non-transitive "equivalence" is rejected before any class is formed
    bad = F([[1, 1, 0], [1, 1, 1], [0, 1, 1]])
    with pytest.raises(NotAnEquivalenceError):
        quotient_system(FuzzyRelationalSystem([V1]), bad)
