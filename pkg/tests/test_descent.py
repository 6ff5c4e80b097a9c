import random
from math import gcd

import pytest
from conftest import random_setup
from hypothesis import given, settings
from hypothesis import strategies as st

from equichar.arith import BaseField, GaloisGSet, Morphism, NotInGroup
from equichar.catalog import morphism_zoo, random_sheaf
from equichar.compat import CompatSystem, check_compatibility, sigma_twist_system
from equichar.cyclotomic import CycloMatrix, FieldAut
from equichar.descent import build_descent, descent_criterion, descent_equivalence, scholie_check, scholie_table, untwist, untwist_class
from equichar.groups import GroupHom, RightGSet, cyclic, trivial_group
from equichar.reps import scalar_rep
from equichar.sheaves import EquivariantSheaf, VirtualClass, classes_equal, dual, pullback, pushforward, tensor
from equichar.suites import regular_sheaf

FQ = BaseField(5)
seeds = st.integers(0, 10**6)


def gset(G, act, frob, base=FQ):
    return GaloisGSet(RightGSet(G, act), frob, base)


def c2_point():
    return gset(cyclic(2), [[0, 0]], [0])


def signed(X, sign, a):
    W = X.weil_group(0)
    return EquivariantSheaf(X, 1, [scalar_rep(W, 1, [1, sign], a)])


# construction


def test_identity_element_gives_base_change():
    X = gset(trivial_group(), [[0], [1], [2]], [1, 2, 0])
    D = build_descent(X, 2, 0)
    assert D.order == 1 and D.torsor.size == 3
    assert D.target.frobenius == X.phi_pow(2)
    assert D.target.base == X.base.extend(2)


def test_c2_point_descends_to_one_point():
    D = build_descent(c2_point(), 1, 1)
    assert D.target.size == 1 and D.torsor.size == 2
    assert D.target.base == FQ


def test_double_swap_descends_to_two_fixed_points():
    X = gset(cyclic(2), [[0, 1], [1, 0]], [1, 0])
    D = build_descent(X, 1, 1)
    assert D.target.frobenius == (0, 1)
    assert len(D.target.points()) == 2


def test_degree_must_be_positive():
    with pytest.raises(ValueError):
        build_descent(c2_point(), 0, 0)


@given(seeds, st.integers(1, 4), st.booleans())
@settings(max_examples=40)
def test_torsor_is_free_with_valid_maps(seed, m, local):
    _, X, _, _ = random_setup(seed, local=local)
    for g in X.group:
        D = build_descent(X, m, g)
        assert D.is_free()
        D.torsor.validate()
        D.target.validate()
        D.d.validate()
        D.e.validate()
        # the quotient map identifies torsor orbits with target points
        for p in range(D.torsor.size):
            orbit = {D.torsor.g_action(p, c) for c in D.torsor.group}
            assert {D.e.f[o] for o in orbit} == {D.e.f[p]}
            assert len(orbit) == D.order
        assert len(set(D.e.f)) == X.size


# untwisting


def test_untwisting_by_the_identity_forgets_the_group():
    X = gset(cyclic(2), [[0, 1], [1, 0]], [1, 0])
    L = regular_sheaf(X, 1)
    D = build_descent(X, 1, 0)
    U = untwist(D, L)
    for z in range(X.size):
        for j in range(-4, 5):
            fix = D.target.in_stabilizer(z, (0, 0, j))
            assert fix == X.in_stabilizer(z, (0, 0, j))
            if fix:
                assert U.trace_at(z, (0, 0, j)) == L.trace_at(z, (0, 0, j))


def test_sign_character_flips_the_frobenius():
    X = c2_point()
    U = untwist(build_descent(X, 1, 1), signed(X, -1, 3))
    assert U.ranks() == (1,)
    assert U.stalks[0].frob == CycloMatrix(1, [[-3]])


def test_sheaves_pulled_back_from_the_trivial_group():
    X = gset(cyclic(3), [[0, 0, 0], [1, 1, 1]], [1, 0])
    Y = gset(trivial_group(), [[0], [1]], [1, 0])
    f = Morphism(X, Y, [0, 1], GroupHom.trivial(cyclic(3), trivial_group()))
    rng = random.Random(4)
    M = random_sheaf(rng, Y, 3, 2, allow_zero=False)
    L = pullback(f, M)
    for m in (1, 2, 3):
        for g in X.group:
            U = untwist(build_descent(X, m, g), L)
            for z in range(X.size):
                for j in range(-3, 4):
                    if U.base.in_stabilizer(z, (0, 0, j)):
                        assert U.trace_at(z, (0, 0, j)) == M.trace_at(z, (0, 0, m * j))


# the trace identity


def test_scholie_examples():
    X = c2_point()
    L = signed(X, -1, 3)
    assert scholie_check(build_descent(X, 1, 0), L, 1) == (3, 3)
    assert scholie_check(build_descent(X, 1, 1), L, 1) == (-3, -3)
    R = regular_sheaf(X, 1)
    assert scholie_check(build_descent(X, 1, 1), R, 1) == (0, 0)


def test_scholie_reports_missing_fixed_points():
    X = gset(trivial_group(), [[0], [1]], [1, 0])
    D = build_descent(X, 1, 0)
    with pytest.raises(NotInGroup):
        scholie_check(D, EquivariantSheaf.unit(X, 1), 1)
    with pytest.raises(NotInGroup):
        scholie_check(D, EquivariantSheaf.unit(X, 1), 1, z=0)


@given(seeds, st.booleans())
@settings(max_examples=30)
def test_scholie_identity(seed, local):
    _, X, N, L = random_setup(seed, local=local)
    D_ = max(max(L.ranks(), default=0), 1)
    for m in range(1, 5):
        for g in X.group:
            for z, q, j, lhs, rhs in scholie_table(build_descent(X, m, g), L, range(-D_, D_ + 1)):
                assert lhs == rhs, (m, g, z, q, j)


@given(seeds)
@settings(max_examples=20)
def test_descent_is_an_equivalence(seed):
    _, X, N, L = random_setup(seed)
    for g in X.group:
        rep = descent_equivalence(build_descent(X, 1, g), L)
        assert rep.is_free and rep.unit_invertible and rep.counit_invertible


# compatibility with operations


@given(seeds, st.integers(1, 3))
@settings(max_examples=25)
def test_untwist_commutes_with_operations(seed, m):
    rng, X, N, L = random_setup(seed)
    M = random_sheaf(rng, X, N, 2)
    g = rng.choice(list(X.group))
    D = build_descent(X, m, g)
    assert classes_equal(untwist(D, tensor(L, M)), tensor(untwist(D, L), untwist(D, M)))
    assert classes_equal(untwist(D, dual(L)), dual(untwist(D, L)))
    for name, f in morphism_zoo(X).items():
        if f.source is not X or f.target.group is not X.group or f.alpha.images != tuple(X.group):
            continue
        DY = build_descent(f.target, m, g)
        fD = Morphism(D.target, DY.target, f.f, GroupHom.identity(trivial_group()))
        assert classes_equal(untwist(DY, pushforward(f, L)), pushforward(fD, untwist(D, L))), name
        K = random_sheaf(rng, f.target, N, 2)
        assert classes_equal(untwist(D, pullback(f, K)), pullback(fD, untwist(DY, K))), name


# the descent criterion


def test_trivial_group_reduces_to_plain_compatibility():
    X = gset(trivial_group(), [[0]], [0])
    A = EquivariantSheaf(X, 5, [scalar_rep(X.weil_group(0), 5, [1], 2)])
    S = CompatSystem([FieldAut(5, 1), FieldAut(5, 2)], [A, A])
    assert descent_criterion(S).compatible == check_compatibility(S).compatible


def test_compatible_pair_on_a_c2_point():
    X = c2_point()
    L = signed(X, -1, 2)
    S = CompatSystem([FieldAut(1, 1)] * 2, [L, L])
    verdict = descent_criterion(S)
    assert verdict.compatible and verdict.pairs_checked == len(range(1, 3)) * 2


def test_twisted_traces_alone_can_differ():
    X = c2_point()
    plus, minus = signed(X, 1, 1), signed(X, -1, 1)
    S = CompatSystem([FieldAut(1, 1)] * 2, [plus, minus])
    for m in range(1, 5):
        D = build_descent(X, m, 0)
        assert check_compatibility(CompatSystem(S.sigmas, [untwist_class(D, V) for V in S.objects])).compatible
    verdict = descent_criterion(S)
    assert not verdict.compatible
    assert verdict.witness[:2] == (1, 1)


@given(seeds)
@settings(max_examples=20)
def test_criterion_agrees_with_the_direct_check(seed):
    rng, X, N, L = random_setup(seed)
    units = [u for u in range(1, max(N, 2)) if gcd(u, N) == 1]
    S = sigma_twist_system(L, [FieldAut(N, rng.choice(units)) for _ in range(2)])
    objs = list(S.objects)
    if rng.random() < 0.5:
        objs[-1] = VirtualClass.of(random_sheaf(rng, X, N, 2))
    S = CompatSystem(S.sigmas, objs)
    assert descent_criterion(S).compatible == check_compatibility(S).compatible
