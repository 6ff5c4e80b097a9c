from math import gcd

import pytest
from conftest import random_setup
from hypothesis import given, settings
from hypothesis import strategies as st

from equichar.arith import BaseField, GaloisGSet, InertiaData, Morphism
from equichar.catalog import morphism_zoo, random_invertible, random_sheaf
from equichar.compat import (
    CompatError,
    CompatSystem,
    Operation,
    apply_operation,
    check_compatibility,
    check_compatibility_local,
    check_compatibility_truncated,
    class_arithmetic,
    closure_harness,
    pairwise_compatible,
    sigma_twist_system,
    trace_table,
)
from equichar.cyclotomic import CycloElem, FieldAut
from equichar.groups import GroupHom, RightGSet, cyclic, trivial_group
from equichar.reps import conjugate, scalar_rep
from equichar.sheaves import EquivariantSheaf, VirtualClass, direct_sum

FQ = BaseField(7)
seeds = st.integers(0, 10**6)
z5 = CycloElem.zeta(5)


def point(base=FQ):
    return GaloisGSet(RightGSet(trivial_group(), [[0]]), [0], base)


def scalar(X, N, a, character=None):
    W = X.weil_group(0)
    return EquivariantSheaf(X, N, [scalar_rep(W, N, character or [1] * W.kernel.order, a)])


def zeta5_system(second_power):
    X = point()
    A, B = scalar(X, 5, z5), scalar(X, 5, z5**second_power)
    return CompatSystem([FieldAut(5, 1), FieldAut(5, 2)], [A, B], ["l1", "l2"])


def units(N):
    return [u for u in range(1, max(N, 2)) if gcd(u, N) == 1]


def random_compatible(seed, local=False, members=3):
    rng, X, N, L = random_setup(seed, local=local)
    sigmas = [FieldAut(N, rng.choice(units(N))) for _ in range(members)]
    return rng, sigma_twist_system(L, sigmas)


# the predicate


def test_single_member_is_compatible():
    X = point()
    S = CompatSystem([FieldAut(5, 3)], [scalar(X, 5, z5 + 2)])
    assert check_compatibility(S).compatible


def test_zeta5_pair():
    good = check_compatibility(zeta5_system(2), keep=True)
    assert good.compatible
    assert good.common_values[(0, 0, 1)] == z5
    bad = check_compatibility(zeta5_system(3))
    assert not bad.compatible
    w = bad.witness
    assert w.j == 1 and w.pair == ("l1", "l2")
    assert w.untwisted == (z5, z5**4)


def test_truncated_check_examples():
    for power, expected in ((2, True), (3, False)):
        S = zeta5_system(power)
        assert check_compatibility_truncated(S, 0).compatible == check_compatibility(S).compatible == expected
        v = check_compatibility_truncated(S, 3)
        assert v.compatible == expected
        if not expected:
            assert v.witness.j >= 3


def test_members_must_share_a_base():
    with pytest.raises(CompatError):
        CompatSystem([FieldAut(5, 1)] * 2, [scalar(point(), 5, z5), scalar(point(), 5, z5)])
    with pytest.raises(CompatError):
        CompatSystem([FieldAut(5, 1)], [])
    X = point()
    with pytest.raises(CompatError):
        CompatSystem([FieldAut(3, 1)], [scalar(X, 5, z5)])


def test_trace_table_layout():
    S = zeta5_system(2)
    table = trace_table(S)
    assert table.windows[0] == range(-1, 2)
    assert table.entries[(0, 0, -1)] == (z5**4, z5**3)


# local systems


def _ramified(N=3, order=3):
    Q = cyclic(order)
    inertia = InertiaData(Q, [[0] * order], list(Q))
    return GaloisGSet(RightGSet(trivial_group(), [[0]]), [0], BaseField(7, kind="local"), inertia)


def test_local_check_without_inertia_matches_the_plain_check():
    X = point(BaseField(7, kind="local"))
    S = CompatSystem([FieldAut(5, 1), FieldAut(5, 2)], [scalar(X, 5, z5), scalar(X, 5, z5**2)])
    assert check_compatibility_local(S).compatible == check_compatibility(S).compatible


def test_inertia_characters_can_witness():
    X = _ramified()
    z = CycloElem.zeta(3)
    A = scalar(X, 3, 1, [1, z, z**2])
    B = scalar(X, 3, 1, [1, z**2, z])
    bad = check_compatibility_local(CompatSystem([FieldAut(3, 1)] * 2, [A, B]))
    assert not bad.compatible
    assert bad.witness.k in X.weil_group(0).inertia and bad.witness.k != 0
    twisted = check_compatibility_local(CompatSystem([FieldAut(3, 1), FieldAut(3, 2)], [A, B]))
    assert twisted.compatible


def test_local_check_needs_a_local_base():
    with pytest.raises(CompatError):
        check_compatibility_local(zeta5_system(2))


# closure


def test_closure_examples():
    dual = closure_harness(zeta5_system(2), Operation("dual"))
    assert dual.passed and dual.output_compatible
    X = GaloisGSet(RightGSet(trivial_group(), [[0], [1]]), [1, 0], FQ)
    Y = point()
    m = Morphism(X, Y, [0, 0], GroupHom.identity(trivial_group()))
    S = CompatSystem([FieldAut(5, 1), FieldAut(5, 2)], [scalar(X, 5, z5), scalar(X, 5, z5**2)])
    assert closure_harness(S, Operation("pushforward", morphism=m)).output_compatible
    Xl = _ramified(3)
    z = CycloElem.zeta(3)
    A = EquivariantSheaf.unit(Xl, 3)
    Sl = sigma_twist_system(direct_sum(A, scalar(Xl, 3, z, [1, z, z**2])), [FieldAut(3, 1), FieldAut(3, 2)])
    assert closure_harness(Sl, Operation("inertia_invariants")).output_compatible


def test_binary_operations_need_matching_automorphisms():
    with pytest.raises(CompatError):
        apply_operation(zeta5_system(2), Operation("tensor", other=zeta5_system(2).subsystem([0])))
    with pytest.raises(CompatError):
        apply_operation(zeta5_system(2), Operation("nonsense"))


def _ops_for(S, rng):
    X = S.base
    ops = [Operation("tensor"), Operation("hom"), Operation("dual"), Operation("tate_twist", n=rng.choice([-1, 1, 2]))]
    zoo = morphism_zoo(X)
    for name, f in zoo.items():
        if f.source is X and f.degree == 1:
            ops.append(Operation("pushforward", morphism=f))
            break
    ops.append(Operation("pullback", morphism=zoo["fold"]))
    if "inclusion" in zoo:
        ops.append(Operation("extend_by_zero", morphism=zoo["inclusion"]))
    g = rng.choice(list(X.group))
    ops.append(Operation("untwist", m=rng.randint(1, 3), g=g))
    if X.is_local:
        ops += [Operation("inertia_invariants"), Operation("nearby_cycles_point")]
    return ops


@given(seeds, st.booleans())
@settings(max_examples=25)
def test_closure_under_every_operation(seed, local):
    rng, S = random_compatible(seed, local)
    assert check_compatibility(S).compatible
    for op in _ops_for(S, rng):
        src = S
        if op.name == "pullback":
            src = sigma_twist_system(random_sheaf(rng, op.morphism.target, S.conductor, 2), S.sigmas)
        elif op.morphism is not None and op.morphism.source is not S.base:
            src = sigma_twist_system(random_sheaf(rng, op.morphism.source, S.conductor, 2), S.sigmas)
        rep = closure_harness(src, op)
        assert rep.passed, op.name


# class arithmetic


def test_class_arithmetic_examples():
    rng, X, N, L = random_setup(11)
    M = random_sheaf(rng, X, N, 2)
    a, b = VirtualClass.of(L), VirtualClass.of(M)
    zero = class_arithmetic(a, a, "sub")
    assert all(v == 0 for v in zero.trace_table().values())
    total = class_arithmetic(a, b, "add")
    for P in X.points():
        for j in range(-2, 3):
            for k in P.group.kernel:
                w = (k, j)
                assert total.trace(P.index, w) == L.trace(P.index, w) + M.trace(P.index, w)
                assert VirtualClass.of(direct_sum(L, M)).trace(P.index, w) == total.trace(P.index, w)
    with pytest.raises(CompatError):
        class_arithmetic(a, b, "mul")


# properties


@given(seeds)
@settings(max_examples=30)
def test_sigma_twists_are_compatible(seed):
    _, S = random_compatible(seed)
    assert check_compatibility(S).compatible


@given(seeds, st.integers(1, 5))
@settings(max_examples=30)
def test_truncated_agrees_with_the_full_check(seed, start):
    rng, S = random_compatible(seed, members=2)
    if rng.random() < 0.5:
        objs = list(S.objects)
        objs[1] = VirtualClass.of(random_sheaf(rng, S.base, S.conductor, 2))
        S = CompatSystem(S.sigmas, objs)
    assert check_compatibility_truncated(S, start).compatible == check_compatibility(S).compatible


@given(seeds)
@settings(max_examples=30)
def test_compatibility_is_pairwise(seed):
    rng, S = random_compatible(seed, members=3)
    if rng.random() < 0.6:
        objs = list(S.objects)
        objs[rng.randrange(3)] = VirtualClass.of(random_sheaf(rng, S.base, S.conductor, 2))
        S = CompatSystem(S.sigmas, objs)
    assert pairwise_compatible(S) == check_compatibility(S).compatible


@given(seeds)
@settings(max_examples=30)
def test_isomorphic_replacements_keep_the_verdict(seed):
    rng, S = random_compatible(seed, members=2)
    before = check_compatibility(S).compatible
    L = S.objects[1].plus[0]
    stalks = [conjugate(s, random_invertible(rng, S.conductor, s.dim)) if s.dim else s for s in L.stalks]
    M = EquivariantSheaf(L.base, L.conductor, stalks)
    T = CompatSystem(S.sigmas, [S.objects[0], VirtualClass.of(M)])
    assert check_compatibility(T).compatible == before
