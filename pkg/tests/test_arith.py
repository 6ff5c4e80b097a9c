import random
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from equichar.arith import (
    BaseField,
    GaloisGSet,
    InertiaData,
    Morphism,
    NotInGroup,
    WeilLevelGroup,
    base_change,
    base_change_image,
    divisible_degree_subgroup,
    galois_quotient,
    point_hom,
    points_of,
    weil_group_at,
)
from equichar.catalog import group_catalog, morphism_zoo, quotient_group, random_galois_gset
from equichar.groups import RightGSet, cyclic, trivial_group

FQ = BaseField(2)
GROUPS = {k: G for k, G in group_catalog(8).items()}
seeds = st.integers(0, 10**6)


def gset(G, act, frob, base=FQ, inertia=None):
    return GaloisGSet(RightGSet(G, act), frob, base, inertia)


def swap_pair(G=None):
    """Two points swapped by Frobenius, and by the generator of G when it is C2."""
    if G is None:
        return gset(trivial_group(), [[0], [1]], [1, 0])
    return gset(G, [[0, 1], [1, 0]], [1, 0])


def random_gset(seed, local=False):
    rng = random.Random(seed)
    G = GROUPS[rng.choice(sorted(GROUPS))]
    return random_galois_gset(rng, G, 4, local=local)


def frobenius_power(X, m, x):
    # inverse of a permutation by search, to stay independent of the power table
    for _ in range(abs(m)):
        x = X.frobenius[x] if m > 0 else X.frobenius.index(x)
    return x


# points


def test_three_point_frobenius_cycle():
    X = gset(trivial_group(), [[0], [1], [2]], [1, 2, 0])
    (P,) = points_of(X)
    assert P.degree == 3 and P.decomposition == frozenset(X.group)


def test_double_swap_is_one_point_of_degree_two():
    (P,) = points_of(swap_pair(cyclic(2)))
    assert P.degree == 2 and P.decomposition == frozenset({0, 1})


def test_frobenius_fixed_pair_exchanged_by_the_group():
    X = gset(cyclic(2), [[0, 1], [1, 0]], [0, 1])
    (P,) = points_of(X)
    assert P.degree == 1 and P.decomposition == {0}
    assert P.geometric_points == (0, 1)


@given(seeds, st.booleans())
def test_points_partition_the_geometric_points(seed, local):
    X = random_gset(seed, local)
    pts = points_of(X)
    covered = sorted(x for P in pts for x in P.geometric_points)
    assert covered == list(range(X.size))
    for P in pts:
        assert P.basepoint == min(P.geometric_points)
        assert P.degree == len(X.galois_orbit(P.basepoint))
        galois = set(X.galois_orbit(P.basepoint))
        again = {g for g in X.group if X.g_action(P.basepoint, g) in galois}
        assert again == P.decomposition


# Weil groups


def test_weil_group_of_a_rational_point():
    W = weil_group_at(gset(trivial_group(), [[0]], [0]), 0)
    assert W.kernel.order == 1 and W.frob_step == 1


def test_weil_group_of_the_double_swap():
    X = swap_pair(cyclic(2))
    W = weil_group_at(X, 0)
    assert W.kernel.order == 1 and W.frob_step == 1
    assert W.embedding.w0 == (1, 0, 1)
    assert W.theta == (0,)


def test_weil_group_of_a_degree_two_point():
    W = weil_group_at(swap_pair(), 0)
    assert W.kernel.order == 1 and W.frob_step == 2


def test_weil_group_rejects_missing_points():
    with pytest.raises(IndexError):
        weil_group_at(swap_pair(), 2)


@given(seeds)
def test_split_form_reconstructs_membership(seed):
    X = random_gset(seed)
    for P in X.points():
        W, x = P.group, P.basepoint
        bound = 3 * len(P.geometric_points)
        for m in range(-bound, bound + 1):
            for g in X.group:
                member = X.g_action(x, g) == frobenius_power(X, m, x)
                c = (g, X.Q.identity, m)
                if member:
                    w = W.to_split(c)
                    assert W.to_concrete(w) == c
                else:
                    with pytest.raises(NotInGroup):
                        W.to_split(c)
        assert all(X.g_action(x, g) == x for g in (lab[0] for lab in W.embedding.labels))


@given(seeds, st.booleans())
def test_split_multiplication_matches_the_concrete_law(seed, local):
    X = random_gset(seed, local)
    rng = random.Random(seed)
    for P in X.points():
        W = P.group
        for _ in range(10):
            a = (rng.randrange(W.kernel.order), rng.randint(-3, 3))
            b = (rng.randrange(W.kernel.order), rng.randint(-3, 3))
            assert X.mul(W.to_concrete(a), W.to_concrete(b)) == W.to_concrete(W.mul(a, b))
            assert X.in_stabilizer(P.basepoint, W.to_concrete(a))


@given(seeds, st.booleans())
def test_concrete_action_is_a_right_action(seed, local):
    X = random_gset(seed, local)
    rng = random.Random(seed)
    for _ in range(10):
        a = (rng.randrange(X.group.order), rng.randrange(X.Q.order), rng.randint(-3, 3))
        b = (rng.randrange(X.group.order), rng.randrange(X.Q.order), rng.randint(-3, 3))
        for x in range(X.size):
            assert X.act(X.act(x, a), b) == X.act(x, X.mul(a, b))


def test_local_weil_group_collects_inertia():
    Q = cyclic(2)
    X = GaloisGSet(RightGSet(trivial_group(), [[0]]), [0], BaseField(3, kind="local"), InertiaData(Q, [[0, 0]], [0, 1]))
    W = X.weil_group(0)
    assert W.kernel.order == 2 and len(W.inertia) == 2


# point homomorphisms


def test_identity_point_hom():
    X = swap_pair(cyclic(2))
    hom, _ = point_hom(Morphism.identity(X), 0)
    assert hom.kmap == tuple(range(hom.source.kernel.order))
    assert hom.gen_image == (0, 1)


def test_free_torsor_point_hom_is_an_isomorphism():
    X = gset(cyclic(2), [[0, 1], [1, 0]], [0, 1])
    _, a = quotient_group(X.group, frozenset(X.group))
    _, m = galois_quotient(X, a)
    hom, _ = point_hom(m, 0)
    assert hom.is_bijective()


def test_fixed_point_gives_a_kernel():
    X = gset(cyclic(2), [[0, 0]], [0])
    _, a = quotient_group(X.group, frozenset(X.group))
    _, m = galois_quotient(X, a)
    hom, _ = point_hom(m, 0)
    assert hom.is_surjective() and len(hom.kernel()) == 2


@given(seeds)
def test_point_hom_respects_degrees(seed):
    X = random_gset(seed)
    maps = list(morphism_zoo(X).values()) + [base_change(X, 2)[1]]
    rng = random.Random(seed)
    for m in maps:
        for P in m.source.points():
            hom, _ = point_hom(m, P.index)
            W = hom.source
            for _ in range(5):
                w = (rng.randrange(W.kernel.order), rng.randint(-4, 4))
                assert hom.target.degree(hom(w)) == m.degree * W.degree(w)
                v = (rng.randrange(W.kernel.order), rng.randint(-4, 4))
                assert hom(W.mul(w, v)) == hom.target.mul(hom(w), hom(v))


@given(seeds)
def test_quotient_point_homs_are_onto(seed):
    X = random_gset(seed)
    G = X.group
    for N in G.subgroups():
        if not G.is_normal(N):
            continue
        _, a = quotient_group(G, N)
        _, m = galois_quotient(X, a)
        free = all(len(X.g_action.stabilizer(x) & N) == 1 for x in range(X.size))
        for P in X.points():
            hom, _ = point_hom(m, P.index)
            assert hom.is_surjective()
            if free:
                assert hom.is_bijective()


# base change


def test_trivial_extension_keeps_everything():
    X = swap_pair(cyclic(2))
    assert base_change_image(X, 0, 1).is_whole()


def test_cubic_extension_of_a_rational_point():
    X = gset(trivial_group(), [[0]], [0])
    img = base_change_image(X, 0, 3)
    assert img.index() == 3 and img.step == 3


def test_quadratic_extension_with_a_central_kernel():
    X = gset(cyclic(2), [[0, 0]], [0])
    W = X.weil_group(0)
    assert W.kernel.order == 2 and W.theta == (0, 1)
    img = base_change_image(X, 0, 2)
    assert img.index() == 2 and img.kpart == frozenset(W.kernel)
    assert img.contains((1, 2)) and not img.contains((1, 1))


def test_base_change_needs_a_positive_degree():
    with pytest.raises(ValueError):
        base_change_image(swap_pair(), 0, 0)


@given(seeds, st.integers(1, 6))
def test_base_change_image_index_divides_the_degree(seed, m):
    X = random_gset(seed)
    for P in X.points():
        img = base_change_image(X, P.index, m)
        assert m % img.index() == 0
        assert img.same_as(divisible_degree_subgroup(P.group, m))
        for j in range(-6, 7):
            assert img.contains((0, j)) == ((j * P.group.frob_step) % m == 0)


def test_direct_weil_group_semidirect_law():
    # C3 with theta inverting, n0 = 2
    K = cyclic(3)
    W = WeilLevelGroup(K, [K.inv(k) for k in K], 2)
    a, b = (1, 1), (1, 0)
    assert W.mul(a, b) == (K.mul(1, K.inv(1)), 1)
    assert W.mul(W.inv(a), a) == W.identity
    assert W.power(a, 2) == (K.identity, 2)
    assert W.degree((0, 3)) == 6
    with pytest.raises(ValueError):
        W.to_concrete(a)


@pytest.mark.parametrize(
    "theta, n0, inertia, base",
    [
        ([0, 2, 1, 0], 1, None, FQ),
        ([0, 1, 2], 0, None, FQ),
        ([0, 1, 2], 1, frozenset([0, 1]), BaseField(7, kind="local")),
        ([0, 1, 2], 1, frozenset([0, 1, 2]), FQ),
    ],
)
def test_direct_weil_group_rejects(theta, n0, inertia, base):
    with pytest.raises(ValueError):
        WeilLevelGroup(cyclic(3), theta, n0, inertia, base)


@given(seeds)
def test_direct_weil_group_associative(seed):
    rng = random.Random(seed)
    K = cyclic(rng.choice([2, 3, 4, 5]))
    u = rng.choice([u for u in range(1, K.order) if gcd(u, K.order) == 1])
    W = WeilLevelGroup(K, [(u * k) % K.order for k in K], rng.randint(1, 3))
    x, y, z = [(rng.randrange(K.order), rng.randint(-3, 3)) for _ in range(3)]
    assert W.mul(W.mul(x, y), z) == W.mul(x, W.mul(y, z))
