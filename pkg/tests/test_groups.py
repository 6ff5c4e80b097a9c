import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from equichar.catalog import group_catalog, quotient_group, random_right_gset
from equichar.groups import (
    EquivariantMap,
    FiniteGroup,
    GroupHom,
    MissingIdentity,
    NotAssociative,
    NotLatinSquare,
    RightGSet,
    all_homomorphisms,
    cyclic,
    double_cosets,
    induced_inclusion,
    induced_object,
    is_cocartesian,
    orbit_stabilizer,
    quotient_by_kernel,
    symmetric,
    trivial_group,
    validate_group,
)

CATALOG = group_catalog(24)
SMALL = {k: G for k, G in CATALOG.items() if G.order <= 8}


def marks(X: RightGSet) -> tuple[int, ...]:
    """Fixed-point counts of every subgroup: equal marks iff isomorphic G-sets."""
    G = X.group
    return tuple(sum(all(X(x, s) == x for s in S) for x in range(X.size)) for S in sorted(G.subgroups(), key=sorted))


def s3_elements():
    S3 = symmetric(3)
    t = S3.index_of((1, 0, 2))
    c = S3.index_of((1, 2, 0))
    return S3, t, c


# validate_group


def test_z2_table_is_valid():
    G = validate_group([[0, 1], [1, 0]])
    assert G.order == 2 and G.identity == 0


def test_repeated_row_entry_is_not_latin():
    with pytest.raises(NotLatinSquare, match="not a Latin square"):
        validate_group([[0, 0], [1, 0]])


def test_s3_from_permutations():
    S3 = FiniteGroup.from_cycles([[[0, 1]], [[0, 1, 2]]])
    assert validate_group(S3.table).order == 6


def test_latin_square_without_identity():
    with pytest.raises(MissingIdentity):
        validate_group([[0, 2, 1], [2, 1, 0], [1, 0, 2]])
    with pytest.raises(MissingIdentity):
        validate_group([])


def test_loop_is_not_associative():
    # Latin square with identity 0, yet 1*1 = 0 is impossible in a group of order 5
    loop = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAssociative):
        validate_group(loop)


def test_out_of_range_entries():
    with pytest.raises(NotLatinSquare):
        validate_group([[0, 1], [1, 2]])
    with pytest.raises(NotLatinSquare):
        validate_group([[0, 1], [1]])


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_groups_satisfy_the_axioms(name):
    G = CATALOG[name]
    assert validate_group(G.table).order == G.order


# induced objects


def test_induction_along_identity():
    G = cyclic(4)
    X = RightGSet.regular(G)
    Y = induced_object(GroupHom.identity(G), X)
    assert marks(Y) == marks(X)


def test_induction_from_c2_into_s3_gives_the_coset_space():
    S3, t, _ = s3_elements()
    C2, inc = S3.subgroup_group(S3.generated([t]))
    Y = induced_object(inc, RightGSet.trivial(C2, 1))
    assert Y.size == 3
    assert marks(Y) == marks(RightGSet.cosets(S3, inc.image()))


def test_induction_from_trivial_into_c3_is_regular():
    C3 = cyclic(3)
    Y = induced_object(GroupHom(trivial_group(), C3, [0]), RightGSet.trivial(trivial_group(), 1))
    assert Y.size == 3 and Y.is_transitive() and Y.is_free()


def test_induction_needs_an_injection():
    with pytest.raises(ValueError):
        induced_object(GroupHom.trivial(cyclic(2), trivial_group()), RightGSet.trivial(cyclic(2), 1))


@pytest.mark.parametrize("hname", ["S3", "D4", "A4"])
def test_induced_object_properties(hname):
    H = CATALOG[hname]
    rng = random.Random(hname)
    for S in H.subgroups():
        G, inc = H.subgroup_group(S)
        X = random_right_gset(rng, G, 3)
        Y = induced_object(inc, X)
        assert Y.size == X.size * (H.order // len(S))
        # the inclusion is inc-equivariant, hence X is a summand of the restriction
        j = induced_inclusion(inc, X)
        assert len(set(j.f)) == X.size
        R = Y.restrict(inc)
        image = set(j.f)
        assert all(R(y, g) in image for y in image for g in G)
        # independence of the transversal
        reps = [rng.choice(sorted(H.mul(a, r) for a in S)) for r in H.right_coset_reps(S)]
        assert marks(induced_object(inc, X, reps)) == marks(Y)


# quotients and cocartesian arrows


def test_trivial_kernel_quotient():
    X = RightGSet.regular(cyclic(4))
    Y, p = quotient_by_kernel(GroupHom.identity(cyclic(4)), X)
    assert Y.size == 4 and marks(Y) == marks(X)


def test_regular_c4_modulo_c2():
    C4 = cyclic(4)
    C2, a = quotient_group(C4, C4.generated([2]))
    Y, _ = quotient_by_kernel(a, RightGSet.regular(C4))
    assert Y.size == 2 and marks(Y) == marks(RightGSet.regular(C2))


def test_full_collapse():
    C2 = cyclic(2)
    Y, _ = quotient_by_kernel(GroupHom.trivial(C2, trivial_group()), RightGSet.regular(C2))
    assert Y.size == 1


def test_quotient_needs_a_surjection():
    with pytest.raises(ValueError):
        quotient_by_kernel(GroupHom(trivial_group(), cyclic(2), [0]), RightGSet.trivial(trivial_group(), 1))


def test_identity_is_cocartesian():
    X = RightGSet.regular(cyclic(3))
    assert is_cocartesian(EquivariantMap.identity(X))


def test_inclusion_into_transitively_indexed_union_is_cocartesian():
    S3, t, _ = s3_elements()
    C2, inc = S3.subgroup_group(S3.generated([t]))
    assert is_cocartesian(induced_inclusion(inc, RightGSet.trivial(C2, 1)))


def test_point_into_two_points_is_not_cocartesian():
    T = trivial_group()
    f = EquivariantMap(RightGSet.trivial(T, 1), RightGSet.trivial(T, 2), GroupHom.identity(T), [0])
    res = is_cocartesian(f)
    assert not res and res.witness is not None


@pytest.mark.parametrize("name", sorted(SMALL))
def test_quotients_are_cocartesian(name):
    G = SMALL[name]
    rng = random.Random(name)
    for N in G.subgroups():
        if not G.is_normal(N):
            continue
        Q, a = quotient_group(G, N)
        X = random_right_gset(rng, G, 4)
        _, p = quotient_by_kernel(a, X)
        assert is_cocartesian(p, bound=6)


# double cosets and orbits


def test_double_cosets_examples():
    S3, t, c = s3_elements()
    A, B = S3.generated([c]), S3.generated([t])
    assert [d.size for d in double_cosets(S3, frozenset(S3), frozenset(S3))] == [6]
    assert [d.size for d in double_cosets(S3, A, B)] == [6]
    assert sorted(d.size for d in double_cosets(S3, B, B)) == [2, 4]


def test_double_cosets_reject_non_subgroups():
    S3, t, c = s3_elements()
    with pytest.raises(ValueError):
        double_cosets(S3, frozenset({0, t, c}), frozenset({0}))


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_double_coset_sizes_sum_to_the_order(name):
    H = CATALOG[name]
    subs = H.subgroups()
    for A, B in itertools.product(subs, repeat=2):
        cls = double_cosets(H, A, B)
        assert sum(d.size for d in cls) == H.order
        assert all(d.rep == min(d.elements) for d in cls)


def test_orbit_stabilizer_examples():
    G = cyclic(3)
    orb, stab = orbit_stabilizer(RightGSet.trivial(G, 2), 1)
    assert orb == (1,) and stab == frozenset(G)
    orb, stab = orbit_stabilizer(RightGSet.regular(G), 0)
    assert len(orb) == 3 and stab == {0}
    S3, t, _ = s3_elements()
    C = S3.generated([t])
    orb, stab = orbit_stabilizer(RightGSet.cosets(S3, C), 0)
    assert len(orb) == 3
    assert any(S3.conjugate_subgroup(C, g) == stab for g in S3)
    with pytest.raises(IndexError):
        orbit_stabilizer(RightGSet.regular(G), 5)


@given(st.sampled_from(sorted(SMALL)), st.integers(0, 10**6))
def test_orbit_stabilizer_count(name, seed):
    G = SMALL[name]
    X = random_right_gset(random.Random(seed), G, 5)
    for x in range(X.size):
        orb, stab = orbit_stabilizer(X, x)
        assert len(orb) * len(stab) == G.order
        assert G.is_subgroup(stab)


# homomorphisms


@given(st.sampled_from(sorted(SMALL)), st.sampled_from(sorted(SMALL)))
def test_all_homomorphisms_are_homomorphisms(a, b):
    G, H = SMALL[a], SMALL[b]
    homs = all_homomorphisms(G, H)
    assert any(all(h(g) == H.identity for g in G) for h in homs)
    for h in homs:
        GroupHom(G, H, h.images)  # validating constructor
        assert len(h.kernel()) * len(h.image()) == G.order
