"""Seeded generators: groups, Galois G-sets, representations, sheaves, morphisms, systems.

Everything takes an explicit ``random.Random`` so suites are reproducible from
a single seed.
"""

from __future__ import annotations

import itertools
import random
from math import gcd
from typing import Callable

from .arith import (
    BaseField,
    GaloisGSet,
    InertiaData,
    Morphism,
    WeilLevelGroup,
    galois_fold,
    galois_induce,
    galois_quotient,
    galois_restrict,
    galois_subset,
    galois_to_point,
)
from .cyclotomic import CycloElem, CycloMatrix, FieldAut, totient
from .groups import (
    FiniteGroup,
    GroupHom,
    RightGSet,
    alternating,
    cyclic,
    dihedral,
    direct_product,
    linear_characters,
    quaternion,
    semidirect_cyclic,
    symmetric,
    trivial_group,
)
from .reps import WeilRep, conjugate, direct_sum
from .sheaves import EquivariantSheaf, VirtualClass


def group_catalog(max_order: int = 12) -> dict[str, FiniteGroup]:
    table: dict[str, Callable[[], FiniteGroup]] = {
        "C1": trivial_group,
        "C2": lambda: cyclic(2),
        "C3": lambda: cyclic(3),
        "C4": lambda: cyclic(4),
        "V4": lambda: direct_product(cyclic(2), cyclic(2)),
        "C5": lambda: cyclic(5),
        "C6": lambda: cyclic(6),
        "S3": lambda: symmetric(3),
        "C8": lambda: cyclic(8),
        "D4": lambda: dihedral(4),
        "Q8": quaternion,
        "C2xC4": lambda: direct_product(cyclic(2), cyclic(4)),
        "C12": lambda: cyclic(12),
        "A4": lambda: alternating(4),
        "D6": lambda: dihedral(6),
        "S4": lambda: symmetric(4),
    }
    out = {}
    for name, make in table.items():
        G = make()
        if G.order <= max_order:
            G.name = G.name or name
            out[name] = G
    return out


def quotient_group(G: FiniteGroup, N: frozenset[int]) -> tuple[FiniteGroup, GroupHom]:
    cosets = {}
    for g in G:
        cosets.setdefault(frozenset(G.mul(g, n) for n in N), None)
    elems = list(cosets)
    ident = frozenset(N)

    def mul(a, b):
        x, y = min(a), min(b)
        return next(c for c in elems if G.mul(x, y) in c)

    Q = FiniteGroup.from_elements(elems, mul, ident)
    images = [next(i for i, c in enumerate(Q.labels) if g in c) for g in G]
    return Q, GroupHom(G, Q, images)


# field elements and matrices


def random_elem(rng: random.Random, N: int, spread: int = 2, nonzero: bool = False) -> CycloElem:
    while True:
        phi = totient(N)
        c = [rng.randint(-spread, spread) for _ in range(phi)]
        if rng.random() < 0.3:
            c = [0] * phi
            c[rng.randrange(phi)] = rng.choice([1, -1, 2])
        x = CycloElem(N, c)
        if rng.random() < 0.2:
            x = x / rng.choice([2, 3])
        if not nonzero or not x.is_zero():
            return x


def random_unit(rng: random.Random, N: int) -> CycloElem:
    """A nonzero Frobenius scalar: roots of unity, small rationals and general elements."""
    r = rng.random()
    if r < 0.35:
        return CycloElem.zeta(N, rng.randrange(N)) * rng.choice([1, -1])
    if r < 0.6:
        return CycloElem.rational(N, rng.choice([2, 3, -2, 4]) ** rng.choice([1, -1]))
    return random_elem(rng, N, nonzero=True)


def random_invertible(rng: random.Random, N: int, d: int) -> CycloMatrix:
    while True:
        rows = [[random_elem(rng, N, 1) for _ in range(d)] for _ in range(d)]
        for i in range(d):
            rows[i][i] = rows[i][i] + 1
        M = CycloMatrix(N, rows)
        if M.is_invertible():
            return M


def random_sigmas(rng: random.Random, N: int, n: int) -> list[FieldAut]:
    units = [k for k in range(1, max(N, 2)) if gcd(k, N) == 1] or [1]
    return [FieldAut(N, 1)] + [FieldAut(N, rng.choice(units)) for _ in range(n - 1)]


# representations


def _perm_matrix(N: int, perm) -> CycloMatrix:
    n = len(perm)
    rows = [[0] * n for _ in range(n)]
    for i, p in enumerate(perm):
        rows[p][i] = 1
    return CycloMatrix(N, rows)


_PIECES: dict = {}


def _finite_pieces(G: FiniteGroup, N: int, max_rank: int) -> list[list[CycloMatrix]]:
    """Representations of a finite group of rank at most max_rank: characters and coset permutations."""
    key = (G.table, G.identity, N, max_rank)
    if key not in _PIECES:
        _PIECES[key] = _build_pieces(G, N, max_rank)
    return _PIECES[key]


def _build_pieces(G: FiniteGroup, N: int, max_rank: int) -> list[list[CycloMatrix]]:
    chars = linear_characters(G, N)
    pieces = [[CycloMatrix(N, [[CycloElem.zeta(N, c[g])]]) for g in G] for c in chars]
    for S in G.subgroups():
        idx = G.order // len(S)
        if 1 < idx <= max_rank:
            X = RightGSet.cosets(G, S)
            # x.g is a right action; act by the inverse to get a left module
            mats = [_perm_matrix(N, [X(x, G.inv(g)) for x in range(X.size)]) for g in G]
            pieces.append(mats)
    return pieces


def random_finite_rep(rng: random.Random, G: FiniteGroup, N: int, max_rank: int = 3) -> list[CycloMatrix]:
    W = WeilLevelGroup(G, list(G), 1, check=False)
    return list(random_weil_rep(rng, W, N, max_rank, frob_scalars=False).rho)


def random_weil_rep(
    rng: random.Random,
    W: WeilLevelGroup,
    N: int,
    max_rank: int = 3,
    semisimple: bool = True,
    frob_scalars: bool = True,
    min_rank: int = 1,
) -> WeilRep:
    """Restriction of representations of K x| C_r, Frobenius scaled by commuting scalars, then conjugated."""
    K = W.kernel
    r = W.theta_order()
    Gam = semidirect_cyclic(K, W.theta, r)
    pieces = _finite_pieces(Gam, N, max_rank)
    kidx = [Gam.index_of((k, 0)) for k in K]
    fidx = Gam.index_of((K.identity, 1 % r))
    target = rng.randint(min_rank, max_rank)
    parts = []
    rank = 0
    while rank < target:
        fit = [p for p in pieces if p[0].nrows <= target - rank]
        if not fit:
            break
        p = rng.choice(fit)
        c = random_unit(rng, N) if frob_scalars else CycloElem.one(N)
        rho = [p[i] for i in kidx]
        d = p[0].nrows
        frob = p[fidx].scale(c)
        if not semisimple and frob_scalars and rank + 2 * d <= target and rng.random() < 0.5:
            J = CycloMatrix(N, [[c, 1], [0, c]])
            I2 = CycloMatrix.identity(N, 2)
            rho = [m.kron(I2) for m in rho]
            frob = p[fidx].kron(J)
            d *= 2
        parts.append(WeilRep(W, N, rho, frob, check=False))
        rank += d
    rep = direct_sum(parts, W, N)
    if rep.dim and rng.random() < 0.7:
        rep = conjugate(rep, random_invertible(rng, N, rep.dim))
    return rep


# Galois G-sets


def galois_automorphisms(X: RightGSet) -> list[tuple[int, ...]]:
    """All permutations of the points commuting with the group action."""
    G = X.group
    orbits = X.orbits()
    stab = [X.stabilizer(x) for x in range(X.size)]
    choices = []
    for orb in orbits:
        b = orb[0]
        choices.append([y for y in range(X.size) if stab[y] == stab[b]])
    out = []
    for pick in itertools.product(*choices):
        img = [None] * X.size
        for orb, y in zip(orbits, pick):
            b = orb[0]
            for g in G:
                img[X(b, g)] = X(y, g)
        if sorted(img) == list(range(X.size)):
            out.append(tuple(img))
    return out


def _compose(a, b):
    """a after b."""
    return tuple(a[b[x]] for x in range(len(b)))


def random_right_gset(rng: random.Random, G: FiniteGroup, max_points: int) -> RightGSet:
    subs = [S for S in G.subgroups() if G.order // len(S) <= max_points]
    parts, size = [], 0
    while True:
        fit = [S for S in subs if G.order // len(S) <= max_points - size]
        if not fit or (parts and rng.random() < 0.35):
            break
        S = rng.choice(fit)
        parts.append(RightGSet.cosets(G, S))
        size += parts[-1].size
    return RightGSet.disjoint_union(parts)


def random_galois_gset(
    rng: random.Random,
    G: FiniteGroup,
    max_points: int = 4,
    local: bool = False,
    p: int | None = None,
    inertia_order: int | None = None,
) -> GaloisGSet:
    X = random_right_gset(rng, G, max_points)
    auts = galois_automorphisms(X)
    phi = rng.choice(auts)
    base = BaseField(p or rng.choice([2, 3, 5]), rng.choice([1, 1, 2]), "local" if local else "finite")
    if not local:
        return GaloisGSet(X, phi, base)
    n = inertia_order or rng.choice([2, 3])
    Q = cyclic(n)
    units = [u for u in range(1, n) if gcd(u, n) == 1] or [1] if n > 1 else [0]
    candidates = []
    for c in auts:
        powers = [tuple(range(X.size))]
        for _ in range(n - 1):
            powers.append(_compose(c, powers[-1]))
        if _compose(c, powers[-1]) != powers[0]:
            continue
        conj = _compose(_compose(phi, c), tuple(sorted(range(X.size), key=lambda x: phi[x])))
        for u in units:
            if conj == powers[u % n]:
                candidates.append((powers, u))
    powers, u = rng.choice(candidates) if candidates and rng.random() < 0.8 else ([tuple(range(X.size))] * n, rng.choice(units))
    action = [[powers[q][x] for q in range(n)] for x in range(X.size)]
    twist = [(u * q) % n for q in range(n)] if n > 1 else [0]
    return GaloisGSet(X, phi, base, InertiaData(Q, action, twist))


def random_sheaf(rng: random.Random, X: GaloisGSet, N: int, max_rank: int = 2, semisimple: bool = True, allow_zero: bool = True) -> EquivariantSheaf:
    stalks = []
    for P in X.points():
        if allow_zero and rng.random() < 0.15:
            from .reps import zero_rep

            stalks.append(zero_rep(P.group, N))
        else:
            stalks.append(random_weil_rep(rng, P.group, N, max_rank, semisimple))
    return EquivariantSheaf(X, N, stalks, check=False)


def random_class(rng: random.Random, X: GaloisGSet, N: int, max_rank: int = 2, semisimple: bool = True) -> VirtualClass:
    plus = [random_sheaf(rng, X, N, max_rank, semisimple) for _ in range(rng.choice([1, 1, 2]))]
    minus = [random_sheaf(rng, X, N, max_rank, semisimple) for _ in range(rng.choice([0, 0, 1]))]
    return VirtualClass(X, N, plus, minus)


# morphisms


def morphism_zoo(X: GaloisGSet) -> dict[str, Morphism]:
    """Morphisms out of X (and one into it) through every construction."""
    G = X.group
    out: dict[str, Morphism] = {"identity": Morphism.identity(X)}
    out["to_point"] = galois_to_point(X)[1]
    out["to_bare_point"] = galois_to_point(X, GroupHom.trivial(G, trivial_group()))[1]
    for i, N in enumerate(sorted((S for S in G.subgroups() if G.is_normal(S) and 1 < len(S) < G.order), key=sorted)):
        Qg, a = quotient_group(G, N)
        out[f"quotient_{i}"] = galois_quotient(X, a)[1]
        if i >= 1:
            break
    if G.order > 1:
        Qg, a = quotient_group(G, frozenset(G))
        out["quotient_all"] = galois_quotient(X, a)[1]
    pts = X.points()
    if len(pts) > 1:
        out["inclusion"] = galois_subset(X, pts[0].geometric_points)[1]
    out["fold"] = galois_fold(X)[1]
    subs = sorted((S for S in G.subgroups() if 1 < len(S) < G.order), key=len)
    if subs:
        S = subs[0]
        Sg, inc = G.subgroup_group(S)
        out["restrict"] = galois_restrict(X, inc)[1]
    return out


def induction_morphism(X: GaloisGSet, alpha: GroupHom) -> Morphism:
    return galois_induce(alpha, X)[1]


# the fixed test corpus


def _plain(G: FiniteGroup, act, frob, base: BaseField, inertia: InertiaData | None = None) -> GaloisGSet:
    return GaloisGSet(RightGSet(G, act), frob, base, inertia)


def gset_catalog(seed: int = 0) -> dict[str, GaloisGSet]:
    """Hand-built small cases followed by seeded random ones over every group of order <= 8."""
    F, Loc = BaseField(5), BaseField(7, kind="local")
    C2, C3, S3 = cyclic(2), cyclic(3), symmetric(3)
    one = trivial_group()
    t = S3.index_of((1, 0, 2))
    out = {
        "point": _plain(one, [[0]], [0], F),
        "frob_swap": _plain(one, [[0], [1]], [1, 0], F),
        "frob_cycle": _plain(one, [[0], [1], [2]], [1, 2, 0], F),
        "c2_fixed": _plain(C2, [[0, 0]], [0], F),
        "c2_torsor": _plain(C2, [[0, 1], [1, 0]], [0, 1], F),
        "double_swap": _plain(C2, [[0, 1], [1, 0]], [1, 0], F),
        "s3_cosets": GaloisGSet(RightGSet.cosets(S3, S3.generated([t])), [0, 1, 2], F),
        "ramified_c2": _plain(one, [[0]], [0], Loc, InertiaData(C2, [[0, 0]], [0, 1])),
        "ramified_c3_orbit": _plain(one, [[0], [1], [2]], [0, 1, 2], Loc, InertiaData(C3, [[(x + a) % 3 for a in C3] for x in range(3)], [0, 1, 2])),
    }
    rng = random.Random(seed)
    for name, G in group_catalog(8).items():
        out[f"random_{name}"] = random_galois_gset(rng, G, 4)
        out[f"local_{name}"] = random_galois_gset(rng, G, 4, local=True)
    return out


CATALOG_CONDUCTORS = (1, 3, 4, 5, 8, 12)


def sheaf_catalog(seed: int = 0, gsets: dict[str, GaloisGSet] | None = None) -> dict[str, EquivariantSheaf]:
    """One semisimple and one non-semisimple sheaf per catalog G-set, conductors cycling through CATALOG_CONDUCTORS."""
    gsets = gset_catalog(seed) if gsets is None else gsets
    rng = random.Random(seed + 1)
    out = {}
    for i, (name, X) in enumerate(gsets.items()):
        N = CATALOG_CONDUCTORS[i % len(CATALOG_CONDUCTORS)]
        out[f"{name}/semisimple"] = random_sheaf(rng, X, N, 3, semisimple=True)
        out[f"{name}/jordan"] = random_sheaf(rng, X, N, 3, semisimple=False)
    return out


def morphism_catalog(gsets: dict[str, GaloisGSet]) -> dict[str, Morphism]:
    return {f"{g}/{m}": f for g, X in gsets.items() for m, f in morphism_zoo(X).items()}
