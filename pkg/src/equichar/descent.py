"""Untwisting g-twisted Frobenius traces into plain Frobenius traces.

For X with G-action, an integer m >= 1 and g in G of order n, the torsor
T = X x Z/n carries the free action c.(x, i) = (x.g, i+1) and Frobenius
(x, i) -> (Phi^m x, i+1).  Its quotient is identified with X itself through
(x, i) -> x.g^-i, where the induced Frobenius becomes x -> Phi^m(x).g^-1 and
the group is trivial.  A sheaf L on (X, G) is pulled back to T along
(x, i) -> x (a degree-m map over c -> g) and pushed down to the quotient.

The trace of Frobenius^j on the result at z equals the trace of
(g^j, F^(m j)) on L at z.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arith import GaloisGSet, InertiaData, Morphism, NotInGroup
from .cyclotomic import CycloElem
from .groups import GroupHom, RightGSet, cyclic, trivial_group
from .sheaves import EquivariantSheaf, VirtualClass, adjunction_check, pullback, pushforward


@dataclass
class DescentDatum:
    source: GaloisGSet
    m: int
    g: int
    order: int
    torsor: GaloisGSet
    target: GaloisGSet
    d: Morphism
    e: Morphism

    def torsor_point(self, x: int, i: int) -> int:
        return x * self.order + (i % self.order)

    def is_free(self) -> bool:
        T = self.torsor
        return all(T.g_action(p, c) != p for p in range(T.size) for c in T.group if c != T.group.identity)


def build_descent(X: GaloisGSet, m: int, g: int) -> DescentDatum:
    if m < 1:
        raise ValueError("m must be positive")
    G = X.group
    n = G.element_order(g)
    C = cyclic(n)
    gpow = [G.pow(g, i) for i in range(n)]
    phi_m = X.phi_pow(m)
    size = X.size * n
    # c^a . (x, i) = (x.g^a, i + a), with c^a the element a of the cyclic group
    act = [[X.g_action(p // n, gpow[a]) * n + (p % n + a) % n for a in C] for p in range(size)]
    frob = [phi_m[p // n] * n + (p % n + 1) % n for p in range(size)]
    base = X.base.extend(m)
    tau_m = tuple(X.tau_pow(m, q) for q in X.Q)
    tors_inertia = targ_inertia = None
    if X.inertia is not None:
        tors_inertia = InertiaData(X.Q, [[X.iota(q, p // n) * n + p % n for q in X.Q] for p in range(size)], tau_m)
        targ_inertia = InertiaData(X.Q, [[X.iota(q, z) for q in X.Q] for z in range(X.size)], tau_m)
    torsor = GaloisGSet(RightGSet(C, act, check=False), frob, base, tors_inertia, check=False)
    ginv = G.inv(g)
    T1 = trivial_group()
    target_frob = [X.g_action(phi_m[z], ginv) for z in range(X.size)]
    target = GaloisGSet(RightGSet.trivial(T1, X.size), target_frob, base, targ_inertia, check=False)
    alpha_d = GroupHom(C, G, gpow, check=False)
    d = Morphism(torsor, X, [p // n for p in range(size)], alpha_d, degree=m, check=False)
    e_map = [X.g_action(p // n, G.inv(gpow[p % n])) for p in range(size)]
    e = Morphism(torsor, target, e_map, GroupHom.trivial(C, T1), check=False)
    return DescentDatum(X, m, g, n, torsor, target, d, e)


def untwist(D: DescentDatum, L: EquivariantSheaf) -> EquivariantSheaf:
    return pushforward(D.e, pullback(D.d, L))


def untwist_class(D: DescentDatum, V: VirtualClass) -> VirtualClass:
    return V.map(lambda s: untwist(D, s), base=D.target)


def descent_equivalence(D: DescentDatum, L: EquivariantSheaf):
    """Adjunction report for the torsor quotient on the pulled-back sheaf."""
    M = pullback(D.d, L)
    return adjunction_check(D.e, untwist(D, L), M)


def scholie_check(D: DescentDatum, L: EquivariantSheaf, j: int, z: int | None = None, q: int | None = None, U: EquivariantSheaf | None = None) -> tuple[CycloElem, CycloElem]:
    """Tr((g^j, q, F^(m j)), L_z) against Tr((q, F^j), (untwisted L)_z).

    z defaults to the first point fixed by q F^j on the target.
    """
    X, Z = D.source, D.target
    if q is None:
        q = X.Q.identity
    if z is None:
        fixed = [y for y in range(Z.size) if Z.in_stabilizer(y, (0, q, j))]
        if not fixed:
            raise NotInGroup(f"no point is fixed by Frobenius power {j}")
        z = fixed[0]
    if not Z.in_stabilizer(z, (0, q, j)):
        raise NotInGroup(f"Frobenius power {j} does not fix point {z}")
    G = X.group
    lhs = L.trace_at(z, (G.pow(D.g, j % D.order), q, D.m * j))
    if U is None:
        U = untwist(D, L)
    rhs = U.trace_at(z, (0, q, j))
    return lhs, rhs


def scholie_table(D: DescentDatum, L: EquivariantSheaf, window: Sequence[int]) -> list[tuple[int, int, int, CycloElem, CycloElem]]:
    """(z, q, j, lhs, rhs) for every target point and every q F^j fixing it."""
    U = untwist(D, L)
    Z = D.target
    rows = []
    for j in window:
        for z in range(Z.size):
            for q in Z.Q:
                if Z.in_stabilizer(z, (0, q, j)):
                    lhs, rhs = scholie_check(D, L, j, z, q, U)
                    rows.append((z, q, j, lhs, rhs))
    return rows


@dataclass
class DescentVerdict:
    compatible: bool
    witness: tuple | None
    pairs_checked: int


def descent_range(system) -> range:
    """Extension degrees whose untwisted traces cover a certifying window at every point."""
    X = system.base
    D = max((system.max_total_rank(P.index) for P in X.points()), default=0)
    n0 = max((P.group.frob_step for P in X.points()), default=1)
    return range(1, 2 * max(D, 1) * n0 + 1)


def descent_criterion(system) -> DescentVerdict:
    """Compatibility decided through the untwisted families C_{m,g} for all g and the certified m."""
    from .compat import CompatSystem, check_compatibility

    X = system.base
    checked = 0
    for m in descent_range(system):
        for g in X.group:
            D = build_descent(X, m, g)
            S = CompatSystem(system.sigmas, [untwist_class(D, V) for V in system.objects])
            v = check_compatibility(S)
            checked += 1
            if not v.compatible:
                return DescentVerdict(False, (m, g, v.witness), checked)
    return DescentVerdict(True, None, checked)
