"""Equivariant sheaves on finite Galois G-sets and their operations.

A sheaf is one :class:`~equichar.reps.WeilRep` per closed point, attached to
the stabilizer of the basepoint.  The stalk at any other geometric point
y = xbar.t is transported along the recorded transporter t, which doubles as
the gluing data: the comparison L_y -> L_{y.g} is rho(t_y g t_{y.g}^-1).

At dimension zero every functor is exact, pushforward and proper
pushforward coincide, f^! = f^* and internal Hom is dual tensor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import reps as R
from .arith import (
    GaloisGSet,
    InertiaData,
    Morphism,
    NotInGroup,
    WeilHom,
    WeilLevelGroup,
    point_hom,
)
from .cyclotomic import CycloElem, CycloMatrix, FieldAut
from .groups import FiniteGroup, GroupHom, RightGSet, double_cosets
from .reps import WeilRep


class SheafError(ValueError):
    pass


class EquivariantSheaf:
    def __init__(self, base: GaloisGSet, conductor: int, stalks: Sequence[WeilRep], check: bool = True):
        self.base = base
        self.conductor = conductor
        self.stalks = tuple(stalks)
        points = base.points()
        if len(self.stalks) != len(points):
            raise SheafError(f"{len(self.stalks)} stalks for {len(points)} closed points")
        for P, s in zip(points, self.stalks):
            if s.group is not P.group:
                raise SheafError(f"stalk {P.index} is not a representation of the stabilizer of point {P.basepoint}")
            if s.conductor != conductor:
                raise SheafError(f"stalk {P.index} has conductor {s.conductor}, expected {conductor}")
            if check:
                s.validate()

    def __repr__(self):
        return f"EquivariantSheaf(ranks={self.ranks()}, N={self.conductor})"

    @classmethod
    def from_matrices(cls, base: GaloisGSet, conductor: int, data: Sequence[tuple[Sequence[CycloMatrix], CycloMatrix]]) -> "EquivariantSheaf":
        stalks = [WeilRep(P.group, conductor, rho, frob) for P, (rho, frob) in zip(base.points(), data)]
        return cls(base, conductor, stalks, check=False)

    @classmethod
    def unit(cls, base: GaloisGSet, conductor: int) -> "EquivariantSheaf":
        return cls(base, conductor, [R.unit_rep(P.group, conductor) for P in base.points()], check=False)

    @classmethod
    def zero(cls, base: GaloisGSet, conductor: int) -> "EquivariantSheaf":
        return cls(base, conductor, [R.zero_rep(P.group, conductor) for P in base.points()], check=False)

    def rank(self, x: int) -> int:
        return self.stalks[x].dim

    def ranks(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.stalks)

    def trace(self, x: int, w: tuple[int, int]) -> CycloElem:
        return self.stalks[x].trace(w)

    def _local(self, y: int, u: tuple) -> tuple[int, tuple[int, int]]:
        X = self.base
        if not X.in_stabilizer(y, u):
            raise NotInGroup(f"{u} does not fix point {y}")
        x = X.closed_point_of(y)
        t = X.transporter(y)
        W = self.stalks[x].group
        return x, W.to_split(X.mul(X.mul(t, u), X.inv(t)))

    def value_at(self, y: int, u: tuple) -> CycloMatrix:
        """Action of a concrete stabilizer element u of the geometric point y."""
        x, w = self._local(y, u)
        return self.stalks[x].value(w)

    def trace_at(self, y: int, u: tuple) -> CycloElem:
        x, w = self._local(y, u)
        return self.stalks[x].trace(w)

    def gluing(self, g: int, y: int) -> tuple[int, int]:
        """The element of W(xbar) identifying L_y with L_{y.g}."""
        X = self.base
        yg = X.g_action(y, g)
        x = X.closed_point_of(y)
        c = X.mul(X.mul(X.transporter(y), (g, X.Q.identity, 0)), X.inv(X.transporter(yg)))
        return self.stalks[x].group.to_split(c)

    def gluing_matrix(self, g: int, y: int) -> CycloMatrix:
        return self.stalks[self.base.closed_point_of(y)].value(self.gluing(g, y))

    def transport_check(self, g: int, x: int, w: tuple[int, int]) -> tuple[CycloElem, CycloElem]:
        """Tr(w, L_xbar) against Tr(g^-1 w g, L_{xbar.g})."""
        X = self.base
        xbar = X.points()[x].basepoint
        W = self.stalks[x].group
        c = W.to_concrete(w)
        gg = (g, X.Q.identity, 0)
        moved = X.mul(X.mul(X.inv(gg), c), gg)
        return self.trace(x, w), self.trace_at(X.g_action(xbar, g), moved)


def _same_base(L: EquivariantSheaf, M: EquivariantSheaf):
    if L.base is not M.base:
        raise SheafError("sheaves live on different Galois G-sets")
    if L.conductor != M.conductor:
        raise SheafError(f"conductor mismatch: {L.conductor} vs {M.conductor}")


def _stalkwise(L: EquivariantSheaf, fn: Callable[[WeilRep], WeilRep]) -> EquivariantSheaf:
    return EquivariantSheaf(L.base, L.conductor, [fn(s) for s in L.stalks], check=False)


def direct_sum(L: EquivariantSheaf, M: EquivariantSheaf) -> EquivariantSheaf:
    _same_base(L, M)
    return EquivariantSheaf(L.base, L.conductor, [R.direct_sum([a, b]) for a, b in zip(L.stalks, M.stalks)], check=False)


def tensor(L: EquivariantSheaf, M: EquivariantSheaf) -> EquivariantSheaf:
    _same_base(L, M)
    return EquivariantSheaf(L.base, L.conductor, [R.tensor(a, b) for a, b in zip(L.stalks, M.stalks)], check=False)


def dual(L: EquivariantSheaf) -> EquivariantSheaf:
    return _stalkwise(L, R.dual)


def internal_hom(L: EquivariantSheaf, M: EquivariantSheaf) -> EquivariantSheaf:
    return tensor(dual(L), M)


def tate_twist(L: EquivariantSheaf, n: int) -> EquivariantSheaf:
    q = L.base.base.q
    return _stalkwise(L, lambda s: R.twist(s, n, q))


def apply_sigma(L: EquivariantSheaf, sigma: FieldAut) -> EquivariantSheaf:
    return _stalkwise(L, lambda s: R.apply_sigma(s, sigma))


def trace(L: EquivariantSheaf, x: int, w: tuple[int, int]) -> CycloElem:
    return L.trace(x, w)


# functoriality


def pullback(m: Morphism, L: EquivariantSheaf) -> EquivariantSheaf:
    if L.base is not m.target:
        raise SheafError("sheaf does not live on the target of the morphism")
    stalks = []
    for P in m.source.points():
        hom, _ = point_hom(m, P.index)
        y = m.target.closed_point_of(m.f[P.basepoint])
        stalks.append(R.restrict(L.stalks[y], hom))
    return EquivariantSheaf(m.source, L.conductor, stalks, check=False)


upper_shriek = pullback


@dataclass
class PushforwardParts:
    sheaf: EquivariantSheaf
    parts: list[list[tuple[int, WeilHom, R.Coinduced]]]


def _pushforward_parts(m: Morphism, L: EquivariantSheaf) -> PushforwardParts:
    if m.degree != 1:
        raise SheafError("pushforward needs a morphism over the same base field")
    if L.base is not m.source:
        raise SheafError("sheaf does not live on the source of the morphism")
    T = m.target
    parts: list[list] = [[] for _ in T.points()]
    for P in m.source.points():
        hom, _ = point_hom(m, P.index)
        y = T.closed_point_of(m.f[P.basepoint])
        parts[y].append((P.index, hom, R.Coinduced(L.stalks[P.index], hom)))
    stalks = [R.direct_sum([c.rep for _, _, c in part], Q.group, L.conductor) for part, Q in zip(parts, T.points())]
    return PushforwardParts(EquivariantSheaf(T, L.conductor, stalks, check=False), parts)


def pushforward(m: Morphism, L: EquivariantSheaf) -> EquivariantSheaf:
    return _pushforward_parts(m, L).sheaf


pushforward_shriek = pushforward


def extend_by_zero(j: Morphism, L: EquivariantSheaf) -> EquivariantSheaf:
    """Extension by zero along the inclusion of a G-stable (hence clopen) subset."""
    if len(set(j.f)) != len(j.f):
        raise SheafError("extension by zero needs an injective map of points")
    if not (j.alpha.is_injective() and j.alpha.is_surjective()):
        raise SheafError("extension by zero needs an isomorphism of groups")
    if j.degree != 1:
        raise SheafError("extension by zero needs a morphism over the same base field")
    return pushforward(j, L)


def _preimages(hom: WeilHom, w: tuple[int, int]) -> list[tuple[int, int]]:
    j1 = hom.gen_image[1]
    j, r = divmod(w[1], j1)
    if r:
        return []
    return [(k, j) for k in hom.source.kernel if hom((k, j)) == w]


def pushforward_stalk_trace(m: Morphism, L: EquivariantSheaf, y: int, h: tuple[int, int]) -> CycloElem:
    """Orbit-sum formula for the trace of h on the pushforward stalk at ybar."""
    T = m.target
    Wy = T.points()[y].group
    total = CycloElem.zero(L.conductor)
    for P in m.source.points():
        if T.closed_point_of(m.f[P.basepoint]) != y:
            continue
        hom, _ = point_hom(m, P.index)
        nker = sum(1 for k in hom.source.kernel if hom((k, 0)) == Wy.identity)
        chosen: list[tuple[int, int]] = []
        for r in range(hom.gen_image[1]):
            for k in Wy.kernel:
                s = (k, r)
                if all(not _preimages(hom, Wy.mul(Wy.inv(s0), s)) for s0 in chosen):
                    chosen.append(s)
        inner = CycloElem.zero(L.conductor)
        for s in chosen:
            for t in _preimages(hom, Wy.mul(Wy.mul(Wy.inv(s), h), s)):
                inner = inner + L.trace(P.index, t)
        total = total + inner * Fraction(1, nker)
    return total


# invariants


@dataclass
class InvCoinv:
    inv: WeilRep
    coinv: WeilRep
    canonical: CycloMatrix

    @property
    def is_isomorphism(self) -> bool:
        return self.canonical.is_invertible()


def invariants_coinvariants(hom: WeilHom, a: WeilRep) -> InvCoinv:
    """Kernel invariants and coinvariants of a representation, both as representations of the target of a surjection."""
    if not hom.is_surjective():
        raise SheafError("invariants and coinvariants along a non-surjective map")
    N = a.conductor
    ker = sorted(hom.kernel())
    B, Binv = R.invariant_basis(a, ker)
    # coinvariants: quotient by the span of (rho(n) - 1) v
    d = a.dim
    I = CycloMatrix.identity(N, d)
    if d and len(ker) > 1:
        S = CycloMatrix.from_blocks(N, [[a.rho[n] - I for n in ker]]).colspace()
    else:
        S = CycloMatrix.zeros(N, d, 0)
    extend = S
    comp = []
    for i in range(d):
        e = I.submatrix(range(d), [i])
        trial = CycloMatrix.from_blocks(N, [[extend, e]]) if extend.ncols else e
        if trial.rank() > extend.ncols:
            extend = trial
            comp.append(i)
    C = I.submatrix(range(d), comp) if comp else CycloMatrix.zeros(N, d, 0)
    full_inv = extend.inverse() if d else extend
    q = full_inv.submatrix(range(S.ncols, d), range(d)) if comp else CycloMatrix.zeros(N, 0, d)
    target = hom.target
    pre = {}
    for w in [(k, 0) for k in target.kernel] + [(target.kernel.identity, 1)]:
        p = _surjective_preimage(hom, w)
        pre[w] = a.value(p)
    K = target.kernel

    def build(left, right):
        if right.ncols == 0:
            return R.zero_rep(target, N)
        rho = [left @ pre[(k, 0)] @ right for k in K]
        return WeilRep(target, N, rho, left @ pre[(K.identity, 1)] @ right, check=False)

    inv = build(Binv, B)
    coinv = build(q, C)
    return InvCoinv(inv, coinv, q @ B)


def _surjective_preimage(hom: WeilHom, w: tuple[int, int]) -> tuple[int, int]:
    for j in range(-abs(w[1]) - 1, abs(w[1]) + 2):
        for k in hom.source.kernel:
            if hom((k, j)) == w:
                return (k, j)
    raise NotInGroup(f"{w} has no preimage")


def inertia_invariants(L: EquivariantSheaf) -> EquivariantSheaf:
    return _stalkwise(L, lambda s: R.invariants(s, s.group.inertia))


def inertia_quotient(X: GaloisGSet) -> tuple[GaloisGSet, Morphism]:
    """Points modulo inertia, with the induced group and Frobenius actions and inertia acting trivially."""
    if not X.is_local:
        raise SheafError("inertia quotient needs a local base")
    cached = getattr(X, "_inertia_quotient", None)
    if cached is not None:
        return cached
    orbit_of, orbits = {}, []
    for x in range(X.size):
        if x not in orbit_of:
            orb = sorted({X.iota(q, x) for q in X.Q})
            for y in orb:
                orbit_of[y] = len(orbits)
            orbits.append(orb)
    G = X.group
    act = [[orbit_of[X.g_action(o[0], g)] for g in G] for o in orbits]
    frob = [orbit_of[X.frobenius[o[0]]] for o in orbits]
    inertia = InertiaData(X.Q, [[i] * X.Q.order for i in range(len(orbits))], X._tau)
    Xs = GaloisGSet(RightGSet(G, act, check=False), frob, X.base, inertia, check=False)
    X._inertia_quotient = (Xs, Morphism(X, Xs, [orbit_of[x] for x in range(X.size)], GroupHom.identity(G), check=False))
    return X._inertia_quotient


def nearby_cycles_point(L: EquivariantSheaf) -> EquivariantSheaf:
    """Coinduce each stalk to the stabilizer of its inertia orbit; the result lives on the special-fiber model."""
    _, q = inertia_quotient(L.base)
    return pushforward(q, L)


# virtual classes


class VirtualClass:
    def __init__(self, base: GaloisGSet, conductor: int, plus: Iterable[EquivariantSheaf] = (), minus: Iterable[EquivariantSheaf] = ()):
        self.base = base
        self.conductor = conductor
        self.plus = tuple(plus)
        self.minus = tuple(minus)
        for s in self.plus + self.minus:
            if s.base is not base:
                raise SheafError("class terms live on different Galois G-sets")
            if s.conductor != conductor:
                raise SheafError(f"class term has conductor {s.conductor}, expected {conductor}")

    def __repr__(self):
        return f"VirtualClass(+{[s.ranks() for s in self.plus]}, -{[s.ranks() for s in self.minus]})"

    @classmethod
    def of(cls, L: EquivariantSheaf) -> "VirtualClass":
        return cls(L.base, L.conductor, [L])

    @classmethod
    def zero(cls, base: GaloisGSet, conductor: int) -> "VirtualClass":
        return cls(base, conductor)

    def _check(self, other: "VirtualClass"):
        if self.base is not other.base:
            raise SheafError("classes live on different Galois G-sets")
        if self.conductor != other.conductor:
            raise SheafError(f"conductor mismatch: {self.conductor} vs {other.conductor}")

    def __add__(self, other: "VirtualClass") -> "VirtualClass":
        self._check(other)
        return VirtualClass(self.base, self.conductor, self.plus + other.plus, self.minus + other.minus)

    def __sub__(self, other: "VirtualClass") -> "VirtualClass":
        self._check(other)
        return VirtualClass(self.base, self.conductor, self.plus + other.minus, self.minus + other.plus)

    def __neg__(self) -> "VirtualClass":
        return VirtualClass(self.base, self.conductor, self.minus, self.plus)

    def trace(self, x: int, w: tuple[int, int]) -> CycloElem:
        t = CycloElem.zero(self.conductor)
        for s in self.plus:
            t = t + s.trace(x, w)
        for s in self.minus:
            t = t - s.trace(x, w)
        return t

    def rank(self, x: int) -> int:
        return sum(s.rank(x) for s in self.plus) - sum(s.rank(x) for s in self.minus)

    def total_rank(self, x: int) -> int:
        return sum(s.rank(x) for s in self.plus + self.minus)

    def window(self, x: int) -> range:
        return R.character_window(self.total_rank(x))

    def map(self, fn: Callable[[EquivariantSheaf], EquivariantSheaf], base: GaloisGSet | None = None) -> "VirtualClass":
        """Apply an additive functor termwise."""
        plus = [fn(s) for s in self.plus]
        minus = [fn(s) for s in self.minus]
        if base is None:
            terms = plus + minus
            base = terms[0].base if terms else self.base
        return VirtualClass(base, self.conductor, plus, minus)

    def tensor(self, other: "VirtualClass") -> "VirtualClass":
        self._check(other)
        plus = [tensor(a, b) for a in self.plus for b in other.plus] + [tensor(a, b) for a in self.minus for b in other.minus]
        minus = [tensor(a, b) for a in self.plus for b in other.minus] + [tensor(a, b) for a in self.minus for b in other.plus]
        return VirtualClass(self.base, self.conductor, plus, minus)

    def trace_table(self, windows: dict[int, range] | None = None) -> dict[tuple[int, int, int], CycloElem]:
        out = {}
        for P in self.base.points():
            win = windows[P.index] if windows else self.window(P.index)
            for j in win:
                for k in P.group.kernel:
                    out[(P.index, k, j)] = self.trace(P.index, (k, j))
        return out


def class_mismatch(a: VirtualClass, b: VirtualClass) -> tuple | None:
    """First (point, k, j, Tr_a, Tr_b) where the characters differ, over a window certifying equality."""
    a._check(b)
    for P in a.base.points():
        win = R.character_window(max(a.total_rank(P.index), b.total_rank(P.index)))
        for j in win:
            for k in P.group.kernel:
                ta, tb = a.trace(P.index, (k, j)), b.trace(P.index, (k, j))
                if ta != tb:
                    return (P.index, k, j, ta, tb)
    return None


def classes_equal(a, b) -> bool:
    if isinstance(a, EquivariantSheaf):
        a = VirtualClass.of(a)
    if isinstance(b, EquivariantSheaf):
        b = VirtualClass.of(b)
    return class_mismatch(a, b) is None


def inertia_invariants_class(V: VirtualClass) -> VirtualClass:
    """[F] - [G]  ->  [F^I] - [F^I(-1)] - [G^I] + [G^I(-1)]."""
    if not V.base.is_local:
        raise SheafError("inertia invariants need a local base")
    fi = [inertia_invariants(s) for s in V.plus]
    gi = [inertia_invariants(s) for s in V.minus]
    plus = fi + [tate_twist(s, -1) for s in gi]
    minus = [tate_twist(s, -1) for s in fi] + gi
    return VirtualClass(V.base, V.conductor, plus, minus)


# Mackey decomposition


@dataclass
class FiberSquare:
    rep: int
    fiber: GaloisGSet
    to_base: Morphism
    to_source: Morphism


def fiber_product(f: Morphism, g: Morphism, r: int) -> FiberSquare:
    """Pairs (y', x) with g(y') = f(x).r, acted on by {(h', c) : r beta(h') r^-1 = alpha(c)}."""
    X, Y, Yp = f.source, f.target, g.source
    if g.target is not Y:
        raise SheafError("the two morphisms do not share a target")
    if f.degree != 1 or g.degree != 1:
        raise SheafError("fiber products are formed over a common base field")
    G, H, Hp = X.group, Y.group, Yp.group
    alpha, beta = f.alpha, g.alpha
    rinv = H.inv(r)
    labels = [(hp, c) for hp in Hp for c in G if alpha(c) == H.mul(H.mul(r, beta(hp)), rinv)]
    e = (Hp.identity, G.identity)
    Gr = FiniteGroup.from_elements(labels, lambda a, b: (Hp.mul(a[0], b[0]), G.mul(a[1], b[1])), e)
    pts = [(yp, x) for yp in range(Yp.size) for x in range(X.size) if g.f[yp] == Y.g_action(f.f[x], r)]
    idx = {p: i for i, p in enumerate(pts)}
    act = [[idx[(Yp.g_action(yp, hp), X.g_action(x, c))] for hp, c in Gr.labels] for yp, x in pts]
    frob = [idx[(Yp.frobenius[yp], X.frobenius[x])] for yp, x in pts]
    inertia = None
    if X.inertia is not None:
        inertia = InertiaData(X.Q, [[idx[(Yp.iota(q, yp), X.iota(q, x))] for q in X.Q] for yp, x in pts], X._tau)
    Xr = GaloisGSet(RightGSet(Gr, act, check=False), frob, X.base, inertia, check=False)
    to_base = Morphism(Xr, Yp, [yp for yp, _ in pts], GroupHom(Gr, Hp, [lab[0] for lab in Gr.labels], check=False), check=False)
    to_source = Morphism(Xr, X, [x for _, x in pts], GroupHom(Gr, G, [lab[1] for lab in Gr.labels], check=False), check=False)
    return FiberSquare(r, Xr, to_base, to_source)


@dataclass
class MackeyResult:
    lhs: EquivariantSheaf
    summands: list[tuple[FiberSquare, EquivariantSheaf]]

    def rhs(self) -> VirtualClass:
        base, N = self.lhs.base, self.lhs.conductor
        return VirtualClass(base, N, [s for _, s in self.summands])

    def mismatch(self) -> tuple | None:
        return class_mismatch(VirtualClass.of(self.lhs), self.rhs())

    def agrees(self) -> bool:
        return self.mismatch() is None


def mackey_decompose(f: Morphism, g: Morphism, L: EquivariantSheaf, reps: Sequence[int] | None = None) -> MackeyResult:
    """g^* f_! L against the sum over double cosets Im(alpha) r Im(beta) of the fiber-product pushforwards."""
    H = f.target.group
    cosets = double_cosets(H, f.alpha.image(), g.alpha.image())
    if reps is None:
        reps = [c.rep for c in cosets]
    elif len(reps) != len(cosets) or any(r not in c.elements for r, c in zip(reps, cosets)):
        raise SheafError("representatives do not match the double cosets")
    lhs = pullback(g, pushforward(f, L))
    summands = []
    for r in reps:
        sq = fiber_product(f, g, r)
        summands.append((sq, pushforward(sq.to_base, pullback(sq.to_source, L))))
    return MackeyResult(lhs, summands)


# adjunctions


@dataclass
class AdjunctionReport:
    is_quotient: bool
    is_free: bool
    unit_invertible: bool
    counit_invertible: bool
    unit_equivariant: bool
    counit_equivariant: bool
    unit_ranks: list[tuple[int, int, int]] = field(default_factory=list)
    counit_ranks: list[tuple[int, int, int]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def quotient_structure(m: Morphism) -> tuple[bool, bool, list[str]]:
    """Whether m identifies the target with the source modulo Ker alpha, and whether Ker alpha acts freely."""
    notes = []
    S, T = m.source, m.target
    ker = m.alpha.kernel()
    quotient = True
    if not m.alpha.is_surjective():
        quotient = False
        notes.append("group homomorphism is not surjective")
    if m.degree != 1:
        quotient = False
        notes.append("morphism changes the base field")
    if set(m.f) != set(range(T.size)):
        quotient = False
        notes.append("map of points is not surjective")
    for x in range(S.size):
        orbit = {S.g_action(x, n) for n in ker}
        fiber = {z for z in range(S.size) if m.f[z] == m.f[x]}
        if orbit != fiber:
            quotient = False
            notes.append(f"fiber through point {x} is not a kernel orbit")
            break
    free = all(S.g_action(x, n) != x for x in range(S.size) for n in ker if n != S.group.identity)
    if not free:
        notes.append("kernel has fixed points")
    return quotient, free, notes


def _generators(W: WeilLevelGroup) -> list[tuple[int, int]]:
    return [(k, 0) for k in W.kernel] + [(W.kernel.identity, 1)]


def adjunction_check(m: Morphism, K: EquivariantSheaf, L: EquivariantSheaf) -> AdjunctionReport:
    """Unit K -> f_* f^* K on the target and counit f^* f_* L -> L on the source, stalk by stalk."""
    quotient, free, notes = quotient_structure(m)
    N = K.conductor
    # unit
    fK = pullback(m, K)
    parts = _pushforward_parts(m, fK)
    unit_ok, unit_eq, unit_ranks = True, True, []
    for P, part in zip(m.target.points(), parts.parts):
        Ky = K.stalks[P.index]
        Wy = P.group
        blocks = []
        for _, _, co in part:
            for s in co.induced.transversal:
                if co.B.ncols:
                    blocks.append(co.Binv @ Ky.value(Wy.inv(s)))
        eta = CycloMatrix.from_blocks(N, [[b] for b in blocks]) if blocks else CycloMatrix.zeros(N, 0, Ky.dim)
        tgt = parts.sheaf.stalks[P.index]
        rk = eta.rank() if Ky.dim and eta.nrows else 0
        unit_ranks.append((rk, Ky.dim, tgt.dim))
        unit_ok &= rk == Ky.dim == tgt.dim
        if Ky.dim and tgt.dim:
            for w in _generators(Wy):
                if eta @ Ky.value(w) != tgt.value(w) @ eta:
                    unit_eq = False
    # counit
    push = _pushforward_parts(m, L)
    back = pullback(m, push.sheaf)
    counit_ok, counit_eq, counit_ranks = True, True, []
    for P in m.source.points():
        y = m.target.closed_point_of(m.f[P.basepoint])
        Lx = L.stalks[P.index]
        src = back.stalks[P.index]
        cols = []
        for xi, _, co in push.parts[y]:
            width = co.rep.dim
            if xi == P.index and width:
                first = co.B
                rest = CycloMatrix.zeros(N, Lx.dim, width - co.U.dim)
                cols.append(CycloMatrix.from_blocks(N, [[first, rest]]) if rest.ncols else first)
            elif width:
                cols.append(CycloMatrix.zeros(N, Lx.dim, width))
        eps = CycloMatrix.from_blocks(N, [cols]) if cols else CycloMatrix.zeros(N, Lx.dim, 0)
        rk = eps.rank() if Lx.dim and eps.ncols else 0
        counit_ranks.append((rk, src.dim, Lx.dim))
        counit_ok &= rk == Lx.dim == src.dim
        if Lx.dim and src.dim:
            for w in _generators(P.group):
                if eps @ src.value(w) != Lx.value(w) @ eps:
                    counit_eq = False
    return AdjunctionReport(quotient, free, unit_ok, counit_ok, unit_eq, counit_eq, unit_ranks, counit_ranks, notes)


# finite-group coinduction


def _finite_weil(G: FiniteGroup) -> WeilLevelGroup:
    return WeilLevelGroup(G, list(G), 1, check=False)


def coinduce_finite(alpha: GroupHom, rho: Sequence[CycloMatrix], conductor: int) -> list[CycloMatrix]:
    """alpha_* of a representation of a finite group, as matrices indexed by the target."""
    WG, WH = _finite_weil(alpha.source), _finite_weil(alpha.target)
    d = rho[0].nrows
    a = WeilRep(WG, conductor, rho, CycloMatrix.identity(conductor, d), check=False)
    hom = WeilHom(WG, WH, [alpha(g) for g in alpha.source], (alpha.target.identity, 1))
    return list(R.coinduce(a, hom).rho)


def coinduced_trace_check(alpha: GroupHom, rho: Sequence[CycloMatrix], g: int, conductor: int) -> tuple[CycloElem, CycloElem]:
    """#N Tr(g, alpha_* L) from the module against the double sum over cosets and preimages."""
    G, H = alpha.source, alpha.target
    n = len(alpha.kernel())
    lhs = coinduce_finite(alpha, rho, conductor)[g].trace() * n
    rhs = CycloElem.zero(conductor)
    for s in H.left_coset_reps(alpha.image()):
        target = H.mul(H.mul(H.inv(s), g), s)
        for t in G:
            if alpha(t) == target:
                rhs = rhs + rho[t].trace()
    return lhs, rhs
