"""Galois G-sets over finite and local fields and their arithmetic stabilizers.

A :class:`GaloisGSet` is a finite set of geometric points carrying a right
action of a finite group G and a left action of the finite-level Galois group
Q x| Z, where Q is a finite inertia quotient (trivial over a finite field) and
the generator of Z acts by the geometric Frobenius permutation.  The two
actions commute.

Combined elements are triples (g, q, m) in G x (Q x| Z); they act on the right
by  x.(g, q, m) = (iota_q Phi^m)^-1 (x.g),  so the stabilizer of a point xbar is
{(g, q, m) : xbar.g = iota_q Phi^m (xbar)}.  The stabilizer is presented in split
form K x|_theta Z with K its degree-zero part.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .groups import FiniteGroup, GroupHom, RightGSet, trivial_group


class NotInGroup(ValueError):
    """An element does not belong to the stabilizer it was evaluated in."""


@dataclass(frozen=True)
class BaseField:
    """Finite field F_{p^f}, or a local field with that residue field."""

    p: int
    f: int = 1
    kind: str = "finite"

    def __post_init__(self):
        if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p**0.5) + 1)):
            raise ValueError(f"p = {self.p} is not prime")
        if self.f < 1:
            raise ValueError("residue degree exponent must be positive")
        if self.kind not in ("finite", "local"):
            raise ValueError(f"unknown base kind {self.kind!r}")

    @property
    def q(self) -> int:
        return self.p**self.f

    def extend(self, m: int) -> "BaseField":
        """The unramified extension of degree m."""
        if m < 1:
            raise ValueError("extension degree must be positive")
        return BaseField(self.p, self.f * m, self.kind)


def _perm_pow_table(perm: tuple[int, ...]) -> list[tuple[int, ...]]:
    powers = [tuple(range(len(perm)))]
    while True:
        nxt = tuple(perm[x] for x in powers[-1])
        if nxt == powers[0]:
            return powers
        powers.append(nxt)


@dataclass(frozen=True)
class InertiaData:
    """A finite inertia quotient Q acting on points on the left.

    ``action[x][q]`` is iota_q(x); ``twist`` is tau with Phi iota_q Phi^-1 = iota_{tau(q)}.
    """

    group: FiniteGroup
    action: tuple
    twist: tuple


class GaloisGSet:
    """Finite-level model of a finite étale scheme with G-action over a finite or local field."""

    def __init__(
        self,
        g_action: RightGSet,
        frobenius: Sequence[int],
        base: BaseField,
        inertia: InertiaData | None = None,
        check: bool = True,
    ):
        self.g_action = g_action
        self.group = g_action.group
        self.size = g_action.size
        self.frobenius = tuple(frobenius)
        self.base = base
        self.inertia = inertia
        if inertia is None:
            Q = trivial_group()
            self.Q = Q
            self._iota = tuple((x,) for x in range(self.size))
            self._tau = (0,)
        else:
            self.Q = inertia.group
            self._iota = tuple(tuple(r) for r in inertia.action)
            self._tau = tuple(inertia.twist)
        if check:
            self.validate()
        self._phi_pows = _perm_pow_table(self.frobenius)
        self._tau_pows = _perm_pow_table(self._tau)
        self._points = None
        self._where = None

    def __repr__(self):
        return f"GaloisGSet({self.size} points, {self.group!r}, q={self.base.q}, {self.base.kind})"

    def validate(self):
        n, G, Q = self.size, self.group, self.Q
        if sorted(self.frobenius) != list(range(n)):
            raise ValueError("frobenius is not a permutation of the points")
        for x in range(n):
            for g in G:
                if self.frobenius[self.g_action(x, g)] != self.g_action(self.frobenius[x], g):
                    raise ValueError(f"frobenius does not commute with the group at point {x}, element {g}")
        if self.inertia is not None and self.base.kind != "local":
            raise ValueError("an inertia action needs a local base")
        iota, tau = self._iota, self._tau
        if len(iota) != n or any(len(r) != Q.order for r in iota):
            raise ValueError("inertia action table has the wrong shape")
        if sorted(tau) != list(range(Q.order)):
            raise ValueError("inertia twist is not a permutation")
        for a in Q:
            for b in Q:
                if tau[Q.mul(a, b)] != Q.mul(tau[a], tau[b]):
                    raise ValueError("inertia twist is not an automorphism")
        for x in range(n):
            if iota[x][Q.identity] != x:
                raise ValueError(f"inertia identity moves point {x}")
            for a in Q:
                for b in Q:
                    if iota[iota[x][b]][a] != iota[x][Q.mul(a, b)]:
                        raise ValueError(f"inertia is not a left action at point {x}")
                if self.frobenius[iota[x][a]] != iota[self.frobenius[x]][tau[a]]:
                    raise ValueError(f"frobenius does not normalize inertia at point {x}")
                for g in G:
                    if iota[self.g_action(x, g)][a] != self.g_action(iota[x][a], g):
                        raise ValueError(f"inertia does not commute with the group at point {x}")
        for a in Q:
            if len({iota[x][a] for x in range(n)}) != n:
                raise ValueError("inertia element does not act bijectively")

    @property
    def is_local(self) -> bool:
        return self.base.kind == "local"

    # Galois part

    def phi_pow(self, m: int) -> tuple[int, ...]:
        return self._phi_pows[m % len(self._phi_pows)]

    def tau_pow(self, m: int, q: int) -> int:
        return self._tau_pows[m % len(self._tau_pows)][q]

    def iota(self, q: int, x: int) -> int:
        return self._iota[x][q]

    # combined elements (g, q, m)

    def identity_elem(self) -> tuple[int, int, int]:
        return (self.group.identity, self.Q.identity, 0)

    def mul(self, a: tuple, b: tuple) -> tuple:
        G, Q = self.group, self.Q
        return (G.mul(a[0], b[0]), Q.mul(a[1], self.tau_pow(a[2], b[1])), a[2] + b[2])

    def inv(self, a: tuple) -> tuple:
        G, Q = self.group, self.Q
        return (G.inv(a[0]), self.tau_pow(-a[2], Q.inv(a[1])), -a[2])

    def power(self, a: tuple, n: int) -> tuple:
        if n < 0:
            a, n = self.inv(a), -n
        r = self.identity_elem()
        base = a
        while n:
            if n & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            n >>= 1
        return r

    def act(self, x: int, w: tuple) -> int:
        """x.(g, q, m) = Phi^-m(iota_{q^-1}(x.g))."""
        y = self.g_action(x, w[0])
        y = self._iota[y][self.Q.inv(w[1])]
        return self.phi_pow(-w[2])[y]

    def in_stabilizer(self, x: int, w: tuple) -> bool:
        return self.act(x, w) == x

    # closed points

    def _compute_points(self):
        G, Q = self.group, self.Q
        gens = [(g, Q.identity, 0) for g in G.generators()]
        gens += [(G.identity, q, 0) for q in Q.generators()]
        gens.append((G.identity, Q.identity, 1))
        where, transporter, points = {}, {}, []
        for start in range(self.size):
            if start in where:
                continue
            idx = len(points)
            where[start] = idx
            transporter[start] = self.identity_elem()
            queue = deque([start])
            orbit = [start]
            while queue:
                y = queue.popleft()
                for s in gens:
                    z = self.act(y, s)
                    if z not in where:
                        where[z] = idx
                        transporter[z] = self.mul(transporter[y], s)
                        orbit.append(z)
                        queue.append(z)
            points.append(tuple(sorted(orbit)))
        self._where = where
        self._transporter = transporter
        self._orbits = points

    def closed_point_of(self, y: int) -> int:
        """Index (in points_of order) of the closed point containing the geometric point y."""
        if self._where is None:
            self._compute_points()
        return self._where[y]

    def transporter(self, y: int) -> tuple:
        """An element t with y = basepoint . t, where basepoint is the least point of y's orbit."""
        if self._where is None:
            self._compute_points()
        return self._transporter[y]

    def orbits(self) -> list[tuple[int, ...]]:
        if self._where is None:
            self._compute_points()
        return self._orbits

    def galois_orbit(self, x: int) -> tuple[int, ...]:
        seen, queue = {x}, deque([x])
        while queue:
            y = queue.popleft()
            nxt = [self.frobenius[y]] + [self._iota[y][q] for q in self.Q]
            for z in nxt:
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        return tuple(sorted(seen))

    def points(self) -> list["PointData"]:
        if self._points is None:
            self._points = points_of(self)
        return self._points

    def weil_group(self, x: int) -> "WeilLevelGroup":
        """The stabilizer of the basepoint of closed point x."""
        return self.points()[x].group


@dataclass(frozen=True)
class PointData:
    index: int
    basepoint: int
    geometric_points: tuple[int, ...]
    degree: int
    decomposition: frozenset[int]
    group: "WeilLevelGroup" = field(repr=False)


def points_of(X: GaloisGSet) -> list[PointData]:
    """One entry per G-orbit of Galois orbits, basepoint = least point."""
    out = []
    for idx, orbit in enumerate(X.orbits()):
        xbar = orbit[0]
        gal = set(X.galois_orbit(xbar))
        decomp = frozenset(g for g in X.group if X.g_action(xbar, g) in gal)
        out.append(PointData(idx, xbar, orbit, len(gal), decomp, weil_group_at(X, xbar)))
    return out


class WeilLevelGroup:
    """K x|_theta Z: elements (k, j) with (k, j)(k', j') = (k theta^j(k'), j + j').

    ``frob_step`` n0 is the Frobenius degree of (e, 1); ``inertia`` is a
    theta-stable normal subgroup of K.  When built from a Galois G-set the
    group also knows its concrete embedding into G x (Q x| Z).
    """

    def __init__(
        self,
        kernel: FiniteGroup,
        theta: Sequence[int],
        frob_step: int,
        inertia: frozenset[int] | None = None,
        base: BaseField | None = None,
        embedding: "PointEmbedding | None" = None,
        check: bool = True,
    ):
        self.kernel = kernel
        self.theta = tuple(theta)
        self.frob_step = frob_step
        self.inertia = frozenset(inertia) if inertia is not None else frozenset([kernel.identity])
        self.base = base if base is not None else BaseField(2)
        self.embedding = embedding
        if check:
            self.validate()
        self._theta_pows = _perm_pow_table(self.theta)

    def validate(self):
        K = self.kernel
        if self.frob_step < 1:
            raise ValueError("frob_step must be positive")
        if sorted(self.theta) != list(K):
            raise ValueError("theta is not a permutation of K")
        for a in K:
            for b in K:
                if self.theta[K.mul(a, b)] != K.mul(self.theta[a], self.theta[b]):
                    raise ValueError("theta is not an automorphism of K")
        if not K.is_subgroup(self.inertia) or not K.is_normal(self.inertia):
            raise ValueError("inertia is not a normal subgroup of K")
        if {self.theta[k] for k in self.inertia} != set(self.inertia):
            raise ValueError("inertia is not theta-stable")
        if self.base.kind == "finite" and len(self.inertia) > 1:
            raise ValueError("inertia must be trivial over a finite base")

    def __repr__(self):
        return f"WeilLevelGroup(|K|={self.kernel.order}, n0={self.frob_step}, |K_I|={len(self.inertia)})"

    @property
    def identity(self) -> tuple[int, int]:
        return (self.kernel.identity, 0)

    def theta_pow(self, j: int, k: int) -> int:
        return self._theta_pows[j % len(self._theta_pows)][k]

    def theta_order(self) -> int:
        return len(self._theta_pows)

    def mul(self, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        return (self.kernel.mul(a[0], self.theta_pow(a[1], b[0])), a[1] + b[1])

    def inv(self, a: tuple[int, int]) -> tuple[int, int]:
        return (self.theta_pow(-a[1], self.kernel.inv(a[0])), -a[1])

    def power(self, a: tuple[int, int], n: int) -> tuple[int, int]:
        if n < 0:
            a, n = self.inv(a), -n
        r = self.identity
        base = a
        while n:
            if n & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            n >>= 1
        return r

    def degree(self, w: tuple[int, int]) -> int:
        """v(k, j) = j n0."""
        return w[1] * self.frob_step

    def elements(self, window: range) -> list[tuple[int, int]]:
        return [(k, j) for j in window for k in self.kernel]

    def subgroup(self, kpart: frozenset[int], gen: tuple[int, int]) -> "WeilSubgroup":
        return WeilSubgroup(self, frozenset(kpart), gen)

    def whole(self) -> "WeilSubgroup":
        return WeilSubgroup(self, frozenset(self.kernel), (self.kernel.identity, 1))

    def to_concrete(self, w: tuple[int, int]) -> tuple:
        if self.embedding is None:
            raise ValueError("this group was built directly and has no concrete embedding")
        return self.embedding.to_concrete(w)

    def to_split(self, c: tuple) -> tuple[int, int]:
        if self.embedding is None:
            raise ValueError("this group was built directly and has no concrete embedding")
        return self.embedding.to_split(c)


class PointEmbedding:
    """Split coordinates of the stabilizer of a point versus triples (g, q, m)."""

    def __init__(self, X: GaloisGSet, xbar: int, labels: Sequence[tuple], w0: tuple, n0: int):
        self.X = X
        self.xbar = xbar
        self.labels = tuple(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.w0 = w0
        self.n0 = n0
        self._w0_pows = {0: X.identity_elem()}

    def w0_pow(self, j: int) -> tuple:
        p = self._w0_pows.get(j)
        if p is None:
            p = self.X.power(self.w0, j)
            self._w0_pows[j] = p
        return p

    def to_concrete(self, w: tuple[int, int]) -> tuple:
        g, q = self.labels[w[0]]
        return self.X.mul((g, q, 0), self.w0_pow(w[1]))

    def to_split(self, c: tuple) -> tuple[int, int]:
        if c[2] % self.n0:
            raise NotInGroup(f"Frobenius degree {c[2]} is not a multiple of {self.n0}")
        j = c[2] // self.n0
        k = self.X.mul(c, self.X.inv(self.w0_pow(j)))
        key = (k[0], k[1])
        if key not in self.index:
            raise NotInGroup(f"{c} does not fix point {self.xbar}")
        return (self.index[key], j)


def weil_group_at(X: GaloisGSet, xbar: int) -> WeilLevelGroup:
    """Stabilizer of xbar in G x (Q x| Z), in split form K x|_theta Z."""
    if not 0 <= xbar < X.size:
        raise IndexError(f"point {xbar} is not in a set of size {X.size}")
    G, Q = X.group, X.Q
    labels = [(g, q) for g in G for q in Q if X.in_stabilizer(xbar, (g, q, 0))]
    labels.sort(key=lambda gq: (gq != (G.identity, Q.identity), gq))
    kmul = lambda a, b: (G.mul(a[0], b[0]), Q.mul(a[1], b[1]))
    K = FiniteGroup.from_elements(labels, kmul, (G.identity, Q.identity))
    n0, w0 = None, None
    for m in range(1, len(X._phi_pows) + 1):
        cands = [(g, q) for g in G for q in Q if X.in_stabilizer(xbar, (g, q, m))]
        if cands:
            n0 = m
            g, q = min(cands)
            w0 = (g, q, m)
            break
    emb = PointEmbedding(X, xbar, K.labels, w0, n0)
    w0inv = X.inv(w0)
    theta = []
    for g, q in K.labels:
        c = X.mul(X.mul(w0, (g, q, 0)), w0inv)
        theta.append(emb.index[(c[0], c[1])])
    inertia = frozenset(i for i, (g, q) in enumerate(K.labels) if g == G.identity)
    return WeilLevelGroup(K, theta, n0, inertia, X.base, emb, check=False)


class WeilSubgroup:
    """The finite-index subgroup of W generated by kpart (a theta_gen-stable subgroup of K) and gen = (k1, j1)."""

    def __init__(self, parent: WeilLevelGroup, kpart: frozenset[int], gen: tuple[int, int]):
        K = parent.kernel
        if not K.is_subgroup(kpart):
            raise ValueError("kernel part is not a subgroup")
        if gen[1] < 1:
            raise ValueError("generator must have positive degree")
        self.parent = parent
        self.kpart = kpart
        self.gen = gen
        conj = lambda k: parent.mul(parent.mul(gen, (k, 0)), parent.inv(gen))[0]
        if {conj(k) for k in kpart} != set(kpart):
            raise ValueError("generator does not normalize the kernel part")
        self.labels = sorted(kpart, key=lambda k: (k != K.identity, k))
        self.local_index = {k: i for i, k in enumerate(self.labels)}
        sub, _ = K.subgroup_group(self.labels)
        theta = [self.local_index[conj(k)] for k in self.labels]
        inertia = frozenset(self.local_index[k] for k in kpart & parent.inertia)
        self.group = WeilLevelGroup(sub, theta, gen[1] * parent.frob_step, inertia, parent.base, check=False)
        self._gen_pows: dict[int, tuple[int, int]] = {}

    @property
    def step(self) -> int:
        return self.gen[1]

    def index(self) -> int:
        return self.step * (self.parent.kernel.order // len(self.kpart))

    def gen_pow(self, i: int) -> tuple[int, int]:
        p = self._gen_pows.get(i)
        if p is None:
            p = self.parent.power(self.gen, i)
            self._gen_pows[i] = p
        return p

    def embed(self, w: tuple[int, int]) -> tuple[int, int]:
        """Split element of the subgroup's own presentation -> element of the parent."""
        return self.parent.mul((self.labels[w[0]], 0), self.gen_pow(w[1]))

    def local(self, w: tuple[int, int]) -> tuple[int, int]:
        """Element of the parent lying in the subgroup -> its own split coordinates."""
        j, r = divmod(w[1], self.step)
        if r:
            raise NotInGroup(f"{w} is not in the subgroup")
        c = self.gen_pow(j)
        k = self.parent.kernel.mul(w[0], self.parent.kernel.inv(c[0]))
        if k not in self.kpart:
            raise NotInGroup(f"{w} is not in the subgroup")
        return (self.local_index[k], j)

    def contains(self, w: tuple[int, int]) -> bool:
        try:
            self.local(w)
        except NotInGroup:
            return False
        return True

    def is_whole(self) -> bool:
        return self.index() == 1

    def same_as(self, other: "WeilSubgroup") -> bool:
        """Equality as subsets of the common parent."""
        return (
            self.parent is other.parent
            and self.kpart == other.kpart
            and self.step == other.step
            and other.contains(self.gen)
        )

    def left_transversal(self) -> list[tuple[int, int]]:
        """Representatives (a, r) of W / I, r in [0, step), a least in a theta^r(kpart) coset; identity first."""
        P = self.parent
        K = P.kernel
        out = []
        for r in range(self.step):
            shifted = {P.theta_pow(r, k) for k in self.kpart}
            covered: set[int] = set()
            for a in sorted(K, key=lambda e: (e != K.identity, e)):
                if a not in covered:
                    out.append((a, r))
                    covered |= {K.mul(a, s) for s in shifted}
        return out


class Morphism:
    """An equivariant map of Galois G-sets; ``degree`` m means the source lives over the degree-m extension."""

    def __init__(self, source: GaloisGSet, target: GaloisGSet, f: Sequence[int], alpha: GroupHom, degree: int = 1, check: bool = True):
        self.source, self.target, self.f, self.alpha, self.degree = source, target, tuple(f), alpha, degree
        if check:
            self.validate()

    def validate(self):
        S, T, f, a, m = self.source, self.target, self.f, self.alpha, self.degree
        if len(f) != S.size or any(not 0 <= y < T.size for y in f):
            raise ValueError("map is not defined on every point")
        if a.source != S.group or a.target != T.group:
            raise ValueError("homomorphism does not match the groups")
        if S.base != T.base.extend(m):
            raise ValueError(f"source base {S.base} is not the degree-{m} extension of {T.base}")
        if S.Q != T.Q or S._tau != tuple(T.tau_pow(m, q) for q in T.Q):
            raise ValueError("inertia data do not match")
        phi_m = T.phi_pow(m)
        for x in range(S.size):
            if f[S.frobenius[x]] != phi_m[f[x]]:
                raise ValueError(f"map is not Frobenius-compatible at point {x}")
            for g in S.group:
                if f[S.g_action(x, g)] != T.g_action(f[x], a(g)):
                    raise ValueError(f"map is not equivariant at point {x}, element {g}")
            for q in S.Q:
                if f[S.iota(q, x)] != T.iota(q, f[x]):
                    raise ValueError(f"map does not commute with inertia at point {x}")

    def __repr__(self):
        return f"Morphism({self.source!r} -> {self.target!r}, degree {self.degree})"

    def concrete(self, w: tuple) -> tuple:
        return (self.alpha(w[0]), w[1], self.degree * w[2])

    def compose(self, first: "Morphism") -> "Morphism":
        """self after first."""
        return Morphism(
            first.source, self.target, [self.f[y] for y in first.f], self.alpha.compose(first.alpha), first.degree * self.degree, check=False
        )

    @classmethod
    def identity(cls, X: GaloisGSet) -> "Morphism":
        return cls(X, X, range(X.size), GroupHom.identity(X.group), check=False)


class WeilHom:
    """A homomorphism of Weil-level groups given on K and on the generator (e, 1)."""

    def __init__(self, source: WeilLevelGroup, target: WeilLevelGroup, kmap: Sequence[int], gen_image: tuple[int, int]):
        self.source, self.target = source, target
        self.kmap = tuple(kmap)
        self.gen_image = gen_image
        self._gen_pows: dict[int, tuple[int, int]] = {}

    def __call__(self, w: tuple[int, int]) -> tuple[int, int]:
        p = self._gen_pows.get(w[1])
        if p is None:
            p = self.target.power(self.gen_image, w[1])
            self._gen_pows[w[1]] = p
        return self.target.mul((self.kmap[w[0]], 0), p)

    def kernel(self) -> frozenset[int]:
        return frozenset(k for k in self.source.kernel if self.kmap[k] == self.target.kernel.identity)

    def image(self) -> WeilSubgroup:
        return self.target.subgroup(frozenset(self.kmap), self.gen_image)

    def is_surjective(self) -> bool:
        return self.image().is_whole()

    def is_injective(self) -> bool:
        return len(self.kernel()) == 1

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()


def point_hom(m: Morphism, x: int) -> tuple[WeilHom, tuple]:
    """The map W(xbar) -> W(ybar) for the basepoint xbar of closed point x.

    ybar is the basepoint of the closed point containing f(xbar); the returned
    transporter t satisfies f(xbar) = ybar . t and the map is w -> t alpha(w) t^-1.
    """
    S, T = m.source, m.target
    P = S.points()[x]
    W = P.group
    y = T.closed_point_of(m.f[P.basepoint])
    Wy = T.points()[y].group
    t = T.transporter(m.f[P.basepoint])
    tinv = T.inv(t)

    def image(w):
        c = m.concrete(W.to_concrete(w))
        return Wy.to_split(T.mul(T.mul(t, c), tinv))

    kmap = [image((k, 0))[0] for k in W.kernel]
    gen = image((W.kernel.identity, 1))
    return WeilHom(W, Wy, kmap, gen), t


def base_change(X: GaloisGSet, m: int) -> tuple[GaloisGSet, Morphism]:
    """X over the degree-m extension, with the projection back to X."""
    if m < 1:
        raise ValueError("extension degree must be positive")
    inertia = None
    if X.inertia is not None:
        inertia = InertiaData(X.Q, X._iota, tuple(X.tau_pow(m, q) for q in X.Q))
    Xm = GaloisGSet(X.g_action, X.phi_pow(m), X.base.extend(m), inertia, check=False)
    return Xm, Morphism(Xm, X, range(X.size), GroupHom.identity(X.group), degree=m, check=False)


def base_change_image(X: GaloisGSet, x: int, m: int) -> WeilSubgroup:
    """Image in W(xbar) of the stabilizer of xbar after base change to degree m."""
    if m < 1:
        raise ValueError("extension degree must be positive")
    Xm, pr = base_change(X, m)
    xbar = X.points()[x].basepoint
    hom, _ = point_hom(pr, Xm.closed_point_of(xbar))
    return hom.image()


def divisible_degree_subgroup(W: WeilLevelGroup, m: int) -> WeilSubgroup:
    """{(k, j) : m divides j n0}."""
    step = m // gcd(m, W.frob_step)
    return W.subgroup(frozenset(W.kernel), (W.kernel.identity, step))


# constructions


def _inertia_like(X: GaloisGSet, table) -> InertiaData | None:
    if X.inertia is None:
        return None
    return InertiaData(X.Q, table, X._tau)


def galois_point(G: FiniteGroup, like: GaloisGSet) -> GaloisGSet:
    """One point with trivial actions over the same base (and inertia group) as ``like``."""
    inertia = None
    if like.inertia is not None:
        inertia = InertiaData(like.Q, [[0] * like.Q.order], like._tau)
    return GaloisGSet(RightGSet.trivial(G, 1), [0], like.base, inertia, check=False)


def galois_to_point(X: GaloisGSet, alpha: GroupHom | None = None) -> tuple[GaloisGSet, Morphism]:
    """The structure map to a point; alpha defaults to the identity of G."""
    alpha = alpha or GroupHom.identity(X.group)
    P = galois_point(alpha.target, X)
    return P, Morphism(X, P, [0] * X.size, alpha)


def galois_quotient(X: GaloisGSet, alpha: GroupHom) -> tuple[GaloisGSet, Morphism]:
    """X modulo the kernel of a surjection alpha, with the induced actions."""
    from .groups import quotient_by_kernel

    Y, q = quotient_by_kernel(alpha, X.g_action)
    rep = {}
    for x in range(X.size):
        rep.setdefault(q(x), x)
    frob = [q(X.frobenius[rep[y]]) for y in range(Y.size)]
    inertia = _inertia_like(X, [[q(X.iota(a, rep[y])) for a in X.Q] for y in range(Y.size)])
    Yg = GaloisGSet(Y, frob, X.base, inertia)
    return Yg, Morphism(X, Yg, [q(x) for x in range(X.size)], alpha)


def galois_restrict(X: GaloisGSet, alpha: GroupHom) -> tuple[GaloisGSet, Morphism]:
    """The same points viewed over the source of alpha: S -> G, mapping identically to X."""
    XS = GaloisGSet(X.g_action.restrict(alpha), X.frobenius, X.base, X.inertia, check=False)
    return XS, Morphism(XS, X, range(X.size), alpha)


def galois_induce(alpha: GroupHom, X: GaloisGSet) -> tuple[GaloisGSet, Morphism]:
    """X x^S G for an injective alpha: S -> G, with its inclusion."""
    from .groups import induced_inclusion

    inc = induced_inclusion(alpha, X.g_action)
    Y = inc.target
    n = X.size
    frob = [(p // n) * n + X.frobenius[p % n] for p in range(Y.size)]
    inertia = _inertia_like(X, [[(p // n) * n + X.iota(a, p % n) for a in X.Q] for p in range(Y.size)])
    Yg = GaloisGSet(Y, frob, X.base, inertia)
    return Yg, Morphism(X, Yg, [inc(x) for x in range(n)], alpha)


def galois_subset(X: GaloisGSet, points: Sequence[int]) -> tuple[GaloisGSet, Morphism]:
    """A stable subset (a union of closed points) with its inclusion."""
    pts = sorted(set(points))
    idx = {p: i for i, p in enumerate(pts)}
    try:
        act = [[idx[X.g_action(p, g)] for g in X.group] for p in pts]
        frob = [idx[X.frobenius[p]] for p in pts]
        inertia = _inertia_like(X, [[idx[X.iota(a, p)] for a in X.Q] for p in pts])
    except KeyError:
        raise ValueError("subset is not stable under the group and Galois actions") from None
    S = GaloisGSet(RightGSet(X.group, act, check=False), frob, X.base, inertia, check=False)
    return S, Morphism(S, X, pts, GroupHom.identity(X.group))


def galois_union(parts: Sequence[GaloisGSet]) -> tuple[GaloisGSet, list[Morphism]]:
    """Disjoint union over a common group and base, with the inclusions."""
    first = parts[0]
    offs, off = [], 0
    for P in parts:
        offs.append(off)
        off += P.size
    act = RightGSet.disjoint_union([P.g_action for P in parts])
    frob = [o + y for P, o in zip(parts, offs) for y in P.frobenius]
    inertia = None
    if first.inertia is not None:
        inertia = InertiaData(first.Q, [[o + P.iota(a, x) for a in P.Q] for P, o in zip(parts, offs) for x in range(P.size)], first._tau)
    U = GaloisGSet(act, frob, first.base, inertia)
    incs = [Morphism(P, U, [o + x for x in range(P.size)], GroupHom.identity(first.group)) for P, o in zip(parts, offs)]
    return U, incs


def galois_fold(X: GaloisGSet, copies: int = 2) -> tuple[GaloisGSet, Morphism]:
    """The codiagonal from several copies of X onto X."""
    U, _ = galois_union([X] * copies)
    return U, Morphism(U, X, [p % X.size for p in range(U.size)], GroupHom.identity(X.group))
