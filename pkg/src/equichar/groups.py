"""Finite groups as Cayley tables, homomorphisms, right G-sets and coset combinatorics."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence


class GroupAxiomError(ValueError):
    """A Cayley table fails one of the group axioms."""

    axiom = "group axiom"


class NotLatinSquare(GroupAxiomError):
    axiom = "not a Latin square"


class NotAssociative(GroupAxiomError):
    axiom = "not associative"


class MissingIdentity(GroupAxiomError):
    axiom = "missing identity"


class MissingInverse(GroupAxiomError):
    axiom = "missing inverse"


class FiniteGroup:
    """A finite group on the elements 0..n-1 given by its Cayley table.

    ``table[a][b]`` is the index of the product ``a*b``.  Optional ``labels``
    name the elements (permutations, pairs, ...).
    """

    __slots__ = ("table", "order", "identity", "_inv", "labels", "_index", "_subgroups", "_gens", "name")

    def __init__(self, table, identity: int, labels: Sequence[Hashable] | None = None, name: str = ""):
        self.table = tuple(tuple(r) for r in table)
        self.order = len(self.table)
        self.identity = identity
        inv = [None] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == identity:
                    inv[a] = b
                    break
        self._inv = tuple(inv)
        self.labels = tuple(labels) if labels is not None else None
        self._index = {lab: i for i, lab in enumerate(self.labels)} if self.labels is not None else None
        self._subgroups = None
        self._gens = None
        self.name = name

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table and self.identity == other.identity

    def __hash__(self):
        return hash((self.table, self.identity))

    def index_of(self, label: Hashable) -> int:
        return self._index[label]

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def prod(self, elems: Iterable[int]) -> int:
        r = self.identity
        for e in elems:
            r = self.table[r][e]
        return r

    def inv(self, a: int) -> int:
        return self._inv[a]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self._inv[a], -n
        r = self.identity
        for _ in range(n % self.element_order(a)):
            r = self.table[r][a]
        return r

    def element_order(self, a: int) -> int:
        k, r = 1, a
        while r != self.identity:
            r = self.table[r][a]
            k += 1
        return k

    def exponent(self) -> int:
        from math import lcm

        return lcm(*(self.element_order(a) for a in self))

    def conj(self, g: int, h: int) -> int:
        """g^-1 h g."""
        return self.table[self.table[self._inv[g]][h]][g]

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in self for b in self)

    def center(self) -> frozenset[int]:
        return frozenset(z for z in self if all(self.table[z][g] == self.table[g][z] for g in self))

    # subgroups

    def generated(self, gens: Iterable[int]) -> frozenset[int]:
        gens = list(gens)
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = self.table[x][s]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def is_subgroup(self, S: Iterable[int]) -> bool:
        S = frozenset(S)
        if self.identity not in S:
            return False
        return all(self.table[a][self._inv[b]] in S for a in S for b in S)

    def is_normal(self, S: frozenset[int]) -> bool:
        return all(self.conj(g, s) in S for g in self for s in S)

    def generators(self, S: Iterable[int] | None = None) -> tuple[int, ...]:
        """A small generating set (greedy, by element index) of S or of the whole group."""
        if S is None and self._gens is not None:
            return self._gens
        elems = sorted(S) if S is not None else list(self)
        gens: list[int] = []
        cur = frozenset([self.identity])
        for e in elems:
            if e not in cur:
                gens.append(e)
                cur = self.generated(gens)
        if S is None:
            self._gens = tuple(gens)
        return tuple(gens)

    def subgroups(self) -> list[frozenset[int]]:
        """All subgroups, sorted by size then elements."""
        if self._subgroups is None:
            cyclic = {self.generated([g]) for g in self}
            found = set(cyclic)
            frontier = set(cyclic)
            while frontier:
                new = set()
                for A in frontier:
                    for C in cyclic:
                        if not C <= A:
                            J = self.generated(list(A) + list(C))
                            if J not in found:
                                new.add(J)
                found |= new
                frontier = new
            self._subgroups = sorted(found, key=lambda S: (len(S), sorted(S)))
        return self._subgroups

    def conjugate_subgroup(self, S: frozenset[int], g: int) -> frozenset[int]:
        """g^-1 S g."""
        return frozenset(self.conj(g, s) for s in S)

    def subgroup_classes(self) -> list[frozenset[int]]:
        """One representative (the first in subgroups() order) per conjugacy class of subgroups."""
        reps, seen = [], set()
        for S in self.subgroups():
            if S in seen:
                continue
            reps.append(S)
            seen |= {self.conjugate_subgroup(S, g) for g in self}
        return reps

    def left_coset_reps(self, S: frozenset[int]) -> list[int]:
        """Least-index representatives of gS, the identity first."""
        return _coset_reps(self, S, side="left")

    def right_coset_reps(self, S: frozenset[int]) -> list[int]:
        """Least-index representatives of Sg, the identity first."""
        return _coset_reps(self, S, side="right")

    def subgroup_group(self, S: Iterable[int]) -> tuple["FiniteGroup", "GroupHom"]:
        """S as a group in its own right, with the inclusion homomorphism."""
        elems = sorted(S, key=lambda e: (e != self.identity, e))
        G = FiniteGroup.from_elements(elems, self.mul, self.identity)
        return G, GroupHom(G, self, tuple(elems))

    # constructors

    @classmethod
    def from_elements(cls, elements: Sequence[Hashable], mul: Callable, identity: Hashable, name: str = "") -> "FiniteGroup":
        """Group on an explicit list of hashable elements closed under ``mul``; identity placed first."""
        elems = [identity] + [e for e in elements if e != identity]
        index = {e: i for i, e in enumerate(elems)}
        table = [[index[mul(a, b)] for b in elems] for a in elems]
        return cls(table, 0, labels=elems, name=name)

    @classmethod
    def from_generators(cls, gens: Sequence[Hashable], mul: Callable, identity: Hashable, name: str = "") -> "FiniteGroup":
        """Closure of generators under ``mul`` in breadth-first order."""
        elems = [identity]
        seen = {identity}
        queue = deque([identity])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = mul(x, s)
                if y not in seen:
                    seen.add(y)
                    elems.append(y)
                    queue.append(y)
        return cls.from_elements(elems, mul, identity, name=name)

    @classmethod
    def from_permutations(cls, gens: Sequence[Sequence[int]], name: str = "") -> "FiniteGroup":
        """Permutations in image form; the product g*h applies g first, then h."""
        gens = [tuple(g) for g in gens]
        n = max((len(g) for g in gens), default=0)
        gens = [g + tuple(range(len(g), n)) for g in gens]
        return cls.from_generators(gens, perm_mul, tuple(range(n)), name=name)

    @classmethod
    def from_cycles(cls, generators: Sequence[Sequence[Sequence[int]]], degree: int | None = None, name: str = "") -> "FiniteGroup":
        return cls.from_permutations([cycles_to_perm(g, degree) for g in generators], name=name)


def perm_mul(g: tuple[int, ...], h: tuple[int, ...]) -> tuple[int, ...]:
    """Apply g, then h."""
    return tuple(h[i] for i in g)


def cycles_to_perm(cycles: Sequence[Sequence[int]], degree: int | None = None) -> tuple[int, ...]:
    n = max([max(c) + 1 for c in cycles if c] + [degree or 0])
    p = list(range(n))
    seen: set[int] = set()
    for c in cycles:
        if len(set(c)) != len(c) or seen & set(c):
            raise ValueError(f"malformed cycle {list(c)}")
        seen |= set(c)
        for i, a in enumerate(c):
            p[a] = c[(i + 1) % len(c)]
    return tuple(p)


def _coset_reps(G: FiniteGroup, S: frozenset[int], side: str) -> list[int]:
    reps, covered = [G.identity], set(S)
    order = sorted(G, key=lambda e: (e != G.identity, e))
    for g in order:
        if g in covered:
            continue
        reps.append(g)
        covered |= {G.mul(g, s) for s in S} if side == "left" else {G.mul(s, g) for s in S}
    return reps


def validate_group(table: Sequence[Sequence[int]], labels: Sequence[Hashable] | None = None, name: str = "") -> FiniteGroup:
    """Check the group axioms on a Cayley table; raise the first violated one."""
    n = len(table)
    if n == 0:
        raise MissingIdentity("empty table has no identity")
    for i, row in enumerate(table):
        if len(row) != n:
            raise NotLatinSquare(f"row {i} has length {len(row)}, expected {n}")
        if any(not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n for v in row):
            raise NotLatinSquare(f"row {i} has entries outside 0..{n - 1}")
    full = set(range(n))
    for i, row in enumerate(table):
        if set(row) != full:
            raise NotLatinSquare(f"not a Latin square: row {i} repeats an entry")
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            raise NotLatinSquare(f"not a Latin square: column {j} repeats an entry")
    ident = next((e for e in range(n) if all(table[e][a] == a and table[a][e] == a for a in range(n))), None)
    if ident is None:
        raise MissingIdentity("missing identity: no two-sided identity element")
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise NotAssociative(f"not associative: ({a}*{b})*{c} != {a}*({b}*{c})")
    for a in range(n):
        if not any(table[a][b] == ident and table[b][a] == ident for b in range(n)):
            raise MissingInverse(f"missing inverse for element {a}")
    return FiniteGroup(table, ident, labels=labels, name=name)


# standard groups


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], 0, labels=[()], name="1")


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], 0, labels=list(range(n)), name=f"C{n}")


def symmetric(n: int) -> FiniteGroup:
    if n < 2:
        return trivial_group()
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return FiniteGroup.from_permutations(gens, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    gens = [cycles_to_perm([[i, i + 1, i + 2]], n) for i in range(n - 2)]
    return FiniteGroup.from_permutations(gens, name=f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of an n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return FiniteGroup.from_permutations([rot, ref], name=f"D{n}")


def quaternion() -> FiniteGroup:
    def mul(a, b):
        # quaternion units as (sign, axis) with axis in 1,i,j,k
        table = {
            ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
            ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
            ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
            ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
        }
        s, ax = table[(a[1], b[1])]
        return (a[0] * b[0] * s, ax)

    return FiniteGroup.from_generators([(1, "i"), (1, "j")], mul, (1, "1"), name="Q8")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    elems = [(g, h) for g in G for h in H]
    return FiniteGroup.from_elements(
        elems, lambda a, b: (G.mul(a[0], b[0]), H.mul(a[1], b[1])), (G.identity, H.identity), name=f"{G.name}x{H.name}"
    )


def semidirect_cyclic(K: FiniteGroup, theta: Sequence[int], r: int) -> FiniteGroup:
    """K x| C_r with the generator acting by the automorphism theta (theta^r = id)."""
    powers = [tuple(range(K.order))]
    for _ in range(r - 1):
        powers.append(tuple(theta[x] for x in powers[-1]))
    if tuple(theta[x] for x in powers[-1]) != tuple(range(K.order)):
        raise ValueError("theta^r is not the identity")

    def mul(a, b):
        return (K.mul(a[0], powers[a[1]][b[0]]), (a[1] + b[1]) % r)

    elems = [(k, i) for i in range(r) for k in K]
    return FiniteGroup.from_elements(elems, mul, (K.identity, 0), name=f"{K.name}:C{r}")


# homomorphisms


class GroupHom:
    """A homomorphism given by the image of every element."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images: Sequence[int], check: bool = True):
        self.source = source
        self.target = target
        self.images = tuple(images)
        if check:
            if len(self.images) != source.order:
                raise ValueError("image table has the wrong length")
            for a in source:
                for b in source:
                    if self.images[source.mul(a, b)] != target.mul(self.images[a], self.images[b]):
                        raise ValueError(f"not a homomorphism at ({a}, {b})")

    def __call__(self, g: int) -> int:
        return self.images[g]

    def __repr__(self):
        return f"GroupHom({self.source!r} -> {self.target!r})"

    def kernel(self) -> frozenset[int]:
        return frozenset(g for g in self.source if self.images[g] == self.target.identity)

    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    def is_injective(self) -> bool:
        return len(self.kernel()) == 1

    def is_surjective(self) -> bool:
        return len(self.image()) == self.target.order

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self after first."""
        return GroupHom(first.source, self.target, [self.images[first.images[g]] for g in first.source], check=False)

    @classmethod
    def identity(cls, G: FiniteGroup) -> "GroupHom":
        return cls(G, G, list(G), check=False)

    @classmethod
    def trivial(cls, G: FiniteGroup, H: FiniteGroup) -> "GroupHom":
        return cls(G, H, [H.identity] * G.order, check=False)

    @classmethod
    def from_generators(cls, source: FiniteGroup, target: FiniteGroup, gen_images: dict[int, int]) -> "GroupHom":
        images = _extend_on_generators(source, list(gen_images), lambda s: gen_images[s], target.mul, target.identity)
        if images is None:
            raise ValueError("generator images do not define a homomorphism")
        return cls(source, target, images)


def _extend_on_generators(G: FiniteGroup, gens, value, mul, identity):
    """Extend values on generators along right multiplication; None if inconsistent."""
    val = [None] * G.order
    val[G.identity] = identity
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = G.mul(x, s)
            v = mul(val[x], value(s))
            if val[y] is None:
                val[y] = v
                queue.append(y)
            elif val[y] != v:
                return None
    if any(v is None for v in val):
        return None
    return val


def all_homomorphisms(G: FiniteGroup, H: FiniteGroup) -> list[GroupHom]:
    gens = G.generators()
    out = []
    for imgs in itertools.product(range(H.order), repeat=len(gens)):
        assign = dict(zip(gens, imgs))
        images = _extend_on_generators(G, gens, assign.__getitem__, H.mul, H.identity)
        if images is not None:
            out.append(GroupHom(G, H, images, check=False))
    return out


def linear_characters(G: FiniteGroup, n: int) -> list[tuple[int, ...]]:
    """Homomorphisms G -> Z/n, as exponent tables (the character g -> zeta_n^e(g))."""
    gens = G.generators()
    out = []
    for vals in itertools.product(range(n), repeat=len(gens)):
        assign = dict(zip(gens, vals))
        images = _extend_on_generators(G, gens, assign.__getitem__, lambda a, b: (a + b) % n, 0)
        if images is not None:
            out.append(tuple(images))
    return out


# right G-sets


class RightGSet:
    """A finite set {0..size-1} with a right action; ``act[x][g]`` is x.g."""

    __slots__ = ("group", "size", "act")

    def __init__(self, group: FiniteGroup, act: Sequence[Sequence[int]], check: bool = True):
        self.group = group
        self.act = tuple(tuple(r) for r in act)
        self.size = len(self.act)
        if check:
            self.validate()

    def validate(self):
        G, n = self.group, self.size
        for x, row in enumerate(self.act):
            if len(row) != G.order or any(not 0 <= y < n for y in row):
                raise ValueError(f"action row {x} is malformed")
            if row[G.identity] != x:
                raise ValueError(f"identity moves point {x}")
        for g in G:
            if len({self.act[x][g] for x in range(n)}) != n:
                raise ValueError(f"element {g} does not act bijectively")
        for x in range(n):
            for g in G:
                for h in G:
                    if self.act[self.act[x][g]][h] != self.act[x][G.mul(g, h)]:
                        raise ValueError(f"not a right action at point {x}, elements {g}, {h}")

    def __call__(self, x: int, g: int) -> int:
        return self.act[x][g]

    def __repr__(self):
        return f"RightGSet({self.size} points over {self.group!r})"

    def orbit(self, x: int) -> tuple[int, ...]:
        return tuple(sorted({self.act[x][g] for g in self.group}))

    def orbits(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for x in range(self.size):
            if x not in seen:
                o = self.orbit(x)
                seen |= set(o)
                out.append(o)
        return out

    def stabilizer(self, x: int) -> frozenset[int]:
        return frozenset(g for g in self.group if self.act[x][g] == x)

    def is_free(self) -> bool:
        return all(len(self.stabilizer(x)) == 1 for x in range(self.size))

    def is_transitive(self) -> bool:
        return len(self.orbits()) <= 1

    def permutation(self, g: int) -> tuple[int, ...]:
        return tuple(self.act[x][g] for x in range(self.size))

    def restrict(self, alpha: GroupHom) -> "RightGSet":
        """alpha^* X: the action of the source group through alpha."""
        return RightGSet(alpha.source, [[self.act[x][alpha(g)] for g in alpha.source] for x in range(self.size)], check=False)

    @classmethod
    def trivial(cls, G: FiniteGroup, n: int = 1) -> "RightGSet":
        return cls(G, [[x] * G.order for x in range(n)], check=False)

    @classmethod
    def regular(cls, G: FiniteGroup) -> "RightGSet":
        return cls(G, [[G.mul(x, g) for g in G] for x in G], check=False)

    @classmethod
    def cosets(cls, G: FiniteGroup, S: frozenset[int]) -> "RightGSet":
        """Right cosets S\\G with S g . h = S gh; point 0 is the coset S itself."""
        reps = G.right_coset_reps(S)
        where = {}
        for i, r in enumerate(reps):
            for s in S:
                where[G.mul(s, r)] = i
        return cls(G, [[where[G.mul(r, g)] for g in G] for r in reps], check=False)

    @classmethod
    def disjoint_union(cls, parts: Sequence["RightGSet"]) -> "RightGSet":
        G = parts[0].group
        rows, off = [], 0
        for P in parts:
            rows += [[off + y for y in row] for row in P.act]
            off += P.size
        return cls(G, rows, check=False)


class EquivariantMap:
    """f: X -> Y with f(x.g) = f(x).alpha(g)."""

    __slots__ = ("source", "target", "alpha", "f")

    def __init__(self, source: RightGSet, target: RightGSet, alpha: GroupHom, f: Sequence[int], check: bool = True):
        self.source, self.target, self.alpha, self.f = source, target, alpha, tuple(f)
        if check:
            if alpha.source is not source.group and alpha.source != source.group:
                raise ValueError("alpha does not start at the source group")
            if alpha.target is not target.group and alpha.target != target.group:
                raise ValueError("alpha does not end at the target group")
            if len(self.f) != source.size or any(not 0 <= y < target.size for y in self.f):
                raise ValueError("map is not defined on every point")
            for x in range(source.size):
                for g in source.group:
                    if self.f[source(x, g)] != target(self.f[x], alpha(g)):
                        raise ValueError(f"map is not equivariant at point {x}, element {g}")

    def __call__(self, x: int) -> int:
        return self.f[x]

    @classmethod
    def identity(cls, X: RightGSet) -> "EquivariantMap":
        return cls(X, X, GroupHom.identity(X.group), range(X.size), check=False)


def induced_object(alpha: GroupHom, X: RightGSet, transversal: Sequence[int] | None = None) -> RightGSet:
    """Induction along an injective alpha: G -> H; point s*|X| + x is the copy X_s."""
    if not alpha.is_injective():
        raise ValueError("induced_object needs an injective homomorphism")
    H = alpha.target
    image = alpha.image()
    S = list(transversal) if transversal is not None else H.right_coset_reps(image)
    pre = {alpha(g): g for g in alpha.source}
    where = {}
    for i, s in enumerate(S):
        for a in image:
            where[H.mul(a, s)] = i
    if len(where) != H.order or len(S) * len(image) != H.order:
        raise ValueError("transversal is not a system of representatives of alpha(G)\\H")
    n = X.size
    rows = []
    for i, s in enumerate(S):
        for x in range(n):
            row = []
            for h in H:
                sh = H.mul(s, h)
                t = where[sh]
                g = pre[H.mul(sh, H.inv(S[t]))]
                row.append(t * n + X(x, g))
            rows.append(row)
    return RightGSet(H, rows, check=False)


def induced_inclusion(alpha: GroupHom, X: RightGSet, transversal: Sequence[int] | None = None) -> EquivariantMap:
    """The inclusion of the copy indexed by the representative of the trivial coset."""
    Y = induced_object(alpha, X, transversal)
    S = list(transversal) if transversal is not None else alpha.target.right_coset_reps(alpha.image())
    i0 = next(i for i, s in enumerate(S) if s in alpha.image())
    if S[i0] != alpha.target.identity:
        raise ValueError("the trivial coset must be represented by the identity")
    return EquivariantMap(X, Y, alpha, [i0 * X.size + x for x in range(X.size)])


def quotient_by_kernel(alpha: GroupHom, X: RightGSet) -> tuple[RightGSet, EquivariantMap]:
    """Orbit space of X under Ker alpha with the induced action of the target."""
    if not alpha.is_surjective():
        raise ValueError("quotient_by_kernel needs a surjective homomorphism")
    ker = alpha.kernel()
    label = {}
    orbits = []
    for x in range(X.size):
        if x in label:
            continue
        orb = sorted({X(x, k) for k in ker})
        for y in orb:
            label[y] = len(orbits)
        orbits.append(orb)
    H = alpha.target
    lift = {}
    for g in alpha.source:
        lift.setdefault(alpha(g), g)
    rows = [[label[X(orb[0], lift[h])] for h in H] for orb in orbits]
    Y = RightGSet(H, rows, check=False)
    return Y, EquivariantMap(X, Y, alpha, [label[x] for x in range(X.size)], check=False)


@dataclass(frozen=True)
class CocartesianResult:
    holds: bool
    witness: RightGSet | None = None
    hom_count: int = 0
    restricted_count: int = 0

    def __bool__(self):
        return self.holds


def _transitive_targets(H: FiniteGroup, bound: int) -> list[RightGSet]:
    return [RightGSet.cosets(H, S) for S in H.subgroup_classes() if H.order // len(S) <= bound]


def small_targets(H: FiniteGroup, bound: int = 8) -> list[RightGSet]:
    """Every H-set of size at most ``bound`` up to isomorphism (disjoint unions of coset spaces)."""
    blocks = _transitive_targets(H, bound)
    out = []

    def rec(start, chosen, size):
        if chosen:
            out.append(RightGSet.disjoint_union(chosen))
        for i in range(start, len(blocks)):
            if size + blocks[i].size <= bound:
                rec(i, chosen + [blocks[i]], size + blocks[i].size)

    rec(0, [], 0)
    return out


def _equivariant_maps(Y: RightGSet, T: RightGSet, alpha: GroupHom) -> list[tuple[int, ...]]:
    """All maps u: Y -> T with u(y.g) = u(y).alpha(g)."""
    G = Y.group
    choices = []
    reps = []
    for orb in Y.orbits():
        y = orb[0]
        stab = Y.stabilizer(y)
        cands = [t for t in range(T.size) if all(T(t, alpha(g)) == t for g in stab)]
        reps.append(y)
        choices.append(cands)
    out = []
    for pick in itertools.product(*choices):
        u = [None] * Y.size
        for y, t in zip(reps, pick):
            for g in G:
                u[Y(y, g)] = T(t, alpha(g))
        out.append(tuple(u))
    return out


def is_cocartesian(f: EquivariantMap, bound: int = 8) -> CocartesianResult:
    """Decide whether u -> u o f is bijective Hom_H(Y, T) -> Hom_alpha(X, T) for all H-sets T of size <= bound."""
    H = f.alpha.target
    ident = GroupHom.identity(H)
    for T in small_targets(H, bound):
        homs = _equivariant_maps(f.target, T, ident)
        restricted = {tuple(u[y] for y in f.f) for u in homs}
        count = len(_equivariant_maps(f.source, T, f.alpha))
        if len(restricted) != len(homs) or len(restricted) != count:
            return CocartesianResult(False, T, len(homs), count)
    return CocartesianResult(True)


@dataclass(frozen=True)
class DoubleCoset:
    rep: int
    elements: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.elements)


def double_cosets(H: FiniteGroup, A: frozenset[int], B: frozenset[int]) -> list[DoubleCoset]:
    """The classes A r B with least-index representatives, in order of representative."""
    A, B = frozenset(A), frozenset(B)
    if not H.is_subgroup(A) or not H.is_subgroup(B):
        raise ValueError("double_cosets needs two subgroups")
    seen: set[int] = set()
    out = []
    for h in H:
        if h in seen:
            continue
        cls = frozenset(H.mul(H.mul(a, h), b) for a in A for b in B)
        seen |= cls
        out.append(DoubleCoset(h, cls))
    return out


def orbit_stabilizer(X: RightGSet, x: int) -> tuple[tuple[int, ...], frozenset[int]]:
    if not 0 <= x < X.size:
        raise IndexError(f"point {x} is not in a set of size {X.size}")
    return X.orbit(x), X.stabilizer(x)
