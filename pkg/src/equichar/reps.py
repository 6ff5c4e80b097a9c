"""Representations of Weil-level groups K x|_theta Z over a cyclotomic field.

A representation is the pair (rho_K, Phi): a homomorphism of K into invertible
matrices and an invertible matrix Phi with Phi rho(k) Phi^-1 = rho(theta(k)).  The
element (k, j) acts by rho(k) Phi^j.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .arith import WeilHom, WeilLevelGroup, WeilSubgroup
from .cyclotomic import CycloElem, CycloMatrix, FieldAut


class RepError(ValueError):
    pass


class WeilRep:
    __slots__ = ("group", "conductor", "rho", "frob", "dim", "_pows")

    def __init__(self, group: WeilLevelGroup, conductor: int, rho: Sequence[CycloMatrix], frob: CycloMatrix, check: bool = True):
        self.group = group
        self.conductor = conductor
        self.rho = tuple(rho)
        self.frob = frob
        self.dim = frob.nrows
        self._pows: dict[int, CycloMatrix] = {0: CycloMatrix.identity(conductor, self.dim), 1: frob}
        if check:
            self.validate()

    def __repr__(self):
        return f"WeilRep(dim={self.dim}, {self.group!r})"

    def validate(self):
        K, d, N = self.group.kernel, self.dim, self.conductor
        if len(self.rho) != K.order:
            raise RepError(f"rho_K has {len(self.rho)} matrices for a kernel of order {K.order}")
        for m in (*self.rho, self.frob):
            if m.shape != (d, d):
                raise RepError(f"matrix of shape {m.shape} in a representation of dimension {d}")
            if m.conductor != N:
                raise RepError(f"matrix over conductor {m.conductor}, expected {N}")
        if not self.rho[K.identity].is_identity():
            raise RepError("rho_K of the identity is not the identity matrix")
        for a in K:
            for b in K:
                if self.rho[a] @ self.rho[b] != self.rho[K.mul(a, b)]:
                    raise RepError(f"rho_K is not multiplicative on ({a}, {b})")
        if not self.frob.is_invertible():
            raise RepError("Frobenius matrix is not invertible")
        for k in K:
            if self.frob @ self.rho[k] != self.rho[self.group.theta[k]] @ self.frob:
                raise RepError(f"Frobenius does not intertwine rho_K and rho_K o theta at {k}")

    def frob_pow(self, j: int) -> CycloMatrix:
        p = self._pows.get(j)
        if p is not None:
            return p
        step = 1 if j > 0 else -1
        if step < 0 and -1 not in self._pows:
            self._pows[-1] = self.frob.inverse()
        base = self._pows[step]
        i = j
        while i not in self._pows:
            i -= step
        p = self._pows[i]
        while i != j:
            i += step
            p = p @ base
            self._pows[i] = p
        return p

    def value(self, w: tuple[int, int]) -> CycloMatrix:
        if w[1] == 0:
            return self.rho[w[0]]
        return self.rho[w[0]] @ self.frob_pow(w[1])

    def trace(self, w: tuple[int, int]) -> CycloElem:
        if w[1] == 0:
            return self.rho[w[0]].trace()
        return self.rho[w[0]].trace_product(self.frob_pow(w[1]))

    def char_values(self, window: range) -> dict[tuple[int, int], CycloElem]:
        return {(k, j): self.trace((k, j)) for j in window for k in self.group.kernel}


def zero_rep(group: WeilLevelGroup, conductor: int) -> WeilRep:
    z = CycloMatrix.zeros(conductor, 0)
    return WeilRep(group, conductor, [z] * group.kernel.order, z, check=False)


def unit_rep(group: WeilLevelGroup, conductor: int) -> WeilRep:
    one = CycloMatrix.identity(conductor, 1)
    return WeilRep(group, conductor, [one] * group.kernel.order, one, check=False)


def scalar_rep(group: WeilLevelGroup, conductor: int, character: Sequence, frob) -> WeilRep:
    """Rank one with rho(k) = character[k] and Phi = frob."""
    rho = [CycloMatrix(conductor, [[c]]) for c in character]
    return WeilRep(group, conductor, rho, CycloMatrix(conductor, [[frob]]))


def regular_rep(group: WeilLevelGroup, conductor: int) -> WeilRep:
    """K acting on functions on K by left translation, Phi by theta."""
    K = group.kernel
    n = K.order

    def perm_matrix(p):
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[p[i]][i] = 1
        return CycloMatrix(conductor, rows)

    rho = [perm_matrix([K.mul(k, e) for e in K]) for k in K]
    return WeilRep(group, conductor, rho, perm_matrix(group.theta), check=False)


def direct_sum(reps: Sequence[WeilRep], group: WeilLevelGroup | None = None, conductor: int | None = None) -> WeilRep:
    reps = [r for r in reps]
    if not reps:
        return zero_rep(group, conductor)
    g, N = reps[0].group, reps[0].conductor
    live = [r for r in reps if r.dim]
    if not live:
        return zero_rep(g, N)
    if len(live) == 1:
        return live[0]
    rho = [CycloMatrix.block_diag(N, [r.rho[k] for r in live]) for k in g.kernel]
    frob = CycloMatrix.block_diag(N, [r.frob for r in live])
    return WeilRep(g, N, rho, frob, check=False)


def tensor(a: WeilRep, b: WeilRep) -> WeilRep:
    return WeilRep(a.group, a.conductor, [a.rho[k].kron(b.rho[k]) for k in a.group.kernel], a.frob.kron(b.frob), check=False)


def dual(a: WeilRep) -> WeilRep:
    K = a.group.kernel
    rho = [a.rho[K.inv(k)].T for k in K]
    return WeilRep(a.group, a.conductor, rho, a.frob_pow(-1).T, check=False)


def twist(a: WeilRep, n: int, q: int) -> WeilRep:
    """Tate twist (n): Phi scaled by q^(-n n0)."""
    c = Fraction(q) ** (-n * a.group.frob_step)
    return WeilRep(a.group, a.conductor, a.rho, a.frob.scale(c), check=False)


def apply_sigma(a: WeilRep, sigma: FieldAut) -> WeilRep:
    return WeilRep(a.group, a.conductor, [sigma(m) for m in a.rho], sigma(a.frob), check=False)


def conjugate(a: WeilRep, P: CycloMatrix) -> WeilRep:
    """The isomorphic representation P^-1 rho P."""
    Pi = P.inverse()
    return WeilRep(a.group, a.conductor, [Pi @ m @ P for m in a.rho], Pi @ a.frob @ P, check=False)


def restrict(a: WeilRep, hom: WeilHom) -> WeilRep:
    """Pull a representation of hom.target back to hom.source."""
    K = hom.source.kernel
    rho = [a.value((hom.kmap[k], 0)) for k in K]
    return WeilRep(hom.source, a.conductor, rho, a.value(hom.gen_image), check=False)


def invariant_basis(a: WeilRep, subgroup) -> tuple[CycloMatrix, CycloMatrix]:
    """Columns spanning the vectors fixed by a subgroup of K, with a left inverse."""
    N = a.conductor
    sub = list(subgroup)
    if len(sub) <= 1 or a.dim == 0:
        I = CycloMatrix.identity(N, a.dim)
        return I, I
    P = a.rho[sub[0]]
    for s in sub[1:]:
        P = P + a.rho[s]
    P = P.scale(Fraction(1, len(sub)))
    B = P.colspace()
    return B, B.left_inverse()


def sub_rep(a: WeilRep, B: CycloMatrix, Binv: CycloMatrix, group: WeilLevelGroup | None = None) -> WeilRep:
    """The representation on the stable subspace with basis B."""
    N = a.conductor
    if B.ncols == 0:
        return zero_rep(group or a.group, N)
    rho = [Binv @ m @ B for m in a.rho]
    return WeilRep(group or a.group, N, rho, Binv @ a.frob @ B, check=False)


def invariants(a: WeilRep, subgroup) -> WeilRep:
    B, Binv = invariant_basis(a, subgroup)
    return sub_rep(a, B, Binv)


class Induced:
    """Ind_I^W U with basis s (x) u over a left transversal s of W / I."""

    def __init__(self, U: WeilRep, I: WeilSubgroup):
        self.U, self.I = U, I
        W = I.parent
        K = W.kernel
        self.transversal = I.left_transversal()
        self.position = {s: i for i, s in enumerate(self.transversal)}
        self._rep_of: list[dict[int, int]] = []
        for r in range(I.step):
            table = {}
            shifted = [W.theta_pow(r, k) for k in I.kpart]
            for a, rr in self.transversal:
                if rr == r:
                    for s in shifted:
                        table[K.mul(a, s)] = a
            self._rep_of.append(table)
        self._uvals: dict[tuple[int, int], CycloMatrix] = {}
        self.rep = self._build()

    def decompose(self, c: tuple[int, int]) -> tuple[int, tuple[int, int]]:
        """c = s' . h with s' in the transversal (returned by position) and h in I (local coordinates)."""
        I, W = self.I, self.I.parent
        K = W.kernel
        i, r = divmod(c[1], I.step)
        ci = I.gen_pow(i)[0]
        cprime = K.mul(c[0], K.inv(W.theta_pow(r, ci)))
        a = self._rep_of[r][cprime]
        b = W.theta_pow(-r, K.mul(K.inv(a), cprime))
        return self.position[(a, r)], (I.local_index[b], i)

    def _uvalue(self, h):
        v = self._uvals.get(h)
        if v is None:
            v = self.U.value(h)
            self._uvals[h] = v
        return v

    def matrix(self, w: tuple[int, int]) -> CycloMatrix:
        W, N, d = self.I.parent, self.U.conductor, self.U.dim
        n = len(self.transversal)
        zero = CycloElem.zero(N)
        rows = [[zero] * (n * d) for _ in range(n * d)]
        for col, s in enumerate(self.transversal):
            row, h = self.decompose(W.mul(w, s))
            block = self._uvalue(h)
            for a in range(d):
                ra = rows[row * d + a]
                for b in range(d):
                    ra[col * d + b] = block.rows[a][b]
        return CycloMatrix(N, rows)

    def _build(self) -> WeilRep:
        W = self.I.parent
        rho = [self.matrix((k, 0)) for k in W.kernel]
        return WeilRep(W, self.U.conductor, rho, self.matrix((W.kernel.identity, 1)), check=False)


def induce(U: WeilRep, I: WeilSubgroup) -> WeilRep:
    return Induced(U, I).rep


class Coinduced:
    """(alpha)_* L: invariants under the kernel, then induction from the image."""

    def __init__(self, a: WeilRep, hom: WeilHom):
        self.source_rep = a
        self.hom = hom
        self.kernel = hom.kernel()
        self.B, self.Binv = invariant_basis(a, self.kernel)
        self.image = hom.image()
        pre = {}
        for k in hom.source.kernel:
            pre.setdefault(hom.kmap[k], k)
        self.preimage = pre
        I = self.image
        N = a.conductor
        if self.B.ncols == 0:
            U = zero_rep(I.group, N)
        else:
            rho = [self.Binv @ a.rho[pre[k]] @ self.B for k in I.labels]
            U = WeilRep(I.group, N, rho, self.Binv @ a.frob @ self.B, check=False)
        self.U = U
        self.induced = Induced(U, I)
        self.rep = self.induced.rep


def coinduce(a: WeilRep, hom: WeilHom) -> WeilRep:
    return Coinduced(a, hom).rep


def character_window(total_rank: int) -> range:
    """Frobenius exponents that pin down a character difference of the given total rank."""
    return range(-total_rank, total_rank + 1)


def first_mismatch(a: WeilRep, b: WeilRep, window: range | None = None) -> tuple[int, int] | None:
    if window is None:
        window = character_window(max(a.dim, b.dim))
    for j in window:
        for k in a.group.kernel:
            if a.trace((k, j)) != b.trace((k, j)):
                return (k, j)
    return None


def same_character(a: WeilRep, b: WeilRep, window: range | None = None) -> bool:
    return first_mismatch(a, b, window) is None
