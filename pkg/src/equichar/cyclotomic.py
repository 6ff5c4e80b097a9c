"""Exact arithmetic in the cyclotomic field Q(zeta_N) and dense linear algebra over it.

An element is stored as an integer coefficient vector over a positive common
denominator, in the power basis 1, z, ..., z^(phi(N)-1) modulo the N-th
cyclotomic polynomial.  The representation is canonical, so equality is
coordinatewise.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class ConductorError(ValueError):
    """Raised for an invalid conductor or when mixing two conductors."""


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # b monic
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the n-th cyclotomic polynomial, by Mobius inversion."""
    if n < 1:
        raise ConductorError(f"conductor must be positive, got {n}")
    num, den = [1], [1]
    for d in range(1, n + 1):
        if n % d:
            continue
        mu = _mobius(n // d)
        factor = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _poly_mul(num, factor)
        elif mu == -1:
            den = _poly_mul(den, factor)
    return tuple(_poly_divexact(num, den))


def totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


class _Field:
    """Per-conductor tables: reductions of z^e for every residue e mod N."""

    __slots__ = ("n", "phi", "red", "units")

    def __init__(self, n: int):
        poly = cyclotomic_polynomial(n)
        phi = len(poly) - 1
        red = []
        cur = [1] + [0] * (phi - 1)
        for _ in range(n):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * p for c, p in zip(cur, poly)]
        self.n = n
        self.phi = phi
        self.red = tuple(red)
        self.units = tuple(k for k in range(1, n + 1) if math.gcd(k, n) == 1)

    def reduce(self, raw: Sequence[int]) -> list[int]:
        phi, n, red = self.phi, self.n, self.red
        out = list(raw[:phi]) + [0] * max(0, phi - len(raw))
        for e in range(phi, len(raw)):
            c = raw[e]
            if c:
                r = red[e % n]
                for i in range(phi):
                    if r[i]:
                        out[i] += c * r[i]
        return out


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    if not isinstance(n, int) or n < 1:
        raise ConductorError(f"conductor must be a positive integer, got {n!r}")
    return _Field(n)


def _canon(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums = [-c for c in nums]
        den = -den
    g = math.gcd(den, *nums)
    if g > 1:
        nums = [c // g for c in nums]
        den //= g
    return tuple(nums), den


class CycloElem:
    """An element of Q(zeta_N); immutable."""

    __slots__ = ("conductor", "num", "den", "_hash")

    def __init__(self, conductor: int, coeffs: Iterable = ()):
        F = _field(conductor)
        fr = [Fraction(c) for c in coeffs]
        if len(fr) > F.phi:
            raise ValueError(f"expected at most {F.phi} coefficients for conductor {conductor}, got {len(fr)}")
        fr += [Fraction(0)] * (F.phi - len(fr))
        den = math.lcm(*(c.denominator for c in fr)) if fr else 1
        nums, den = _canon([int(c * den) for c in fr], den)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "num", nums)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, conductor: int, nums: tuple[int, ...], den: int) -> "CycloElem":
        self = object.__new__(cls)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "num", nums)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)
        return self

    @classmethod
    def _make(cls, conductor: int, nums: list[int], den: int = 1) -> "CycloElem":
        nums_t, den = _canon(nums, den)
        return cls._raw(conductor, nums_t, den)

    def __setattr__(self, name, value):
        raise AttributeError("CycloElem is immutable")

    @classmethod
    def zero(cls, conductor: int) -> "CycloElem":
        return cls._raw(conductor, (0,) * _field(conductor).phi, 1)

    @classmethod
    def one(cls, conductor: int) -> "CycloElem":
        return cls.rational(conductor, 1)

    @classmethod
    def rational(cls, conductor: int, value) -> "CycloElem":
        v = Fraction(value)
        phi = _field(conductor).phi
        return cls._make(conductor, [v.numerator] + [0] * (phi - 1), v.denominator)

    @classmethod
    def zeta(cls, conductor: int, power: int = 1) -> "CycloElem":
        F = _field(conductor)
        return cls._raw(conductor, F.red[power % conductor], 1)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    @property
    def phi(self) -> int:
        return len(self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def _coerce(self, other) -> "CycloElem | None":
        if isinstance(other, CycloElem):
            if other.conductor != self.conductor:
                raise ConductorError(f"conductor mismatch: {self.conductor} vs {other.conductor}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloElem.rational(self.conductor, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return CycloElem._make(self.conductor, [a + b for a, b in zip(self.num, o.num)], self.den)
        return CycloElem._make(
            self.conductor, [a * o.den + b * self.den for a, b in zip(self.num, o.num)], self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloElem._raw(self.conductor, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = _field(self.conductor)
        nums = F.reduce(_poly_mul(self.num, o.num))
        return CycloElem._make(self.conductor, nums, self.den * o.den)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm down to Q."""
        prod = self
        for k in _field(self.conductor).units[1:]:
            prod = prod * apply_automorphism(FieldAut(self.conductor, k), self)
        return prod.to_fraction()

    def inverse(self) -> "CycloElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycloElem.rational(self.conductor, 1 / Fraction(self.num[0], self.den))
        conj = CycloElem.one(self.conductor)
        for k in _field(self.conductor).units[1:]:
            conj = conj * apply_automorphism(FieldAut(self.conductor, k), self)
        n = (self * conj).to_fraction()
        return conj * (1 / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloElem.one(self.conductor)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CycloElem):
            return self.conductor == other.conductor and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(Fraction(self.num[0], self.den)) if self.is_rational() else hash((self.conductor, self.num, self.den))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return format_elem(self)

    def __repr__(self):
        return f"CycloElem({self.conductor}, {format_elem(self)!r})"


def normalize(raw_coeffs: Sequence, conductor: int) -> CycloElem:
    """Reduce a polynomial in z (ascending coefficients) to its canonical form in Q(zeta_N)."""
    F = _field(conductor)
    fr = [Fraction(c) for c in raw_coeffs]
    den = math.lcm(*(c.denominator for c in fr)) if fr else 1
    ints = [int(c * den) for c in fr]
    folded = [0] * conductor
    for e, c in enumerate(ints):
        folded[e % conductor] += c
    return CycloElem._make(conductor, F.reduce(folded), den)


class FieldAut:
    """The automorphism z -> z^k of Q(zeta_N)."""

    __slots__ = ("conductor", "exponent")

    def __init__(self, conductor: int, exponent: int):
        _field(conductor)
        k = exponent % conductor
        if math.gcd(k, conductor) != 1 and conductor > 1:
            raise ValueError(f"exponent {exponent} is not a unit modulo {conductor}")
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "exponent", k if conductor > 1 else 1)

    def __setattr__(self, name, value):
        raise AttributeError("FieldAut is immutable")

    def __mul__(self, other: "FieldAut") -> "FieldAut":
        if other.conductor != self.conductor:
            raise ConductorError("conductor mismatch in composition")
        return FieldAut(self.conductor, self.exponent * other.exponent)

    def inverse(self) -> "FieldAut":
        if self.conductor == 1:
            return self
        return FieldAut(self.conductor, pow(self.exponent, -1, self.conductor))

    def __call__(self, x):
        if isinstance(x, CycloMatrix):
            return x.map(self)
        return apply_automorphism(self, x)

    def __eq__(self, other):
        return isinstance(other, FieldAut) and (self.conductor, self.exponent) == (other.conductor, other.exponent)

    def __hash__(self):
        return hash((self.conductor, self.exponent))

    def __repr__(self):
        return f"FieldAut({self.conductor}, {self.exponent})"

    @staticmethod
    def all(conductor: int) -> list["FieldAut"]:
        return [FieldAut(conductor, k) for k in _field(conductor).units]


def apply_automorphism(sigma: FieldAut, x: CycloElem) -> CycloElem:
    if sigma.conductor != x.conductor:
        raise ConductorError(f"conductor mismatch: automorphism {sigma.conductor}, element {x.conductor}")
    k = sigma.exponent
    if k == 1 or x.is_rational():
        return x
    F = _field(x.conductor)
    out = [0] * F.phi
    for i, c in enumerate(x.num):
        if c:
            r = F.red[(k * i) % F.n]
            for t in range(F.phi):
                if r[t]:
                    out[t] += c * r[t]
    return CycloElem._make(x.conductor, out, x.den)


# text syntax

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*)?)?
        (?P<z>z(?:\s*\^\s*(?P<exp>\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_elem(text: str, conductor: int) -> CycloElem:
    """Parse a polynomial string in z such as "3/2*z^2 - 1"."""
    if not isinstance(text, str):
        if isinstance(text, int) and not isinstance(text, bool):
            return CycloElem.rational(conductor, text)
        raise ValueError(f"expected a polynomial string, got {text!r}")
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial string")
    raw: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group("coef") is None and m.group("z") is None):
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing operator in {text!r} at position {pos}")
        first = False
        c = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            c = -c
        e = (int(m.group("exp")) if m.group("exp") else 1) if m.group("z") else 0
        raw[e] = raw.get(e, Fraction(0)) + c
        pos = m.end()
    top = max(raw)
    return normalize([raw.get(e, 0) for e in range(top + 1)], conductor)


def _format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_elem(x: CycloElem) -> str:
    """Canonical text: reduced form, ascending powers."""
    parts = []
    for e, c in enumerate(x.coeffs):
        if not c:
            continue
        mag = abs(c)
        if e == 0:
            body = _format_coef(mag)
        else:
            mono = "z" if e == 1 else f"z^{e}"
            body = mono if mag == 1 else f"{_format_coef(mag)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) or "0"


# matrices


def _coerce_entry(conductor: int, v) -> CycloElem:
    if isinstance(v, CycloElem):
        if v.conductor != conductor:
            raise ConductorError(f"entry of conductor {v.conductor} in a matrix of conductor {conductor}")
        return v
    if isinstance(v, str):
        return parse_elem(v, conductor)
    return CycloElem.rational(conductor, v)


class CycloMatrix:
    """A dense matrix over Q(zeta_N); immutable.  Products skip zero entries."""

    __slots__ = ("conductor", "rows", "nrows", "ncols", "_nz")

    def __init__(self, conductor: int, rows: Iterable[Iterable]):
        _field(conductor)
        conv = []
        for r in rows:
            conv.append(tuple(_coerce_entry(conductor, v) for v in r))
        widths = {len(r) for r in conv}
        if len(widths) > 1:
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "rows", tuple(conv))
        object.__setattr__(self, "nrows", len(conv))
        object.__setattr__(self, "ncols", widths.pop() if widths else 0)
        object.__setattr__(self, "_nz", None)

    @classmethod
    def _wrap(cls, conductor: int, rows: tuple, ncols: int) -> "CycloMatrix":
        self = object.__new__(cls)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "_nz", None)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("CycloMatrix is immutable")

    # constructors

    @classmethod
    def zeros(cls, conductor: int, nrows: int, ncols: int | None = None) -> "CycloMatrix":
        ncols = nrows if ncols is None else ncols
        z = CycloElem.zero(conductor)
        return cls._wrap(conductor, tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, conductor: int, n: int) -> "CycloMatrix":
        return cls.scalar(conductor, n, CycloElem.one(conductor))

    @classmethod
    def scalar(cls, conductor: int, n: int, value) -> "CycloMatrix":
        z = CycloElem.zero(conductor)
        v = value if isinstance(value, CycloElem) else CycloElem.rational(conductor, value)
        return cls._wrap(conductor, tuple(tuple(v if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def diag(cls, conductor: int, values: Sequence) -> "CycloMatrix":
        z = CycloElem.zero(conductor)
        n = len(values)
        vals = [_coerce_entry(conductor, v) for v in values]
        return cls._wrap(conductor, tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def block_diag(cls, conductor: int, blocks: Sequence["CycloMatrix"]) -> "CycloMatrix":
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        z = CycloElem.zero(conductor)
        rows = []
        off = 0
        for b in blocks:
            for r in b.rows:
                rows.append((z,) * off + r + (z,) * (m - off - b.ncols))
            off += b.ncols
        return cls._wrap(conductor, tuple(rows), m) if rows else cls.zeros(conductor, n, m)

    @classmethod
    def from_blocks(cls, conductor: int, grid: Sequence[Sequence["CycloMatrix"]]) -> "CycloMatrix":
        rows = []
        for brow in grid:
            for i in range(brow[0].nrows):
                rows.append(tuple(v for b in brow for v in b.rows[i]))
        ncols = sum(b.ncols for b in grid[0]) if grid else 0
        return cls._wrap(conductor, tuple(rows), ncols)

    @classmethod
    def parse(cls, conductor: int, rows: Sequence[Sequence[str]]) -> "CycloMatrix":
        return cls(conductor, [[parse_elem(v, conductor) for v in r] for r in rows])

    # basic access

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j: int) -> tuple[CycloElem, ...]:
        return tuple(r[j] for r in self.rows)

    def _nonzero(self):
        nz = self._nz
        if nz is None:
            nz = tuple(tuple((j, v) for j, v in enumerate(r) if not v.is_zero()) for r in self.rows)
            object.__setattr__(self, "_nz", nz)
        return nz

    def to_strings(self) -> list[list[str]]:
        return [[format_elem(v) for v in r] for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, CycloMatrix) and self.conductor == other.conductor and self.rows == other.rows

    def __hash__(self):
        return hash((self.conductor, self.rows))

    def __repr__(self):
        return f"CycloMatrix({self.conductor}, {self.to_strings()})"

    # arithmetic

    def _check(self, other: "CycloMatrix"):
        if other.conductor != self.conductor:
            raise ConductorError(f"conductor mismatch: {self.conductor} vs {other.conductor}")

    def __add__(self, other: "CycloMatrix") -> "CycloMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return CycloMatrix._wrap(
            self.conductor, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols
        )

    def __neg__(self):
        return CycloMatrix._wrap(self.conductor, tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def __sub__(self, other: "CycloMatrix") -> "CycloMatrix":
        return self + (-other)

    def scale(self, c) -> "CycloMatrix":
        if not isinstance(c, CycloElem):
            c = CycloElem.rational(self.conductor, c)
        return CycloMatrix._wrap(self.conductor, tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other: "CycloMatrix") -> "CycloMatrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        N = self.conductor
        F = _field(N)
        phi = F.phi
        bnz = other._nonzero()
        zero = CycloElem.zero(N)
        out_rows = []
        for arow in self._nonzero():
            acc: dict[int, dict[int, list[int]]] = {}
            for k, a in arow:
                for j, b in bnz[k]:
                    prod = F.reduce(_poly_mul(a.num, b.num)) if phi > 1 else [a.num[0] * b.num[0]]
                    d = a.den * b.den
                    slot = acc.setdefault(j, {})
                    cur = slot.get(d)
                    if cur is None:
                        slot[d] = prod
                    else:
                        for t in range(phi):
                            cur[t] += prod[t]
            row = [zero] * other.ncols
            for j, slot in acc.items():
                if len(slot) == 1:
                    (d, nums), = slot.items()
                else:
                    d = math.lcm(*slot)
                    nums = [0] * phi
                    for dd, v in slot.items():
                        f = d // dd
                        for t in range(phi):
                            nums[t] += v[t] * f
                row[j] = CycloElem._make(N, nums, d)
            out_rows.append(tuple(row))
        return CycloMatrix._wrap(N, tuple(out_rows), other.ncols)

    def transpose(self) -> "CycloMatrix":
        return CycloMatrix._wrap(self.conductor, tuple(zip(*self.rows)) if self.nrows else (), self.nrows)

    @property
    def T(self) -> "CycloMatrix":
        return self.transpose()

    def kron(self, other: "CycloMatrix") -> "CycloMatrix":
        self._check(other)
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append(tuple(a * b for a in r for b in s))
        return CycloMatrix._wrap(self.conductor, tuple(rows), self.ncols * other.ncols)

    def map(self, sigma: FieldAut) -> "CycloMatrix":
        return CycloMatrix._wrap(
            self.conductor, tuple(tuple(apply_automorphism(sigma, a) for a in r) for r in self.rows), self.ncols
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "CycloMatrix":
        return CycloMatrix._wrap(self.conductor, tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def trace(self) -> CycloElem:
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        total = CycloElem.zero(self.conductor)
        for i in range(self.nrows):
            total = total + self.rows[i][i]
        return total

    def trace_product(self, other: "CycloMatrix") -> CycloElem:
        """Tr(self @ other) without forming the product."""
        total = CycloElem.zero(self.conductor)
        cols = other.rows
        for i, r in enumerate(self._nonzero()):
            for k, a in r:
                b = cols[k][i]
                if not b.is_zero():
                    total = total + a * b
        return total

    def is_zero(self) -> bool:
        return all(not r for r in self._nonzero())

    def is_identity(self) -> bool:
        return self.is_square() and self == CycloMatrix.identity(self.conductor, self.nrows)

    def __pow__(self, n: int) -> "CycloMatrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloMatrix.identity(self.conductor, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    # elimination

    def rref(self) -> tuple["CycloMatrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns."""
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            p = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            inv = rows[r][c].inverse()
            rows[r] = [v * inv for v in rows[r]]
            for i in range(len(rows)):
                if i != r and not rows[i][c].is_zero():
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return CycloMatrix._wrap(self.conductor, tuple(tuple(x) for x in rows), self.ncols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> CycloElem:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        rows = [list(r) for r in self.rows]
        n = self.nrows
        det = CycloElem.one(self.conductor)
        for c in range(n):
            p = next((i for i in range(c, n) if not rows[i][c].is_zero()), None)
            if p is None:
                return CycloElem.zero(self.conductor)
            if p != c:
                rows[c], rows[p] = rows[p], rows[c]
                det = -det
            piv = rows[c][c]
            det = det * piv
            inv = piv.inverse()
            for i in range(c + 1, n):
                if not rows[i][c].is_zero():
                    f = rows[i][c] * inv
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
        return det

    def inverse(self) -> "CycloMatrix":
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = CycloMatrix.from_blocks(self.conductor, [[self, CycloMatrix.identity(self.conductor, n)]])
        red, piv = aug.rref()
        if piv[:n] != tuple(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return red.submatrix(range(n), range(n, 2 * n))

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.nrows

    def nullspace(self) -> "CycloMatrix":
        """Matrix whose columns form a basis of the right kernel."""
        red, piv = self.rref()
        free = [c for c in range(self.ncols) if c not in piv]
        zero, one = CycloElem.zero(self.conductor), CycloElem.one(self.conductor)
        cols = []
        for f in free:
            v = [zero] * self.ncols
            v[f] = one
            for i, p in enumerate(piv):
                v[p] = -red.rows[i][f]
            cols.append(v)
        if not cols:
            return CycloMatrix.zeros(self.conductor, self.ncols, 0)
        return CycloMatrix._wrap(self.conductor, tuple(zip(*cols)), len(cols))

    def colspace(self) -> "CycloMatrix":
        """Matrix whose columns are the pivot columns, a basis of the column space."""
        _, piv = self.rref()
        return self.submatrix(range(self.nrows), piv)

    def left_inverse(self) -> "CycloMatrix":
        """For full column rank, a matrix L with L @ self = identity."""
        _, piv = self.transpose().rref()
        if len(piv) != self.ncols:
            raise ValueError("matrix does not have full column rank")
        sub_inv = self.submatrix(piv, range(self.ncols)).inverse()
        zero = CycloElem.zero(self.conductor)
        rows = []
        for i in range(self.ncols):
            row = [zero] * self.nrows
            for t, p in enumerate(piv):
                row[p] = sub_inv.rows[i][t]
            rows.append(tuple(row))
        return CycloMatrix._wrap(self.conductor, tuple(rows), self.nrows)


def char_poly(M: CycloMatrix) -> tuple[CycloElem, ...]:
    """Characteristic polynomial det(t - M), ascending coefficients, monic (Faddeev-LeVerrier)."""
    if not M.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n, N = M.nrows, M.conductor
    coeffs = [CycloElem.zero(N)] * (n + 1)
    coeffs[n] = CycloElem.one(N)
    ident = CycloMatrix.identity(N, n)
    prev = CycloMatrix.zeros(N, n)
    for k in range(1, n + 1):
        cur = M @ prev + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(M.trace_product(cur)) / k
        prev = cur
    return tuple(coeffs)


def poly_eval_matrix(coeffs: Sequence[CycloElem], M: CycloMatrix) -> CycloMatrix:
    n = M.nrows
    acc = CycloMatrix.zeros(M.conductor, n)
    ident = CycloMatrix.identity(M.conductor, n)
    for c in reversed(coeffs):
        acc = M @ acc + ident.scale(c)
    return acc


def companion(conductor: int, coeffs: Sequence) -> CycloMatrix:
    """Companion matrix of the monic polynomial with the given ascending lower coefficients."""
    n = len(coeffs)
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        c = coeffs[i]
        rows[i][n - 1] = -_coerce_entry(conductor, c)
    return CycloMatrix(conductor, rows)
