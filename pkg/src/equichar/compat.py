"""Compatibility of lambda-indexed systems of virtual classes.

Each member of a system comes with a field automorphism sigma_lambda standing
in for its embedding.  A system is compatible when, at every closed point and
every stabilizer element, the untwisted traces sigma_lambda^-1(t_lambda) agree.
Trace sequences j -> Tr(rho(k) Phi^j) obey a linear recurrence of order at
most the total rank, so a window of 2D + 1 consecutive exponents, D the
largest total rank at the point, decides agreement for all j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .arith import GaloisGSet, Morphism
from .cyclotomic import CycloElem, FieldAut
from .sheaves import (
    EquivariantSheaf,
    VirtualClass,
    apply_sigma,
    dual,
    extend_by_zero,
    inertia_invariants_class,
    nearby_cycles_point,
    pullback,
    pushforward,
    tate_twist,
)


class CompatError(ValueError):
    pass


class CompatSystem:
    def __init__(self, sigmas: Sequence[FieldAut], objects: Sequence[VirtualClass], labels: Sequence[str] | None = None):
        self.sigmas = tuple(sigmas)
        self.objects = tuple(VirtualClass.of(o) if isinstance(o, EquivariantSheaf) else o for o in objects)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(len(self.objects)))
        if not self.objects:
            raise CompatError("a system needs at least one member")
        if len(self.sigmas) != len(self.objects) or len(self.labels) != len(self.objects):
            raise CompatError("one automorphism and one label per member")
        base, N = self.objects[0].base, self.objects[0].conductor
        for lab, o, s in zip(self.labels, self.objects, self.sigmas):
            if o.base is not base:
                raise CompatError(f"member {lab} lives on a different Galois G-set")
            if o.conductor != N:
                raise CompatError(f"member {lab} has conductor {o.conductor}, expected {N}")
            if s.conductor != N:
                raise CompatError(f"automorphism of member {lab} has conductor {s.conductor}, expected {N}")

    def __len__(self):
        return len(self.objects)

    def __repr__(self):
        return f"CompatSystem({len(self)} members, N={self.conductor})"

    @property
    def base(self) -> GaloisGSet:
        return self.objects[0].base

    @property
    def conductor(self) -> int:
        return self.objects[0].conductor

    def max_total_rank(self, x: int) -> int:
        return max(o.total_rank(x) for o in self.objects)

    def window(self, x: int) -> range:
        D = self.max_total_rank(x)
        return range(-D, D + 1)

    def map(self, fn) -> "CompatSystem":
        return CompatSystem(self.sigmas, [fn(o) for o in self.objects], self.labels)

    def subsystem(self, idx: Sequence[int]) -> "CompatSystem":
        return CompatSystem([self.sigmas[i] for i in idx], [self.objects[i] for i in idx], [self.labels[i] for i in idx])


def sigma_twist_system(L, sigmas: Sequence[FieldAut]) -> CompatSystem:
    """The system sigma_lambda(L): compatible by construction."""
    V = VirtualClass.of(L) if isinstance(L, EquivariantSheaf) else L
    return CompatSystem(sigmas, [V.map(lambda s, sg=sg: apply_sigma(s, sg), base=V.base) for sg in sigmas])


def _order(window: range) -> list[int]:
    """0, 1, -1, 2, -2, ... restricted to the window."""
    js = sorted(window, key=lambda j: (abs(j), j < 0))
    return js


@dataclass
class TraceTable:
    entries: dict[tuple[int, int, int], tuple[CycloElem, ...]]
    windows: dict[int, range]


def trace_table(S: CompatSystem, windows: dict[int, range] | None = None) -> TraceTable:
    if windows is None:
        windows = {P.index: S.window(P.index) for P in S.base.points()}
    entries = {}
    for P in S.base.points():
        for j in _order(windows[P.index]):
            for k in P.group.kernel:
                entries[(P.index, k, j)] = tuple(o.trace(P.index, (k, j)) for o in S.objects)
    return TraceTable(entries, windows)


@dataclass
class Witness:
    point: int
    k: int
    j: int
    pair: tuple[str, str]
    values: tuple[CycloElem, CycloElem]
    untwisted: tuple[CycloElem, CycloElem]

    def as_dict(self) -> dict:
        from .cyclotomic import format_elem

        return {
            "point": self.point,
            "k": self.k,
            "j": self.j,
            "pair": list(self.pair),
            "values": [format_elem(v) for v in self.values],
            "untwisted": [format_elem(v) for v in self.untwisted],
        }


@dataclass
class Verdict:
    compatible: bool
    witness: Witness | None = None
    entries_checked: int = 0
    common_values: dict = field(default_factory=dict)

    def __bool__(self):
        return self.compatible


def _check(S: CompatSystem, windows: dict[int, range], keep: bool = False) -> Verdict:
    inv = [s.inverse() for s in S.sigmas]
    count = 0
    common = {}
    for P in S.base.points():
        for j in _order(windows[P.index]):
            for k in P.group.kernel:
                vals = [o.trace(P.index, (k, j)) for o in S.objects]
                un = [s(v) for s, v in zip(inv, vals)]
                count += 1
                for b in range(1, len(un)):
                    if un[b] != un[0]:
                        w = Witness(P.index, k, j, (S.labels[0], S.labels[b]), (vals[0], vals[b]), (un[0], un[b]))
                        return Verdict(False, w, count)
                if keep:
                    common[(P.index, k, j)] = un[0]
    return Verdict(True, None, count, common)


def check_compatibility(S: CompatSystem, keep: bool = False, windows: dict[int, range] | None = None) -> Verdict:
    """sigma-untwisted traces agree across the system on the certifying window at every point.

    ``windows`` overrides the exponent range per closed point; a range shorter
    than the certifying one gives an uncertified verdict.
    """
    if windows is None:
        windows = {P.index: S.window(P.index) for P in S.base.points()}
    return _check(S, windows, keep)


def check_compatibility_truncated(S: CompatSystem, N: int) -> Verdict:
    """The same test using only Frobenius exponents j >= N (a window of 2D + 1 of them)."""
    windows = {}
    for P in S.base.points():
        D = S.max_total_rank(P.index)
        windows[P.index] = range(N, N + 2 * D + 1)
    return _check(S, windows)


def check_compatibility_local(S: CompatSystem) -> Verdict:
    """Compatibility over a local base; the stabilizer kernels already include the inertia elements."""
    if not S.base.is_local:
        raise CompatError("local compatibility needs a local base; use check_compatibility")
    return check_compatibility(S)


def pairwise_compatible(S: CompatSystem) -> bool:
    n = len(S)
    return all(check_compatibility(S.subsystem([a, b])).compatible for a in range(n) for b in range(a + 1, n))


def class_arithmetic(a: VirtualClass, b: VirtualClass, op: str) -> VirtualClass:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    raise CompatError(f"unknown class operation {op!r}")


# closure under operations

OPERATIONS = (
    "tensor",
    "hom",
    "dual",
    "pullback",
    "pushforward",
    "extend_by_zero",
    "tate_twist",
    "inertia_invariants",
    "nearby_cycles_point",
    "untwist",
)


@dataclass
class Operation:
    name: str
    morphism: Morphism | None = None
    other: CompatSystem | None = None
    n: int = -1
    m: int = 1
    g: int = 0


@dataclass
class ClosureReport:
    operation: str
    input_compatible: bool
    output_compatible: bool
    witness: Witness | None

    @property
    def passed(self) -> bool:
        return (not self.input_compatible) or self.output_compatible


def apply_operation(S: CompatSystem, op: Operation) -> CompatSystem:
    name = op.name
    if name in ("tensor", "hom"):
        other = op.other if op.other is not None else S
        if len(other) != len(S) or other.sigmas != S.sigmas:
            raise CompatError("binary operations need systems with the same automorphisms")
        if name == "tensor":
            objs = [a.tensor(b) for a, b in zip(S.objects, other.objects)]
        else:
            objs = [a.map(dual).tensor(b) for a, b in zip(S.objects, other.objects)]
        return CompatSystem(S.sigmas, objs, S.labels)
    if name == "dual":
        return S.map(lambda V: V.map(dual, base=V.base))
    if name == "pullback":
        return S.map(lambda V: V.map(lambda s: pullback(op.morphism, s), base=op.morphism.source))
    if name == "pushforward":
        return S.map(lambda V: V.map(lambda s: pushforward(op.morphism, s), base=op.morphism.target))
    if name == "extend_by_zero":
        return S.map(lambda V: V.map(lambda s: extend_by_zero(op.morphism, s), base=op.morphism.target))
    if name == "tate_twist":
        return S.map(lambda V: V.map(lambda s: tate_twist(s, op.n), base=V.base))
    if name == "inertia_invariants":
        return S.map(inertia_invariants_class)
    if name == "nearby_cycles_point":
        from .sheaves import inertia_quotient

        Xs, _ = inertia_quotient(S.base)
        return S.map(lambda V: V.map(nearby_cycles_point, base=Xs))
    if name == "untwist":
        from .descent import build_descent, untwist_class

        D = build_descent(S.base, op.m, op.g)
        return S.map(lambda V: untwist_class(D, V))
    raise CompatError(f"unknown operation {name!r}")


def closure_harness(S: CompatSystem, op: Operation) -> ClosureReport:
    before = check_compatibility(S)
    after = check_compatibility(apply_operation(S, op))
    return ClosureReport(op.name, before.compatible, after.compatible, after.witness)
