"""Seeded property suites shared by the command line and the test-suite.

Every suite returns a SuiteResult with the number of cases run and a list of
JSON-ready failure records; a suite passes when that list is empty.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .arith import BaseField, GaloisGSet, Morphism, base_change_image, divisible_degree_subgroup, point_hom
from .catalog import morphism_zoo, random_finite_rep, random_sheaf, random_weil_rep
from .compat import CompatSystem, check_compatibility, check_compatibility_truncated
from .cyclotomic import format_elem
from .descent import build_descent, descent_criterion, scholie_table
from .groups import FiniteGroup, RightGSet, all_homomorphisms, double_cosets
from .reps import regular_rep
from .sheaves import (
    EquivariantSheaf,
    VirtualClass,
    adjunction_check,
    class_mismatch,
    coinduced_trace_check,
    dual,
    mackey_decompose,
    pullback,
    pushforward,
    quotient_structure,
)


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"suite": self.name, "cases": self.cases, "failures": self.failures, "passed": self.passed}


def point_over(G: FiniteGroup, base: BaseField) -> GaloisGSet:
    return GaloisGSet(RightGSet.trivial(G, 1), [0], base, check=False)


def _mismatch_record(mm) -> dict:
    x, k, j, a, b = mm
    return {"point": x, "k": k, "j": j, "values": [format_elem(a), format_elem(b)]}


def mackey_suite(groups: dict[str, FiniteGroup], base: BaseField, conductor: int, seed: int, rechoices: int = 0) -> SuiteResult:
    """g^* f_! against the double-coset sum for every ordered pair of subgroups."""
    rng = random.Random(seed)
    res = SuiteResult("mackey")
    for gname, H in groups.items():
        Y = point_over(H, base)
        subs = sorted(H.subgroups(), key=lambda S: (len(S), sorted(S)))
        incs = [(S, *H.subgroup_group(S)) for S in subs]
        for A, GA, ia in incs:
            XA = point_over(GA, base)
            f = Morphism(XA, Y, [0], ia, check=False)
            for B, GB, ib in incs:
                YB = point_over(GB, base)
                g = Morphism(YB, Y, [0], ib, check=False)
                L = EquivariantSheaf(XA, conductor, [random_weil_rep(rng, XA.weil_group(0), conductor, 2)], check=False)
                out = mackey_decompose(f, g, L)
                res.cases += 1
                mm = out.mismatch()
                if mm is not None:
                    res.failures.append({"group": gname, "A": sorted(A), "B": sorted(B), **_mismatch_record(mm)})
    if rechoices:
        res.failures += mackey_rechoice(groups, base, conductor, rng, rechoices, res)
    return res


def mackey_rechoice(groups, base, conductor, rng: random.Random, count: int, res: SuiteResult | None = None) -> list[dict]:
    """Summands computed from random double-coset representatives match the default ones."""
    failures = []
    names = sorted(groups)
    for _ in range(count):
        gname = rng.choice(names)
        H = groups[gname]
        subs = H.subgroups()
        A, B = rng.choice(subs), rng.choice(subs)
        GA, ia = H.subgroup_group(A)
        GB, ib = H.subgroup_group(B)
        Y = point_over(H, base)
        XA, YB = point_over(GA, base), point_over(GB, base)
        f = Morphism(XA, Y, [0], ia, check=False)
        g = Morphism(YB, Y, [0], ib, check=False)
        L = EquivariantSheaf(XA, conductor, [random_weil_rep(rng, XA.weil_group(0), conductor, 2)], check=False)
        cosets = double_cosets(H, A, B)
        reps = [rng.choice(sorted(c.elements)) for c in cosets]
        first = mackey_decompose(f, g, L)
        second = mackey_decompose(f, g, L, reps)
        if res is not None:
            res.cases += 1
        for (_, s1), (_, s2), r in zip(first.summands, second.summands, reps):
            mm = class_mismatch(VirtualClass.of(s1), VirtualClass.of(s2))
            if mm is not None:
                failures.append({"group": gname, "A": sorted(A), "B": sorted(B), "rep": r, **_mismatch_record(mm)})
    return failures


def scholie_suite(sheaves: dict[str, EquivariantSheaf], degrees: Iterable[int] = range(1, 5)) -> SuiteResult:
    """Twisted traces on L against plain traces on the untwisted sheaf, every g and every listed m."""
    res = SuiteResult("scholie")
    degrees = list(degrees)
    for name, L in sheaves.items():
        X = L.base
        D = max(max(L.ranks(), default=0), 1)
        window = range(-D, D + 1)
        for m in degrees:
            for g in X.group:
                Dm = build_descent(X, m, g)
                for z, q, j, lhs, rhs in scholie_table(Dm, L, window):
                    res.cases += 1
                    if lhs != rhs:
                        res.failures.append({"sheaf": name, "m": m, "g": g, "z": z, "q": q, "j": j, "values": [format_elem(lhs), format_elem(rhs)]})
    return res


def duality_suite(sheaves: dict[str, EquivariantSheaf]) -> SuiteResult:
    """D D L = L, and D f_! L = f_* D L for every morphism in the construction zoo."""
    res = SuiteResult("duality")
    for name, L in sheaves.items():
        res.cases += 1
        mm = class_mismatch(VirtualClass.of(dual(dual(L))), VirtualClass.of(L))
        if mm is not None:
            res.failures.append({"sheaf": name, "check": "biduality", **_mismatch_record(mm)})
        for mname, m in morphism_zoo(L.base).items():
            LL = L if m.source is L.base else pullback(m, L)
            a = dual(pushforward(m, LL))
            b = pushforward(m, dual(LL))
            res.cases += 1
            mm = class_mismatch(VirtualClass.of(a), VirtualClass.of(b))
            if mm is not None:
                res.failures.append({"sheaf": name, "check": f"dual/pushforward along {mname}", **_mismatch_record(mm)})
    return res


def regular_sheaf(X: GaloisGSet, conductor: int) -> EquivariantSheaf:
    """Every stalk the regular representation of its stabilizer kernel."""
    return EquivariantSheaf(X, conductor, [regular_rep(P.group, conductor) for P in X.points()], check=False)


def adjunction_suite(morphisms: dict[str, Morphism], conductor: int, seed: int) -> SuiteResult:
    """Unit invertible on quotients; counit invertible exactly when the kernel acts freely."""
    rng = random.Random(seed)
    res = SuiteResult("adjunction")
    for name, m in morphisms.items():
        quotient, free, _ = quotient_structure(m)
        if not quotient:
            continue
        K = random_sheaf(rng, m.target, conductor, 2, allow_zero=False)
        # with fixed points, the regular stalks are where the counit must fail
        L = random_sheaf(rng, m.source, conductor, 2, allow_zero=False) if free else regular_sheaf(m.source, conductor)
        rep = adjunction_check(m, K, L)
        res.cases += 1
        problems = []
        if not (rep.unit_invertible and rep.unit_equivariant):
            problems.append("unit is not an equivariant isomorphism")
        if not rep.counit_equivariant:
            problems.append("counit is not equivariant")
        if rep.counit_invertible != free:
            problems.append(f"counit invertible={rep.counit_invertible} but free={free}")
        if problems:
            res.failures.append({"morphism": name, "problems": problems})
    return res


def point_hom_suite(morphisms: dict[str, Morphism], gsets: dict[str, GaloisGSet], degrees: Iterable[int] = range(1, 5)) -> SuiteResult:
    """Point homomorphisms of quotients are onto (one-to-one as well for free kernels); base-change images."""
    res = SuiteResult("point_hom")
    for name, m in morphisms.items():
        quotient, free, _ = quotient_structure(m)
        if not quotient:
            continue
        for P in m.source.points():
            hom, _ = point_hom(m, P.index)
            res.cases += 1
            if not hom.is_surjective():
                res.failures.append({"morphism": name, "point": P.index, "problem": "not surjective"})
            elif free and not hom.is_bijective():
                res.failures.append({"morphism": name, "point": P.index, "problem": "not bijective over a free kernel"})
    for name, X in gsets.items():
        for P in X.points():
            for mdeg in degrees:
                res.cases += 1
                img = base_change_image(X, P.index, mdeg)
                if not img.same_as(divisible_degree_subgroup(P.group, mdeg)):
                    res.failures.append({"gset": name, "point": P.index, "m": mdeg, "problem": "base-change image differs"})
    return res


def coinduction_suite(groups: dict[str, FiniteGroup], conductor: int, seed: int, reps_per_hom: int = 3) -> SuiteResult:
    """Trace of a coinduced representation against the fixed-point sum, every homomorphism between listed groups."""
    rng = random.Random(seed)
    res = SuiteResult("coinduction")
    names = sorted(groups)
    for a in names:
        for b in names:
            for alpha in all_homomorphisms(groups[a], groups[b]):
                for _ in range(reps_per_hom):
                    rho = random_finite_rep(rng, groups[a], conductor, 3)
                    for g in groups[b]:
                        lhs, rhs = coinduced_trace_check(alpha, rho, g, conductor)
                        res.cases += 1
                        if lhs != rhs:
                            res.failures.append({"source": a, "target": b, "images": list(alpha.images), "g": g, "values": [format_elem(lhs), format_elem(rhs)]})
    return res


def truncation_suite(systems: dict[str, CompatSystem], starts: Sequence[int] = (1, 2, 5)) -> SuiteResult:
    res = SuiteResult("truncation")
    for name, S in systems.items():
        full = check_compatibility(S).compatible
        for n in starts:
            res.cases += 1
            if check_compatibility_truncated(S, n).compatible != full:
                res.failures.append({"system": name, "N": n, "full": full})
    return res


def descent_suite(systems: dict[str, CompatSystem]) -> SuiteResult:
    res = SuiteResult("descent")
    for name, S in systems.items():
        res.cases += 1
        direct = check_compatibility(S).compatible
        verdict = descent_criterion(S)
        if verdict.compatible != direct:
            res.failures.append({"system": name, "direct": direct, "descent": verdict.compatible})
    return res


SUITES = ("mackey", "scholie", "duality", "adjunction", "point_hom", "coinduction", "truncation", "descent")
