"""JSON manifests: parsing with path-precise errors, and serialization back.

A manifest fixes one conductor N for every cyclotomic entry and names its
entities::

    {
      "conductor": 5,
      "seed": 0,
      "base": {"p": 7, "f": 1, "kind": "finite"},
      "groups": {"G": {"cayley": [[0, 1], [1, 0]]}},
      "gsets": {"X": {"group": "G", "points": 2, "frobenius": [0, 1],
                      "g_action": [[0, 1], [1, 0]]}},
      "morphisms": {"f": {"source": "X", "target": "Y", "map": [0, 0],
                          "alpha": [0, 0], "degree": 1}},
      "sheaves": {"L": {"gset": "X", "stalks": [
          {"dim": 1, "rho_K": {"0": [["1"]]}, "frob": [["z"]]}]}},
      "systems": {"S": {"members": [{"sheaf": "L", "sigma": 1},
                                    {"plus": ["L"], "minus": [], "sigma": 2}]}}
    }

Group elements are the row indices of the Cayley table; for
``perm_generators`` they are numbered in breadth-first closure order from the
identity.  ``rho_K`` is keyed by the elements of the stabilizer kernel at the
basepoint of each closed point: ``"g"`` over a finite base, ``"g,q"`` when an
inertia group is present.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .arith import BaseField, GaloisGSet, InertiaData, Morphism
from .compat import CompatSystem
from .cyclotomic import CycloMatrix, FieldAut, parse_elem
from .groups import FiniteGroup, GroupHom, RightGSet, cycles_to_perm
from .reps import RepError, WeilRep
from .sheaves import EquivariantSheaf, VirtualClass

MANIFEST_DIR_ENV = "EQUICHAR_MANIFEST_DIR"

E_SYNTAX = "E_SYNTAX"
E_SCHEMA = "E_SCHEMA"
E_REF = "E_REF"
E_INVARIANT = "E_INVARIANT"


class ManifestError(ValueError):
    def __init__(self, code: str, path: str, message: str):
        self.code, self.path, self.message = code, path, message
        super().__init__(f"{code} at {path}: {message}")

    def as_dict(self) -> dict:
        return {"code": self.code, "path": self.path, "message": self.message}


@dataclass
class Manifest:
    conductor: int
    base: BaseField
    seed: int = 0
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    gsets: dict[str, GaloisGSet] = field(default_factory=dict)
    morphisms: dict[str, Morphism] = field(default_factory=dict)
    sheaves: dict[str, EquivariantSheaf] = field(default_factory=dict)
    systems: dict[str, CompatSystem] = field(default_factory=dict)
    source: str | None = None

    def lookup(self, kind: str, name: str):
        table = getattr(self, kind)
        if name not in table:
            known = ", ".join(sorted(table)) or "none"
            raise ManifestError(E_REF, f"{kind}.{name}", f"no such entry (known: {known})")
        return table[name]


def resolve_path(path: str | os.PathLike) -> Path:
    p = Path(path)
    if p.exists() or p.is_absolute():
        return p
    root = os.environ.get(MANIFEST_DIR_ENV)
    if root:
        alt = Path(root) / p
        if alt.exists():
            return alt
    return p


def parse_manifest(path: str | os.PathLike) -> Manifest:
    p = resolve_path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ManifestError(E_SYNTAX, str(path), f"cannot read file: {exc.strerror or exc}") from None
    m = parse_manifest_text(text)
    m.source = str(p)
    return m


def parse_manifest_text(text: str) -> Manifest:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(E_SYNTAX, f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return build_manifest(doc)


# schema helpers


def _obj(v, path) -> dict:
    if not isinstance(v, dict):
        raise ManifestError(E_SCHEMA, path, f"expected an object, got {type(v).__name__}")
    return v


def _list(v, path) -> list:
    if not isinstance(v, list):
        raise ManifestError(E_SCHEMA, path, f"expected an array, got {type(v).__name__}")
    return v


def _int(v, path, lo: int | None = None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ManifestError(E_SCHEMA, path, f"expected an integer, got {json.dumps(v)}")
    if lo is not None and v < lo:
        raise ManifestError(E_SCHEMA, path, f"expected an integer >= {lo}, got {v}")
    return v


def _str(v, path) -> str:
    if not isinstance(v, str):
        raise ManifestError(E_SCHEMA, path, f"expected a string, got {json.dumps(v)}")
    return v


def _need(d: dict, key: str, path: str):
    if key not in d:
        raise ManifestError(E_SCHEMA, f"{path}.{key}", "required field is missing")
    return d[key]


def _no_extra(d: dict, allowed: set[str], path: str):
    for k in d:
        if k not in allowed:
            raise ManifestError(E_SCHEMA, f"{path}.{k}", f"unknown field (allowed: {', '.join(sorted(allowed))})")


def _ref(table: dict, kind: str, name, path: str):
    name = _str(name, path)
    if name not in table:
        raise ManifestError(E_REF, path, f"dangling reference to {kind} {name!r}")
    return table[name]


def _int_table(v, path, rows: int, cols: int, bound: int) -> list[list[int]]:
    v = _list(v, path)
    if len(v) != rows:
        raise ManifestError(E_SCHEMA, path, f"expected {rows} rows, got {len(v)}")
    out = []
    for i, row in enumerate(v):
        row = _list(row, f"{path}[{i}]")
        if len(row) != cols:
            raise ManifestError(E_SCHEMA, f"{path}[{i}]", f"expected {cols} entries, got {len(row)}")
        vals = []
        for j, e in enumerate(row):
            e = _int(e, f"{path}[{i}][{j}]", 0)
            if e >= bound:
                raise ManifestError(E_SCHEMA, f"{path}[{i}][{j}]", f"index {e} out of range 0..{bound - 1}")
            vals.append(e)
        out.append(vals)
    return out


def _perm(v, path, n: int) -> list[int]:
    (row,) = _int_table([v], path, 1, n, n)
    if sorted(row) != list(range(n)):
        raise ManifestError(E_INVARIANT, path, "not a permutation")
    return row


# entities


def _parse_base(v, path) -> BaseField:
    d = _obj(v, path)
    _no_extra(d, {"p", "f", "kind"}, path)
    p = _int(_need(d, "p", path), f"{path}.p", 2)
    f = _int(d.get("f", 1), f"{path}.f", 1)
    kind = _str(d.get("kind", "finite"), f"{path}.kind")
    try:
        return BaseField(p, f, kind)
    except ValueError as exc:
        raise ManifestError(E_INVARIANT, path, str(exc)) from None


def _parse_group(v, path) -> FiniteGroup:
    from .groups import GroupAxiomError, validate_group

    d = _obj(v, path)
    _no_extra(d, {"cayley", "perm_generators"}, path)
    if ("cayley" in d) == ("perm_generators" in d):
        raise ManifestError(E_SCHEMA, path, "give exactly one of 'cayley' or 'perm_generators'")
    name = path.split(".", 1)[-1]
    if "cayley" in d:
        t = _list(d["cayley"], f"{path}.cayley")
        n = len(t)
        if n == 0:
            raise ManifestError(E_SCHEMA, f"{path}.cayley", "empty table")
        table = _int_table(t, f"{path}.cayley", n, n, n)
        try:
            return validate_group(table, name=name)
        except GroupAxiomError as exc:
            raise ManifestError(E_INVARIANT, f"{path}.cayley", str(exc)) from None
    gens = _list(d["perm_generators"], f"{path}.perm_generators")
    perms = []
    for i, gen in enumerate(gens):
        gp = f"{path}.perm_generators[{i}]"
        cycles = [[_int(a, f"{gp}[{c}][{j}]", 0) for j, a in enumerate(_list(cyc, f"{gp}[{c}]"))] for c, cyc in enumerate(_list(gen, gp))]
        try:
            perms.append(cycles_to_perm(cycles, 1))
        except ValueError as exc:
            raise ManifestError(E_SCHEMA, gp, str(exc)) from None
    if not perms:
        perms = [(0,)]
    return FiniteGroup.from_permutations(perms, name=name)


def _parse_gset(v, path, m: Manifest) -> GaloisGSet:
    d = _obj(v, path)
    _no_extra(d, {"group", "points", "frobenius", "g_action", "inertia", "base"}, path)
    G = _ref(m.groups, "group", _need(d, "group", path), f"{path}.group")
    n = _int(_need(d, "points", path), f"{path}.points", 1)
    frob = _perm(_need(d, "frobenius", path), f"{path}.frobenius", n)
    if "g_action" in d:
        act = _int_table(d["g_action"], f"{path}.g_action", n, G.order, n)
    else:
        act = [[x] * G.order for x in range(n)]
    base = _parse_base(d["base"], f"{path}.base") if "base" in d else m.base
    try:
        X = RightGSet(G, act)
    except ValueError as exc:
        raise ManifestError(E_INVARIANT, f"{path}.g_action", str(exc)) from None
    inertia = None
    if "inertia" in d:
        ip = f"{path}.inertia"
        di = _obj(d["inertia"], ip)
        _no_extra(di, {"group", "action", "frob_twist"}, ip)
        Q = _ref(m.groups, "group", _need(di, "group", ip), f"{ip}.group")
        action = _int_table(_need(di, "action", ip), f"{ip}.action", n, Q.order, n)
        twist = _perm(di.get("frob_twist", list(range(Q.order))), f"{ip}.frob_twist", Q.order)
        if base.kind != "local":
            raise ManifestError(E_INVARIANT, ip, "an inertia action needs a base of kind 'local'")
        inertia = InertiaData(Q, tuple(tuple(r) for r in action), tuple(twist))
    try:
        return GaloisGSet(X, frob, base, inertia)
    except ValueError as exc:
        raise ManifestError(E_INVARIANT, path, str(exc)) from None


def _parse_morphism(v, path, m: Manifest) -> Morphism:
    d = _obj(v, path)
    _no_extra(d, {"source", "target", "map", "alpha", "degree"}, path)
    S = _ref(m.gsets, "gset", _need(d, "source", path), f"{path}.source")
    T = _ref(m.gsets, "gset", _need(d, "target", path), f"{path}.target")
    (f,) = _int_table([_need(d, "map", path)], f"{path}.map", 1, S.size, T.size)
    (alpha,) = _int_table([_need(d, "alpha", path)], f"{path}.alpha", 1, S.group.order, T.group.order)
    degree = _int(d.get("degree", 1), f"{path}.degree", 1)
    try:
        hom = GroupHom(S.group, T.group, alpha)
    except ValueError as exc:
        raise ManifestError(E_INVARIANT, f"{path}.alpha", str(exc)) from None
    try:
        return Morphism(S, T, f, hom, degree)
    except ValueError as exc:
        raise ManifestError(E_INVARIANT, path, str(exc)) from None


def kernel_key(X: GaloisGSet, label: tuple[int, int]) -> str:
    g, q = label
    return f"{g},{q}" if X.inertia is not None else str(g)


def _matrix(v, path, N: int, d: int) -> CycloMatrix:
    rows = _list(v, path)
    if len(rows) != d:
        raise ManifestError(E_SCHEMA, path, f"expected {d} rows, got {len(rows)}")
    out = []
    for i, row in enumerate(rows):
        row = _list(row, f"{path}[{i}]")
        if len(row) != d:
            raise ManifestError(E_SCHEMA, f"{path}[{i}]", f"expected {d} entries, got {len(row)}")
        vals = []
        for j, e in enumerate(row):
            ep = f"{path}[{i}][{j}]"
            if isinstance(e, int) and not isinstance(e, bool):
                e = str(e)
            try:
                vals.append(parse_elem(_str(e, ep), N))
            except ValueError as exc:
                raise ManifestError(E_SCHEMA, ep, f"bad cyclotomic entry {e!r}: {exc}") from None
        out.append(vals)
    return CycloMatrix(N, out) if d else CycloMatrix.zeros(N, 0)


def _parse_sheaf(v, path, m: Manifest) -> EquivariantSheaf:
    d = _obj(v, path)
    _no_extra(d, {"gset", "stalks", "conductor"}, path)
    X = _ref(m.gsets, "gset", _need(d, "gset", path), f"{path}.gset")
    N = m.conductor
    if "conductor" in d and _int(d["conductor"], f"{path}.conductor", 1) != N:
        raise ManifestError(E_INVARIANT, f"{path}.conductor", f"conductor {d['conductor']} differs from the manifest conductor {N}")
    points = X.points()
    stalks_in = _list(_need(d, "stalks", path), f"{path}.stalks")
    if len(stalks_in) != len(points):
        raise ManifestError(E_SCHEMA, f"{path}.stalks", f"gset has {len(points)} closed points, got {len(stalks_in)} stalks")
    stalks = []
    for P, s in zip(points, stalks_in):
        sp = f"{path}.stalks[{P.index}]"
        s = _obj(s, sp)
        _no_extra(s, {"dim", "rho_K", "frob"}, sp)
        dim = _int(_need(s, "dim", sp), f"{sp}.dim", 0)
        W = P.group
        keys = [kernel_key(X, lab) for lab in W.kernel.labels]
        rk = _obj(s.get("rho_K", {}), f"{sp}.rho_K")
        for k in rk:
            if k not in keys:
                raise ManifestError(E_SCHEMA, f"{sp}.rho_K.{k}", f"not an element of the stabilizer kernel (elements: {', '.join(keys)})")
        rho = []
        for key in keys:
            if key in rk:
                rho.append(_matrix(rk[key], f"{sp}.rho_K.{key}", N, dim))
            elif key == keys[0]:
                rho.append(CycloMatrix.identity(N, dim))
            else:
                raise ManifestError(E_SCHEMA, f"{sp}.rho_K", f"missing element {key!r}")
        frob = _matrix(_need(s, "frob", sp), f"{sp}.frob", N, dim)
        try:
            stalks.append(WeilRep(W, N, rho, frob))
        except RepError as exc:
            raise ManifestError(E_INVARIANT, sp, str(exc)) from None
    return EquivariantSheaf(X, N, stalks, check=False)


def _parse_system(v, path, m: Manifest) -> CompatSystem:
    d = _obj(v, path)
    _no_extra(d, {"members"}, path)
    members = _list(_need(d, "members", path), f"{path}.members")
    if not members:
        raise ManifestError(E_SCHEMA, f"{path}.members", "a system needs at least one member")
    sigmas, objs, labels = [], [], []
    base = None
    for i, mem in enumerate(members):
        mp = f"{path}.members[{i}]"
        mem = _obj(mem, mp)
        _no_extra(mem, {"sheaf", "plus", "minus", "sigma", "label"}, mp)
        if "sheaf" in mem:
            if "plus" in mem or "minus" in mem:
                raise ManifestError(E_SCHEMA, mp, "give either 'sheaf' or 'plus'/'minus'")
            plus, minus = [_ref(m.sheaves, "sheaf", mem["sheaf"], f"{mp}.sheaf")], []
        else:
            plus = [_ref(m.sheaves, "sheaf", s, f"{mp}.plus[{j}]") for j, s in enumerate(_list(mem.get("plus", []), f"{mp}.plus"))]
            minus = [_ref(m.sheaves, "sheaf", s, f"{mp}.minus[{j}]") for j, s in enumerate(_list(mem.get("minus", []), f"{mp}.minus"))]
            if not plus and not minus:
                raise ManifestError(E_SCHEMA, mp, "member has no sheaves")
        for s in plus + minus:
            if base is None:
                base = s.base
            elif s.base is not base:
                raise ManifestError(E_INVARIANT, mp, "all members of a system must live on the same gset")
        a = _int(mem.get("sigma", 1), f"{mp}.sigma", 1)
        try:
            sigmas.append(FieldAut(m.conductor, a))
        except ValueError as exc:
            raise ManifestError(E_INVARIANT, f"{mp}.sigma", str(exc)) from None
        objs.append(VirtualClass(base, m.conductor, plus, minus))
        labels.append(_str(mem.get("label", str(i)), f"{mp}.label"))
    if len(set(labels)) != len(labels):
        raise ManifestError(E_SCHEMA, f"{path}.members", "member labels must be distinct")
    return CompatSystem(sigmas, objs, labels)


_SECTIONS = ("groups", "gsets", "morphisms", "sheaves", "systems")


def build_manifest(doc: Any) -> Manifest:
    doc = _obj(doc, "$")
    _no_extra(doc, {"conductor", "seed", "base", "description", *_SECTIONS}, "$")
    N = _int(_need(doc, "conductor", "$"), "conductor", 1)
    seed = _int(doc.get("seed", 0), "seed")
    base = _parse_base(doc.get("base", {"p": 2}), "base")
    m = Manifest(N, base, seed)
    parsers = {
        "groups": lambda v, p: _parse_group(v, p),
        "gsets": lambda v, p: _parse_gset(v, p, m),
        "morphisms": lambda v, p: _parse_morphism(v, p, m),
        "sheaves": lambda v, p: _parse_sheaf(v, p, m),
        "systems": lambda v, p: _parse_system(v, p, m),
    }
    for section in _SECTIONS:
        entries = _obj(doc.get(section, {}), section)
        table = getattr(m, section)
        for name, v in entries.items():
            table[name] = parsers[section](v, f"{section}.{name}")
    return m


# serialization


def dump_group(G: FiniteGroup) -> dict:
    return {"cayley": [list(r) for r in G.table]}


def dump_base(B: BaseField) -> dict:
    return {"p": B.p, "f": B.f, "kind": B.kind}


def dump_matrix(M: CycloMatrix) -> list[list[str]]:
    return M.to_strings()


def dump_stalk(X: GaloisGSet, rep: WeilRep) -> dict:
    K = rep.group.kernel
    return {
        "dim": rep.dim,
        "rho_K": {kernel_key(X, lab): dump_matrix(rep.rho[k]) for k, lab in zip(K, K.labels)},
        "frob": dump_matrix(rep.frob),
    }


class _Namer:
    """Stable names for the groups and gsets pulled into an emitted manifest."""

    def __init__(self, known: Manifest | None):
        self.groups: dict[str, dict] = {}
        self.gsets: dict[str, dict] = {}
        self._gnames: dict[int, str] = {}
        self._xnames: dict[int, str] = {}
        self._known_groups = {id(v): k for k, v in known.groups.items()} if known else {}
        self._known_gsets = {id(v): k for k, v in known.gsets.items()} if known else {}

    def _fresh(self, prefix: str, taken: dict) -> str:
        i = 1
        while f"{prefix}{i}" in taken:
            i += 1
        return f"{prefix}{i}"

    def group(self, G: FiniteGroup) -> str:
        if id(G) in self._gnames:
            return self._gnames[id(G)]
        name = self._known_groups.get(id(G)) or self._fresh("G", self.groups)
        if name in self.groups:
            name = self._fresh("G", self.groups)
        self._gnames[id(G)] = name
        self.groups[name] = dump_group(G)
        return name

    def gset(self, X: GaloisGSet) -> str:
        if id(X) in self._xnames:
            return self._xnames[id(X)]
        name = self._known_gsets.get(id(X)) or self._fresh("X", self.gsets)
        if name in self.gsets:
            name = self._fresh("X", self.gsets)
        self._xnames[id(X)] = name
        out = {
            "group": self.group(X.group),
            "points": X.size,
            "frobenius": list(X.frobenius),
            "g_action": [list(r) for r in X.g_action.act],
            "base": dump_base(X.base),
        }
        if X.inertia is not None:
            out["inertia"] = {"group": self.group(X.Q), "action": [list(r) for r in X._iota], "frob_twist": list(X._tau)}
        self.gsets[name] = out
        return name


def dump_sheaves(sheaves: dict[str, EquivariantSheaf], conductor: int, base: BaseField, known: Manifest | None = None, seed: int = 0) -> dict:
    """A self-contained manifest holding the given sheaves and everything they reference."""
    namer = _Namer(known)
    out_sheaves = {}
    for name, L in sheaves.items():
        if L.conductor != conductor:
            raise ValueError(f"sheaf {name} has conductor {L.conductor}, expected {conductor}")
        out_sheaves[name] = {"gset": namer.gset(L.base), "stalks": [dump_stalk(L.base, s) for s in L.stalks]}
    return {
        "conductor": conductor,
        "seed": seed,
        "base": dump_base(base),
        "groups": namer.groups,
        "gsets": namer.gsets,
        "sheaves": out_sheaves,
    }


def dump_manifest(m: Manifest) -> dict:
    namer = _Namer(m)
    for G in m.groups.values():
        namer.group(G)
    for X in m.gsets.values():
        namer.gset(X)
    morphisms = {}
    for name, f in m.morphisms.items():
        morphisms[name] = {
            "source": namer.gset(f.source),
            "target": namer.gset(f.target),
            "map": list(f.f),
            "alpha": list(f.alpha.images),
            "degree": f.degree,
        }
    sheaves = {name: {"gset": namer.gset(L.base), "stalks": [dump_stalk(L.base, s) for s in L.stalks]} for name, L in m.sheaves.items()}
    sheaf_names = {id(L): n for n, L in m.sheaves.items()}
    systems = {}
    for name, S in m.systems.items():
        members = []
        for sg, V, lab in zip(S.sigmas, S.objects, S.labels):
            try:
                plus = [sheaf_names[id(s)] for s in V.plus]
                minus = [sheaf_names[id(s)] for s in V.minus]
            except KeyError:
                raise ValueError(f"system {name} holds a sheaf that is not named in the manifest") from None
            members.append({"plus": plus, "minus": minus, "sigma": sg.exponent, "label": lab})
        systems[name] = {"members": members}
    return {
        "conductor": m.conductor,
        "seed": m.seed,
        "base": dump_base(m.base),
        "groups": namer.groups,
        "gsets": namer.gsets,
        "morphisms": morphisms,
        "sheaves": sheaves,
        "systems": systems,
    }


def to_json(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"
