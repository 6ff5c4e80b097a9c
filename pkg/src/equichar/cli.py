"""Command-line front end: ``equichar COMMAND --manifest PATH ...``.

Exit status is 0 on success or a compatible verdict, 1 on an incompatible
verdict or a failing suite, and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import suites as S
from .arith import NotInGroup
from .compat import CompatSystem, check_compatibility, check_compatibility_truncated
from .cyclotomic import format_elem
from .descent import build_descent, descent_criterion, scholie_table, untwist
from .manifest import (
    E_INVARIANT,
    E_REF,
    E_SCHEMA,
    Manifest,
    ManifestError,
    dump_sheaves,
    kernel_key,
    parse_manifest,
    resolve_path,
    to_json,
)
from .sheaves import (
    SheafError,
    direct_sum,
    dual,
    extend_by_zero,
    inertia_invariants,
    internal_hom,
    nearby_cycles_point,
    pullback,
    pushforward,
    tate_twist,
    tensor,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

OPS = (
    "tensor",
    "hom",
    "direct_sum",
    "dual",
    "pullback",
    "upper_shriek",
    "pushforward",
    "pushforward_shriek",
    "extend_by_zero",
    "tate_twist",
    "inertia_invariants",
    "nearby_cycles_point",
)


class Report(dict):
    """A JSON-ready result; ``exit_code`` is kept out of the payload."""

    def __init__(self, command: str, seed: int, **fields):
        super().__init__(command=command, seed=seed, **fields)
        self.exit_code = EXIT_OK
        self.warnings: list[str] = []


def _common(p: argparse.ArgumentParser, suppress: bool):
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--manifest", default=d, help="manifest JSON (relative paths also searched in $EQUICHAR_MANIFEST_DIR)")
    p.add_argument("--seed", type=int, default=d, help="seed for randomized suites (default: the manifest seed)")
    p.add_argument("--window", type=int, default=d, help="Frobenius exponent half-width; warns when below the certified bound")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False, help="machine-readable output")
    p.add_argument("--timing", action="store_true", default=argparse.SUPPRESS if suppress else False, help="add elapsed seconds to the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="equichar", description="Equivariant sheaves on finite Galois sets and compatibility of trace systems.")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        _common(p, suppress=True)
        return p

    add("validate", help="parse the manifest and list its entities")
    p = add("trace", help="trace table of a sheaf or of every member of a system")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--sheaf")
    g.add_argument("--system")
    p = add("op", help="apply one operation and emit the resulting sheaf manifest")
    p.add_argument("operation", choices=OPS)
    p.add_argument("--sheaf", required=True)
    p.add_argument("--other", help="second operand for tensor, hom and direct_sum (default: the sheaf itself)")
    p.add_argument("--morphism", help="morphism for pullback and pushforward operations")
    p.add_argument("--n", type=int, default=1, help="twist for tate_twist")
    p.add_argument("--name", default="result", help="name of the emitted sheaf")
    p.add_argument("--out", help="also write the emitted manifest to this path")
    p = add("descend", help="untwist a sheaf along (m, g) and certify the trace identity")
    p.add_argument("--sheaf", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--name", default="descended")
    p.add_argument("--out")
    p = add("check", help="decide compatibility of a system")
    p.add_argument("--system", required=True, help="system name, or a manifest file holding exactly one system")
    p.add_argument("--truncated", type=int, metavar="N", help="use only Frobenius exponents from N on")
    p.add_argument("--descent", action="store_true", help="decide through the untwisted families instead")
    p = add("verify", help="run property suites on the manifest entities")
    p.add_argument("--suite", default="all", choices=("all", *S.SUITES))
    return parser


# helpers


def _load(args) -> Manifest:
    if args.manifest is None:
        raise ManifestError(E_SCHEMA, "--manifest", "no manifest given")
    return parse_manifest(args.manifest)


def _window_for(args, bound: int, where: str, report: Report) -> range:
    if args.window is None:
        return range(-bound, bound + 1)
    if args.window < bound:
        report.warnings.append(f"window {args.window} is below the certified bound {bound} at {where}; the verdict is not certified")
    return range(-args.window, args.window + 1)


def _sheaf_table(L, name: str, args, report: Report) -> list[dict]:
    rows = []
    X = L.base
    for P in X.points():
        K = P.group.kernel
        for j in _window_for(args, max(L.rank(P.index), 1), f"sheaf {name}, point {P.index}", report):
            for k, lab in zip(K, K.labels):
                rows.append({"point": P.index, "k": kernel_key(X, lab), "j": j, "trace": format_elem(L.trace(P.index, (k, j)))})
    return rows


# commands


def cmd_validate(m: Manifest, args, report: Report):
    report["conductor"] = m.conductor
    report["base"] = {"p": m.base.p, "f": m.base.f, "kind": m.base.kind}
    report["groups"] = {k: {"order": G.order} for k, G in m.groups.items()}
    report["gsets"] = {k: {"points": X.size, "closed_points": len(X.points()), "group": X.group.name} for k, X in m.gsets.items()}
    report["morphisms"] = {k: {"degree": f.degree} for k, f in m.morphisms.items()}
    report["sheaves"] = {k: {"ranks": list(L.ranks())} for k, L in m.sheaves.items()}
    report["systems"] = {k: {"members": list(s.labels)} for k, s in m.systems.items()}


def cmd_trace(m: Manifest, args, report: Report):
    if args.sheaf is not None:
        L = m.lookup("sheaves", args.sheaf)
        report["sheaf"] = args.sheaf
        report["table"] = _sheaf_table(L, args.sheaf, args, report)
        return
    sysm = m.lookup("systems", args.system)
    report["system"] = args.system
    rows = []
    X = sysm.base
    for P in X.points():
        K = P.group.kernel
        for j in _window_for(args, sysm.max_total_rank(P.index), f"point {P.index}", report):
            for k, lab in zip(K, K.labels):
                vals = [format_elem(o.trace(P.index, (k, j))) for o in sysm.objects]
                rows.append({"point": P.index, "k": kernel_key(X, lab), "j": j, "traces": dict(zip(sysm.labels, vals))})
    report["table"] = rows


def _apply_op(m: Manifest, args):
    L = m.lookup("sheaves", args.sheaf)
    op = args.operation
    if op in ("tensor", "hom", "direct_sum"):
        M = m.lookup("sheaves", args.other) if args.other else L
        fn = {"tensor": tensor, "hom": internal_hom, "direct_sum": direct_sum}[op]
        return fn(L, M)
    if op == "dual":
        return dual(L)
    if op == "tate_twist":
        return tate_twist(L, args.n)
    if op == "inertia_invariants":
        return inertia_invariants(L)
    if op == "nearby_cycles_point":
        return nearby_cycles_point(L)
    if args.morphism is None:
        raise ManifestError(E_REF, "--morphism", f"operation {op} needs a morphism")
    f = m.lookup("morphisms", args.morphism)
    if op in ("pullback", "upper_shriek"):
        if L.base is not f.target:
            raise ManifestError(E_INVARIANT, f"sheaves.{args.sheaf}.gset", f"pullback along {args.morphism} needs a sheaf on its target")
        return pullback(f, L)
    if L.base is not f.source:
        raise ManifestError(E_INVARIANT, f"sheaves.{args.sheaf}.gset", f"{op} along {args.morphism} needs a sheaf on its source")
    if op == "extend_by_zero":
        return extend_by_zero(f, L)
    return pushforward(f, L)


def _emit(m: Manifest, args, report: Report, sheaf, name: str):
    doc = dump_sheaves({name: sheaf}, m.conductor, m.base, known=m, seed=report["seed"])
    report["manifest"] = doc
    if args.out:
        Path(args.out).write_text(to_json(doc))


def cmd_op(m: Manifest, args, report: Report):
    report["operation"] = args.operation
    _emit(m, args, report, _apply_op(m, args), args.name)


def cmd_descend(m: Manifest, args, report: Report):
    L = m.lookup("sheaves", args.sheaf)
    X = L.base
    if not 0 <= args.g < X.group.order:
        raise ManifestError(E_REF, "--g", f"no element {args.g} in a group of order {X.group.order}")
    if args.m < 1:
        raise ManifestError(E_SCHEMA, "--m", "extension degree must be positive")
    D = build_descent(X, args.m, args.g)
    U = untwist(D, L)
    bound = max(max(L.ranks(), default=0), 1)
    window = _window_for(args, bound, f"sheaf {args.sheaf}", report)
    rows = scholie_table(D, L, window)
    report.update(sheaf=args.sheaf, m=args.m, g=args.g, order=D.order)
    report["scholie"] = [
        {"point": z, "q": q, "j": j, "twisted": format_elem(a), "untwisted": format_elem(b), "equal": a == b} for z, q, j, a, b in rows
    ]
    report["certified"] = all(r["equal"] for r in report["scholie"])
    _emit(m, args, report, U, args.name)
    if not report["certified"]:
        report.exit_code = EXIT_FAIL


def _system_from(args, m: Manifest | None) -> tuple[CompatSystem, str, Manifest]:
    if m is not None and args.system in m.systems:
        return m.systems[args.system], args.system, m
    p = resolve_path(args.system)
    if p.suffix == ".json" or p.exists():
        other = parse_manifest(p)
        if len(other.systems) != 1:
            raise ManifestError(E_SCHEMA, f"{args.system}: systems", f"expected exactly one system, found {len(other.systems)}")
        name = next(iter(other.systems))
        return other.systems[name], name, other
    if m is None:
        raise ManifestError(E_SCHEMA, "--manifest", "no manifest given")
    return m.lookup("systems", args.system), args.system, m


def cmd_check(m: Manifest | None, args, report: Report):
    sysm, name, m = _system_from(args, m)
    report["system"] = name
    X = sysm.base
    if args.descent:
        v = descent_criterion(sysm)
        report["method"] = "descent"
        report["compatible"] = v.compatible
        report["pairs_checked"] = v.pairs_checked
        if v.witness is not None:
            mdeg, g, w = v.witness
            report["witness"] = {"m": mdeg, "g": g, **w.as_dict()}
    elif args.truncated is not None:
        v = check_compatibility_truncated(sysm, args.truncated)
        report["method"] = f"truncated from {args.truncated}"
        report["compatible"] = v.compatible
        report["entries_checked"] = v.entries_checked
        if v.witness is not None:
            report["witness"] = v.witness.as_dict()
    else:
        windows = {P.index: _window_for(args, sysm.max_total_rank(P.index), f"point {P.index}", report) for P in X.points()}
        v = check_compatibility(sysm, keep=True, windows=windows)
        report["method"] = "window"
        report["compatible"] = v.compatible
        report["entries_checked"] = v.entries_checked
        if v.witness is not None:
            report["witness"] = v.witness.as_dict()
        else:
            report["certificate"] = {
                "windows": [
                    {"point": P.index, "bound": sysm.max_total_rank(P.index), "from": windows[P.index].start, "to": windows[P.index].stop - 1}
                    for P in X.points()
                ],
                "values": [
                    {"point": x, "k": kernel_key(X, X.points()[x].group.kernel.labels[k]), "j": j, "untwisted": format_elem(val)}
                    for (x, k, j), val in v.common_values.items()
                ],
            }
    if not report["compatible"]:
        report.exit_code = EXIT_FAIL


def cmd_verify(m: Manifest, args, report: Report):
    seed = report["seed"]
    chosen = S.SUITES if args.suite == "all" else (args.suite,)
    out = []
    for name in chosen:
        if name == "mackey":
            r = S.mackey_suite(m.groups, m.base, m.conductor, seed)
        elif name == "scholie":
            r = S.scholie_suite(m.sheaves)
        elif name == "duality":
            r = S.duality_suite(m.sheaves)
        elif name == "adjunction":
            r = S.adjunction_suite(m.morphisms, m.conductor, seed)
        elif name == "point_hom":
            r = S.point_hom_suite(m.morphisms, m.gsets)
        elif name == "coinduction":
            r = S.coinduction_suite(m.groups, m.conductor, seed)
        elif name == "truncation":
            r = S.truncation_suite(m.systems)
        else:
            r = S.descent_suite(m.systems)
        out.append(r.as_dict())
    report["suites"] = out
    report["passed"] = all(r["passed"] for r in out)
    if not report["passed"]:
        report.exit_code = EXIT_FAIL


COMMANDS = {
    "validate": cmd_validate,
    "trace": cmd_trace,
    "op": cmd_op,
    "descend": cmd_descend,
    "check": cmd_check,
    "verify": cmd_verify,
}


def run_command(command: str, manifest: Manifest | None, args: argparse.Namespace) -> Report:
    if command not in COMMANDS:
        raise ManifestError(E_SCHEMA, "command", f"unknown command {command!r}")
    seed = args.seed if getattr(args, "seed", None) is not None else (manifest.seed if manifest else 0)
    report = Report(command, seed)
    start = time.perf_counter()
    COMMANDS[command](manifest, args, report)
    if getattr(args, "timing", False):
        report["seconds"] = round(time.perf_counter() - start, 3)
    if report.warnings:
        report["warnings"] = list(report.warnings)
    return report


def _text(report: Report) -> str:
    cmd = report["command"]
    lines = [f"{cmd}: seed {report['seed']}"]
    if cmd == "validate":
        for section, noun in (("groups", "group"), ("gsets", "gset"), ("morphisms", "morphism"), ("sheaves", "sheaf"), ("systems", "system")):
            for k, v in report[section].items():
                lines.append(f"  {noun} {k}: " + ", ".join(f"{a}={b}" for a, b in v.items()))
        lines.append("manifest OK")
    elif cmd == "trace":
        for r in report["table"]:
            vals = r.get("trace") or ", ".join(f"{a}: {b}" for a, b in r["traces"].items())
            lines.append(f"  x={r['point']} k={r['k']} j={r['j']}  {vals}")
    elif cmd in ("op", "descend"):
        if cmd == "descend":
            for r in report["scholie"]:
                mark = "ok" if r["equal"] else "MISMATCH"
                lines.append(f"  z={r['point']} q={r['q']} j={r['j']}  {r['twisted']} | {r['untwisted']}  {mark}")
            lines.append("certified" if report["certified"] else "NOT certified")
        lines.append(to_json(report["manifest"]).rstrip())
    elif cmd == "check":
        lines.append(f"  method: {report['method']}")
        if report["compatible"]:
            lines.append("compatible")
        else:
            lines.append("incompatible")
            lines.append(json.dumps(report["witness"]))
    elif cmd == "verify":
        for r in report["suites"]:
            lines.append(f"  {r['suite']}: {r['cases']} cases, {len(r['failures'])} failures")
        lines.append("all suites passed" if report["passed"] else "FAILED")
    if "seconds" in report:
        lines.append(f"  {report['seconds']} s")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        manifest = None
        if args.command != "check" or args.manifest is not None:
            manifest = _load(args)
        report = run_command(args.command, manifest, args)
    except ManifestError as exc:
        if args.json:
            sys.stdout.write(json.dumps({"command": args.command, "error": exc.as_dict()}, indent=2) + "\n")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SheafError, NotInGroup, ValueError) as exc:
        err = {"code": E_INVARIANT, "path": args.command, "message": str(exc)}
        if args.json:
            sys.stdout.write(json.dumps({"command": args.command, "error": err}, indent=2) + "\n")
        print(f"error: {E_INVARIANT} at {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    sys.stdout.write(to_json(report) if args.json else _text(report))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
