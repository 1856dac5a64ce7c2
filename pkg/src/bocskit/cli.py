"""Command line front end: ``bocskit <command> ...``.

Exit codes: 0 success, 1 a semantic check failed, 2 usage, I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from pathlib import Path as FilePath

from .algebra import QuiverError, RelationError, trivial, word_str
from .bocs import Bocs, BocsParseError, DiffBiquiver, format_biquiver, parse_biquiver, validate
from .classify import classify, ringel_pairing
from .koszul import GRADED, UNSIGNED, DualConstructionError, DualPresentation, hom_ext_matrices, koszul_dual, regularize, ringel_dual
from .rep import (
    LModule,
    box_complex,
    check_N_morphism,
    check_N_object,
    check_R_morphism,
    check_R_object,
    describe_residue,
    diamond_complex,
    psi,
    verify_complex,
)


class InputError(Exception):
    """Bad input file contents; reported with exit code 2."""


def _coef(c: Fraction) -> str:
    return str(Fraction(c))


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _read(path: str) -> str:
    try:
        return FilePath(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _load_biquiver(path: str) -> DiffBiquiver:
    text = _read(path)
    try:
        return parse_biquiver(text)
    except (BocsParseError, QuiverError) as exc:
        raise InputError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# JSON views


def arrows_json(dbq: DiffBiquiver, dashed: bool) -> list[dict]:
    return [
        {"name": a.name, "source": a.source, "target": a.target}
        for a in dbq.quiver.arrows
        if a.is_dashed == dashed
    ]


def biquiver_json(dbq: DiffBiquiver) -> dict:
    return {
        "n": dbq.n,
        "solid": arrows_json(dbq, False),
        "dashed": arrows_json(dbq, True),
        "relations": [{"*".join(p.arrows): _coef(c) for p, c in r.items()} for r in dbq.relations],
        "differential": {
            a.name: {word_str(w): _coef(c) for w, c in dbq.differential(a.name).items()}
            for a in dbq.quiver.arrows
            if dbq.differential(a.name)
        },
    }


def presentation_json(pres: DualPresentation) -> dict:
    out = biquiver_json(pres.biquiver)
    out.update(
        {
            "kind": pres.kind,
            "convention": pres.convention,
            "grouplikes": list(pres.grouplikes),
            "counts": {"degree0": len(pres.degree0), "relations": len(pres.relations), "dashed": len(pres.dashed)},
            "log": list(pres.log),
        }
    )
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args, out) -> int:
    dbq = _load_biquiver(args.input)
    report = validate(dbq)
    if args.json:
        out.write(
            _dump(
                {
                    "ok": report.ok,
                    "violations": [
                        {"generator": v.generator, "kind": v.kind, "detail": v.detail} for v in report.violations
                    ],
                }
            )
            + "\n"
        )
    else:
        out.write(report.summary() + "\n")
    return 0 if report.ok else 1


def cmd_dual(args, out) -> int:
    dbq = _load_biquiver(args.input)
    report = validate(dbq)
    if not report.ok:
        sys.stderr.write("input fails validation:\n" + report.summary() + "\n")
        return 1
    build = ringel_dual if args.ringel else koszul_dual
    try:
        pres = build(dbq, convention=args.convention)
    except DualConstructionError as exc:
        sys.stderr.write(f"dual construction failed: {exc}\n")
        return 1
    out.write((_dump(presentation_json(pres)) + "\n") if args.json else pres.to_text())
    return 0


def cmd_regularize(args, out) -> int:
    dbq = _load_biquiver(args.input)
    try:
        reg = regularize(DualPresentation(dbq, (), kind="input"), order=args.order)
    except DualConstructionError as exc:
        sys.stderr.write(f"regularisation failed: {exc}\n")
        return 1
    if args.json:
        data = biquiver_json(reg.biquiver)
        data["log"] = list(reg.log)
        out.write(_dump(data) + "\n")
    else:
        out.write(format_biquiver(reg.biquiver, [f"step: {s}" for s in reg.log]))
    return 0


def _complex_json(b: Bocs, C) -> dict:
    return {
        "dims": {str(d): C.modules[d].dim for d in C.degrees},
        "basis": {str(d): [list(labels) for labels in C.modules[d].labels] for d in C.degrees},
        "verified": verify_complex(b, C).ok,
    }


def cmd_box(args, out) -> int:
    dbq = _load_biquiver(args.input)
    report = validate(dbq)
    if not report.ok:
        sys.stderr.write("input fails validation:\n" + report.summary() + "\n")
        return 1
    b = Bocs(dbq, _checked=True)
    vertices = [args.vertex] if args.vertex else list(range(1, b.n + 1))
    for i in vertices:
        if not 1 <= i <= b.n:
            raise InputError(f"vertex {i} is out of range 1..{b.n}")
    data = {}
    for i in vertices:
        data[str(i)] = {"box": _complex_json(b, box_complex(b, i)), "diamond": _complex_json(b, diamond_complex(b, i))}
    if args.json:
        out.write(_dump(data) + "\n")
    else:
        for i in vertices:
            for name in ("box", "diamond"):
                entry = data[str(i)][name]
                dims = ", ".join(f"{d}: {v}" for d, v in sorted(entry["dims"].items(), key=lambda t: int(t[0])))
                status = "ok" if entry["verified"] else "FAILS d^2 = 0"
                out.write(f"{name.capitalize()}_{i}  dims by degree {{{dims}}}  ({status})\n")
                for d, labels in sorted(entry["basis"].items(), key=lambda t: int(t[0])):
                    flat = [x for group in labels for x in group]
                    out.write(f"  degree {d}: {' '.join(flat) if flat else '0'}\n")
    ok = all(entry["verified"] for v in data.values() for entry in v.values())
    return 0 if ok else 1


def _matrix_text(rows) -> list[str]:
    return ["  " + " ".join(f"{x:>2}" for x in row) for row in rows]


def cmd_dims(args, out) -> int:
    dbq = _load_biquiver(args.input)
    report = validate(dbq)
    if not report.ok:
        sys.stderr.write("input fails validation:\n" + report.summary() + "\n")
        return 1
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        dims = hom_ext_matrices(dbq)
    if args.json:
        out.write(_dump(dims.as_dict()) + "\n")
        return 0
    lines = []
    if dims.regularised:
        lines.append("(input was regularised first)")
    lines.append("Hom(Δ(i), Δ(l)):")
    lines += _matrix_text(dims.hom)
    lines.append("Ext¹(Δ(i), Δ(l)):")
    lines += _matrix_text(dims.ext)
    lines.append(f"dim A = {dims.dim_A}, dim V̄ = {dims.dim_vbar}, dim R = {dims.right_dim}")
    out.write("\n".join(lines) + "\n")
    return 0


# -- check ----------------------------------------------------------------------


def _lmodule(layout, n: int) -> LModule:
    """``{"1": ["v1"], ...}`` or a list of label lists, padded to n vertices."""
    if isinstance(layout, dict):
        if any(not k.isdigit() or not 1 <= int(k) <= n for k in layout):
            raise InputError(f"vertex keys must be 1..{n}")
        return LModule(tuple(tuple(layout.get(str(i), [])) for i in range(1, n + 1)))
    if len(layout) > n:
        raise InputError(f"more than {n} vertices given")
    return LModule(tuple(tuple(x) for x in layout) + ((),) * (n - len(layout)))


def _entries(dbq: DiffBiquiver, entries, Y: LModule, Z: LModule, paths: bool) -> dict:
    """[{term, from, to, coef}] -> {(basis element, k, j): coef}.

    ``to`` names the basis vector of Y being mapped (at the target of the
    term) and ``from`` the vector of Z it is sent to (at the source).
    """
    out: dict = {}
    for item in entries:
        try:
            term, src, tgt = item["term"], item["from"], item["to"]
            coef = Fraction(str(item.get("coef", "1")))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed entry {item!r}") from exc
        k_vertex, k = Z.locate(src)
        j_vertex, j = Y.locate(tgt)
        if paths and term.startswith("e") and term[1:].isdigit() and term not in dbq.quiver:
            elems = {(trivial(int(term[1:])),): Fraction(1)}
        else:
            try:
                elems = dbq.expr(term)
            except (BocsParseError, QuiverError) as exc:
                raise InputError(f"bad term {term!r}: {exc}") from exc
        for w, c in elems.items():
            key = w[0] if paths else w
            if paths and len(w) != 1:
                raise InputError(f"{term!r} is not a path")
            if not paths and len(w) != 3:
                raise InputError(f"{term!r} is not a degree one term")
            s, t = (key.source, key.target) if paths else (w[-1].source, w[0].target)
            if (s, t) != (k_vertex, j_vertex):
                raise InputError(f"{term!r} runs {s} -> {t} but {src!r} and {tgt!r} sit at {k_vertex} and {j_vertex}")
            out[(key, k, j)] = out.get((key, k, j), Fraction(0)) + coef * c
    return {k: v for k, v in out.items() if v}


def _residue_lines(b: Bocs, Y: LModule, residues) -> list[str]:
    return ["    " + line for line in describe_residue(b, Y, residues)]


def _matrix_residue_lines(residues) -> list[str]:
    return [f"    {word_str(w)}: {m.tolist()}" for w, m in residues]


def cmd_check(args, out) -> int:
    dbq = _load_biquiver(args.input)
    report = validate(dbq)
    if not report.ok:
        sys.stderr.write("input fails validation:\n" + report.summary() + "\n")
        return 1
    b = Bocs(dbq, _checked=True)
    try:
        data = json.loads(_read(args.object))
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.object}: {exc}") from exc
    kind = data.get("kind")
    lines = []
    ok = True
    try:
        if kind == "object":
            Y = _lmodule(data["Y"], b.n)
            c = _entries(dbq, data.get("c", []), Y, Y, paths=False)
            res = check_N_object(b, Y, c)
            lines.append(f"(†) {'pass' if res.ok else 'fail'}  {res.detail}")
            lines += _residue_lines(b, Y, res.residues)
            res_star = check_R_object(b, Y, psi(b, c, Y))
            lines.append(f"(†*) {'pass' if res_star.ok else 'fail'}")
            lines += _matrix_residue_lines(res_star.residues)
            ok = res.ok and res_star.ok
        elif kind == "morphism":
            Y = _lmodule(data["source"]["Y"], b.n)
            Z = _lmodule(data["target"]["Y"], b.n)
            cY = _entries(dbq, data["source"].get("c", []), Y, Y, paths=False)
            cZ = _entries(dbq, data["target"].get("c", []), Z, Z, paths=False)
            cf = _entries(dbq, data.get("f", []), Y, Z, paths=True)
            res = check_N_morphism(b, cf, (Y, cY), (Z, cZ))
            lines.append(f"(††) {'pass' if res.ok else 'fail'}")
            lines += _residue_lines(b, Y, res.residues)
            sf = psi(b, cf, Y, Z, over="A")
            res_star = check_R_morphism(b, sf, (Y, psi(b, cY, Y)), (Z, psi(b, cZ, Z)))
            lines.append(f"(††*) {'pass' if res_star.ok else 'fail'}")
            lines += _matrix_residue_lines(res_star.residues)
            ok = res.ok and res_star.ok
        else:
            raise InputError(f"{args.object}: 'kind' must be 'object' or 'morphism', got {kind!r}")
    except KeyError as exc:
        raise InputError(f"{args.object}: missing or unknown key {exc}") from exc
    out.write("\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_classify(args, out) -> int:
    if args.n not in (2, 3, 4):
        raise InputError("--n must be 2, 3 or 4")
    report = classify(args.n)
    if args.json:
        out.write(_dump(report.as_dict()) + "\n")
    else:
        pairing = ringel_pairing(report)
        lines = [f"n = {report.n}: {len(report.classes)} classes", f"# {report.header}"]
        for entry in report.classes:
            note = "  [not Morita equivalent to Λ_f or its Ringel dual]" if entry.flagged else ""
            lines.append(f"{entry.label}  (Ringel dual {pairing[entry.label]}){note}")
            for arrow, terms in entry.candidate.differential_terms().items():
                lines.append(f"    d({arrow}) = {terms}")
        lines.append(f"excluded: {len(report.excluded)}")
        for ex in report.excluded:
            lines.append(f"  {ex.candidate}: {ex.reason} ({ex.witness})")
        for p in report.problems:
            lines.append(f"problem: {p}")
        out.write("\n".join(lines) + "\n")
    return 1 if report.problems else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bocskit", description="Directed bocses, their duals and curve-like classification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check d^2 = 0 on a .bocs file")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("dual", help="Koszul (or Ringel) dual presentation")
    p.add_argument("input")
    p.add_argument("--ringel", action="store_true", help="opposite of the Koszul dual of the opposite")
    p.add_argument("--json", action="store_true")
    p.add_argument("--convention", choices=(GRADED, UNSIGNED), default=GRADED)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("regularize", help="remove superfluous pairs and linear relations")
    p.add_argument("input")
    p.add_argument("--order", choices=("min", "max"), default="min")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_regularize)

    p = sub.add_parser("box", help="Box and Diamond complexes")
    p.add_argument("input")
    p.add_argument("--vertex", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_box)

    p = sub.add_parser("dims", help="Hom/Ext dimensions between standard modules")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("check", help="conditions on a comodule object or morphism given as JSON")
    p.add_argument("input")
    p.add_argument("--object", required=True, help="JSON file with the object or morphism")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="curve-like structures on n simples")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)
    return parser


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (InputError, RelationError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
