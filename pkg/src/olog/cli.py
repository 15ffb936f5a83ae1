"""Command-line entry point.

Exit codes: 0 success, 1 validation failure (a violated fact, a failed check,
or a non-entailed query under --require-entailed), 2 usage or parse errors.
Verdicts use a fixed vocabulary: satisfied, violated, entailed,
not-derivable-within-bound, check-passed, check-failed. With ``--format
json`` every verdict is one JSON object per line with stable keys.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path as FsPath

from . import dsl, entail, flow, instances, sketch, sqlgen, system
from .core import Specification, format_fact, format_path, validate_specification
from .errors import InstanceLoadError, OlogError


class _Out:
    def __init__(self, fmt: str, quiet: bool):
        self.fmt = fmt
        self.quiet = quiet

    def note(self, text: str):
        if not self.quiet and self.fmt == "text":
            print(text)

    def verdict(self, record: dict, text: str):
        if self.fmt == "json":
            print(json.dumps(record, sort_keys=True))
        else:
            print(text)


def _fail_usage(message: str) -> int:
    print(message, file=sys.stderr)
    return 2


def _load_spec(path: str) -> tuple[Specification | None, int]:
    try:
        text = FsPath(path).read_text(encoding="utf-8")
    except OSError as exc:
        return None, _fail_usage(f"cannot read '{path}': {exc}")
    spec, diags = dsl.parse_olog(text, path)
    for d in diags:
        if d.severity == dsl.ERROR or not _QUIET:
            print(d, file=sys.stderr)
    if spec is None:
        return None, 2
    return spec, 0


_QUIET = False


def _cmd_check(args, out: _Out) -> int:
    spec, rc = _load_spec(args.olog)
    if spec is None:
        return rc
    problems = validate_specification(spec) + sketch.validate_decls(spec)
    for msg in problems:
        out.verdict({"kind": "problem", "message": msg}, f"problem: {msg}")
    if problems:
        return 1
    out.note(
        f"ok: {len(spec.graph.types)} types, {len(spec.graph.aspects)} aspects, "
        f"{len(spec.facts)} facts, {len(spec.sketch)} sketch declarations"
    )
    return 0


def _cmd_entail(args, out: _Out) -> int:
    spec, rc = _load_spec(args.olog)
    if spec is None:
        return rc
    try:
        fact = dsl.parse_fact_text(args.fact, spec.graph)
    except OlogError as exc:
        return _fail_usage(str(exc))
    if max(len(fact.lhs), len(fact.rhs)) > args.bound:
        return _fail_usage(
            f"fact '{format_fact(fact)}' has a side longer than bound {args.bound}; "
            f"raise --bound"
        )
    try:
        cong = entail.saturate(spec, args.bound)
        status = entail.entails_in(cong, fact)
    except OlogError as exc:
        return _fail_usage(str(exc))
    witness = ""
    if status == entail.ENTAILED:
        witness = format_path(cong.representative(fact.lhs))
    out.verdict(
        {
            "kind": "entailment",
            "fact": format_fact(fact),
            "status": status,
            "witness": witness,
            "bound": args.bound,
        },
        f"{format_fact(fact)}: {status}"
        + (f" (class representative {witness})" if witness else ""),
    )
    if args.require_entailed and status != entail.ENTAILED:
        return 1
    return 0


def _emit_fact_checks(report: instances.SatisfactionReport, out: _Out) -> bool:
    ok = True
    for check in report.checks:
        status = "satisfied" if check.satisfied else "violated"
        record = {
            "kind": "fact",
            "fact": format_fact(check.fact),
            "status": status,
        }
        line = f"fact {format_fact(check.fact)}: {status}"
        if not check.satisfied:
            ok = False
            ce = check.counterexamples[0]
            record["counterexample"] = {
                "key": ce.key,
                "lhs": ce.lhs_result,
                "rhs": ce.rhs_result,
            }
            line += f" (key '{ce.key}': {ce.lhs_result} vs {ce.rhs_result})"
        out.verdict(record, line)
    return ok


def _emit_sketch_checks(results, out: _Out) -> bool:
    ok = True
    for res in results:
        record = {
            "kind": res.kind,
            "subject": res.subject,
            "status": res.verdict,
        }
        line = f"{res.kind} {res.subject}: {res.verdict}"
        if not res.passed:
            ok = False
            record["witness"] = res.witness
            line += f" ({res.witness})"
        out.verdict(record, line)
    return ok


def _cmd_validate(args, out: _Out) -> int:
    spec, rc = _load_spec(args.olog)
    if spec is None:
        return rc
    try:
        d = instances.load_instances(args.data, spec)
    except InstanceLoadError as exc:
        for msg in exc.problems:
            out.verdict({"kind": "load", "status": "error", "message": msg}, f"load error: {msg}")
        return 1
    ok = _emit_fact_checks(instances.satisfies_spec(d, spec), out)
    ok = _emit_sketch_checks(sketch.check_all(d, spec), out) and ok
    return 0 if ok else 1


def _render_table(spec: Specification, d, type_id: str) -> str:
    aspect_ids = [a.id for a in spec.graph.aspects_from.get(type_id, ())]
    lines = [",".join(["Id"] + aspect_ids)]
    for key in sorted(d.sets.get(type_id, frozenset())):
        row = [key] + [d.funcs[aid][key] for aid in aspect_ids]
        lines.append(",".join(_csv_cell(c) for c in row))
    return "\n".join(lines) + "\n"


def _cmd_synth(args, out: _Out) -> int:
    """Populate a declared construction from its participants.

    The target's table and the generated functions' columns are outputs, so
    they may be missing from the data directory; every other table must load
    cleanly. Writes the affected tables.
    """
    spec, rc = _load_spec(args.olog)
    if spec is None:
        return rc
    decls = [x for x in spec.sketch if getattr(x, "target", None) == args.decl]
    if not decls:
        return _fail_usage(f"no sketch declaration targets '{args.decl}'")
    decl = decls[0]
    generated = frozenset(sketch.synthesized_aspects(decl))
    d, problems = instances.load_tables(
        args.data, spec,
        optional_types=frozenset({decl.target}),
        optional_aspects=generated,
    )
    if problems:
        for msg in problems:
            print(f"load error: {msg}", file=sys.stderr)
        return 1
    try:
        extended = sketch.synthesize(decl, d)
    except OlogError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    touched = [decl.target] + sorted(
        {spec.graph.aspect_by_id[aid].src for aid in generated} - {decl.target}
    )
    if args.out:
        outdir = FsPath(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for tid in touched:
            (outdir / f"{tid}.csv").write_text(
                _render_table(spec, extended, tid), encoding="utf-8"
            )
            out.note(f"wrote {outdir / (tid + '.csv')}")
    else:
        for tid in touched:
            print(f"# table: {tid}")
            print(_render_table(spec, extended, tid), end="")
    return 0


def _csv_cell(cell: str) -> str:
    if any(c in cell for c in ',"\n'):
        return '"' + cell.replace('"', '""') + '"'
    return cell


def _cmd_sqlgen(args, out: _Out) -> int:
    spec, rc = _load_spec(args.olog)
    if spec is None:
        return rc
    payload = sqlgen.emit_ddl(spec)
    if args.with_inserts:
        try:
            d = instances.load_instances(args.with_inserts, spec)
        except InstanceLoadError as exc:
            for msg in exc.problems:
                print(f"load error: {msg}", file=sys.stderr)
            return 1
        payload += "\n" + sqlgen.emit_inserts(spec, d)
    if args.out:
        FsPath(args.out).write_text(payload, encoding="utf-8")
        out.note(f"wrote {args.out}")
    else:
        print(payload, end="")
    return 0


def _load_morphism(args) -> tuple:
    src, rc = _load_spec(args.source)
    if src is None:
        return None, None, None, rc
    tgt, rc = _load_spec(args.target)
    if tgt is None:
        return None, None, None, rc
    try:
        text = FsPath(args.morphism).read_text(encoding="utf-8")
    except OSError as exc:
        return None, None, None, _fail_usage(f"cannot read '{args.morphism}': {exc}")
    h, diags = dsl.parse_morphism(text, src, tgt, args.morphism)
    for d in diags:
        print(d, file=sys.stderr)
    if h is None:
        return None, None, None, 2
    return h, src, tgt, 0


def _write_olog(spec: Specification, out_path: str | None, out: _Out) -> int:
    payload = dsl.print_olog(spec)
    if out_path:
        FsPath(out_path).write_text(payload, encoding="utf-8")
        out.note(f"wrote {out_path}")
    else:
        print(payload, end="")
    return 0


def _cmd_flow(args, out: _Out) -> int:
    h, src, tgt, rc = _load_morphism(args)
    if h is None:
        return rc
    if args.direction == "dir":
        facts = flow.dir_flow(h, src.facts)
        result = Specification(graph=h.tgt, facts=facts, name=f"{tgt.name}_dir")
    else:
        facts = flow.inv_flow(h, tgt.facts, args.bound)
        result = Specification(graph=h.src, facts=facts, name=f"{src.name}_inv")
    return _write_olog(result, args.out, out)


def _cmd_morphism_check(args, out: _Out) -> int:
    h, src, tgt, rc = _load_morphism(args)
    if h is None:
        return rc
    ok, offenders = flow.is_spec_morphism(h, src, tgt, args.bound)
    record = {
        "kind": "morphism",
        "status": "check-passed" if ok else "check-failed",
        "offending": [format_fact(f) for f in offenders],
    }
    line = f"morphism {args.morphism}: {'check-passed' if ok else 'check-failed'}"
    if offenders:
        line += " (" + "; ".join(format_fact(f) for f in offenders) + ")"
    out.verdict(record, line)
    return 0 if ok else 1


def _load_system(args):
    sysm, diags = dsl.parse_system(args.system, args.bound)
    for d in diags:
        if d.severity == dsl.ERROR or not _QUIET:
            print(d, file=sys.stderr)
    return sysm


def _cmd_fuse(args, out: _Out) -> int:
    sysm = _load_system(args)
    if sysm is None:
        return 2
    fused = system.fusion(sysm, args.bound)
    return _write_olog(fused, args.out, out)


def _cmd_consequence(args, out: _Out) -> int:
    sysm = _load_system(args)
    if sysm is None:
        return 2
    outdir = FsPath(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    for node, spec in sorted(system.system_consequence(sysm, args.bound).items()):
        target = outdir / f"{node}.olog"
        target.write_text(dsl.print_olog(spec), encoding="utf-8")
        out.note(f"wrote {target}")
    return 0


def _cmd_lot(args, out: _Out) -> int:
    spec, rc = _load_spec(args.olog)
    if spec is None:
        return rc
    try:
        if args.move == "contract":
            facts = [dsl.parse_fact_text(f, spec.graph) for f in args.fact]
            result = flow.lot_contract(spec, facts)
        elif args.move == "expand":
            facts = [dsl.parse_fact_text(f, spec.graph) for f in args.fact]
            result = flow.lot_expand(spec, facts)
        elif args.move == "revise":
            dels = [dsl.parse_fact_text(f, spec.graph) for f in args.delete]
            adds = [dsl.parse_fact_text(f, spec.graph) for f in args.add]
            result = flow.lot_revise(spec, dels, adds)
        else:  # analogy
            tgt, rc = _load_spec(args.target)
            if tgt is None:
                return rc
            try:
                text = FsPath(args.morphism).read_text(encoding="utf-8")
            except OSError as exc:
                return _fail_usage(f"cannot read '{args.morphism}': {exc}")
            h, diags = dsl.parse_morphism(text, spec, tgt, args.morphism)
            for d in diags:
                print(d, file=sys.stderr)
            if h is None:
                return 2
            result = flow.lot_analogy(h, spec, name=tgt.name)
    except OlogError as exc:
        return _fail_usage(str(exc))
    return _write_olog(result, args.out, out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="olog", description="Author, validate, and connect ologs."
    )
    parser.add_argument("--bound", type=int, default=entail.DEFAULT_BOUND,
                        help="maximum path length for entailment (default 6)")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--quiet", action="store_true")

    # The same flags are accepted after the subcommand; SUPPRESS keeps a
    # subparser from clobbering a value parsed by the main parser.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)

    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="parse and structurally validate an olog")
    s.add_argument("olog")
    s.set_defaults(fn=_cmd_check)

    s = sub.add_parser("entail", parents=[common], help="decide one fact within the bound")
    s.add_argument("olog")
    s.add_argument("--fact", required=True, help='e.g. "parents;w = mother"')
    s.add_argument("--require-entailed", action="store_true",
                   help="exit 1 unless the fact is entailed")
    s.set_defaults(fn=_cmd_entail)

    s = sub.add_parser("validate", parents=[common], help="check instance data: facts and sketch checks")
    s.add_argument("olog")
    s.add_argument("--data", required=True, help="directory of <type>.csv tables")
    s.set_defaults(fn=_cmd_validate)

    s = sub.add_parser("synth", parents=[common], help="synthesize a sketch target from instance data")
    s.add_argument("olog")
    s.add_argument("--data", required=True)
    s.add_argument("--decl", required=True, help="target type of the declaration")
    s.add_argument("-o", "--out", help="directory for the generated tables")
    s.set_defaults(fn=_cmd_synth)

    s = sub.add_parser("sqlgen", parents=[common], help="emit a relational schema")
    s.add_argument("olog")
    s.add_argument("-o", "--out")
    s.add_argument("--with-inserts", metavar="DATADIR")
    s.set_defaults(fn=_cmd_sqlgen)

    s = sub.add_parser("flow", parents=[common], help="move facts along a morphism")
    s.add_argument("direction", choices=["dir", "inv"])
    s.add_argument("--morphism", required=True)
    s.add_argument("--source", required=True, help="source .olog")
    s.add_argument("--target", required=True, help="target .olog")
    s.add_argument("-o", "--out")
    s.set_defaults(fn=_cmd_flow)

    s = sub.add_parser("morphism", parents=[common], help="morphism tools")
    msub = s.add_subparsers(dest="subcommand", required=True)
    mc = msub.add_parser("check", parents=[common], help="does the morphism preserve entailment?")
    mc.add_argument("--morphism", required=True)
    mc.add_argument("--source", required=True)
    mc.add_argument("--target", required=True)
    mc.set_defaults(fn=_cmd_morphism_check)

    s = sub.add_parser("fuse", parents=[common], help="fuse a system onto its optimal core")
    s.add_argument("system")
    s.add_argument("-o", "--out")
    s.set_defaults(fn=_cmd_fuse)

    s = sub.add_parser("consequence", parents=[common], help="system consequence, one olog per node")
    s.add_argument("system")
    s.add_argument("--out-dir", required=True)
    s.set_defaults(fn=_cmd_consequence)

    s = sub.add_parser("lot", parents=[common], help="lattice-of-theories moves")
    lsub = s.add_subparsers(dest="move", required=True)
    for move in ("contract", "expand"):
        m = lsub.add_parser(move, parents=[common])
        m.add_argument("olog")
        m.add_argument("--fact", action="append", required=True)
        m.add_argument("-o", "--out")
        m.set_defaults(fn=_cmd_lot, move=move)
    m = lsub.add_parser("revise", parents=[common])
    m.add_argument("olog")
    m.add_argument("--delete", action="append", default=[])
    m.add_argument("--add", action="append", default=[])
    m.add_argument("-o", "--out")
    m.set_defaults(fn=_cmd_lot, move="revise")
    m = lsub.add_parser("analogy", parents=[common])
    m.add_argument("olog")
    m.add_argument("--morphism", required=True)
    m.add_argument("--target", required=True)
    m.add_argument("-o", "--out")
    m.set_defaults(fn=_cmd_lot, move="analogy")

    return parser


def main(argv=None) -> int:
    global _QUIET
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    _QUIET = args.quiet
    out = _Out(args.format, args.quiet)
    try:
        return args.fn(args, out)
    except OlogError as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
