"""Command-line front end.

Exit codes: 0 success, 1 internal or computation error, 2 usage or parse
error, 3 certification gap or failed verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence

from . import dualfsig as dfs
from .catalog import ARQuiverSpec, DynkinLabel, ParameterError, VertexId, build, parse_vertex, vertex_to_json
from .invariants import InvariantReport, hk_multiplicity, render
from .keylemma import CertificateError, GeneratorTable, TableParseError, certificate_json, greedy_chain, verify_minor
from .primes import DEFAULT_PRIMES

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_GAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- argument parsing ----------------------------------------------------------


def _label_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("singularity")
    g.add_argument("--type", choices=["A", "D", "E6", "E7", "E8"])
    g.add_argument("--n", type=int)
    g.add_argument("--cyclic", nargs=2, type=int, metavar=("N", "Q"))
    g.add_argument("--fixture")
    return p


def _compute_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("computation")
    g.add_argument("--seed", type=int, help="sampling seed (default: $AR_SIG_SEED or 0)")
    g.add_argument("--primes", type=int, default=3, help=f"number of primes, 1..{len(DEFAULT_PRIMES)}")
    g.add_argument("--trials", type=int, default=8, help="samples per prime")
    g.add_argument("--depth", type=int, help="unrolling depth of the translation quiver")
    return p


def _format_option(p: argparse.ArgumentParser, choices: Sequence[str], default: str) -> None:
    p.add_argument("--format", choices=list(choices), default=default)
    p.add_argument("--reduced", action="store_true", help="print fractions in lowest terms")


def build_parser() -> argparse.ArgumentParser:
    lab, comp = _label_options(), _compute_options()
    parser = argparse.ArgumentParser(prog="arsig", description="AR quivers, counting and dual F-signatures.")
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("quiver", parents=[lab], help="emit the AR quiver")
    q.add_argument("--emit", choices=["dot", "json"], default="dot")

    d = sub.add_parser("dualfsig", parents=[lab, comp], help="dual F-signature of one or all modules")
    sel = d.add_mutually_exclusive_group(required=True)
    sel.add_argument("--module")
    sel.add_argument("--all", action="store_true")
    _format_option(d, ["text", "json", "csv", "md", "markdown", "dot"], "text")

    for name, helptext in (("hk", "Hilbert-Kunz multiplicity"), ("fsig", "F-signatures"), ("mu", "minimal generator counts")):
        c = sub.add_parser(name, parents=[lab], help=helptext)
        _format_option(c, ["text", "json", "csv", "md", "markdown", "dot"], "text")

    lm = sub.add_parser("lemma", help="greedy chain certificate for a 0/1 table")
    lm.add_argument("--table", required=True, help="CSV file, or - for stdin")
    lm.add_argument("--seed", type=int)
    lm.add_argument("--primes", type=int, default=3)
    lm.add_argument("--strategy", choices=["auto", "lex", "modular"], default="auto")
    lm.add_argument("--out", help="write the certificate here instead of stdout")

    r = sub.add_parser("replay", parents=[lab], help="re-check a recorded certificate")
    r.add_argument("--module", required=True)
    r.add_argument("--certificate", required=True, help="JSON file from dualfsig --format json, or - for stdin")
    r.add_argument("--depth", type=int)
    return parser


def _label(args: argparse.Namespace) -> DynkinLabel:
    given = [x for x in (args.type, args.cyclic, args.fixture) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --type, --cyclic, --fixture")
    if args.type is not None:
        if args.type in ("A", "D"):
            if args.n is None:
                raise UsageError(f"--type {args.type} needs --n")
            return DynkinLabel.A(args.n) if args.type == "A" else DynkinLabel.D(args.n)
        if args.n is not None:
            raise UsageError(f"--n does not apply to {args.type}")
        return DynkinLabel.E(int(args.type[1]))
    if args.n is not None:
        raise UsageError("--n only applies to --type A or D")
    if args.cyclic is not None:
        return DynkinLabel.cyclic(*args.cyclic)
    return DynkinLabel.fixture(args.fixture)


def _module(spec: ARQuiverSpec, text: str) -> VertexId:
    try:
        v = parse_vertex(text)
    except ValueError as exc:
        raise UsageError(f"bad module {text!r}") from exc
    if v not in spec.vertices:
        raise UsageError(f"{spec.label} has no vertex {text!r}")
    return v


def _seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("AR_SIG_SEED")
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise UsageError(f"AR_SIG_SEED must be an integer, got {env!r}") from exc


def _config(args: argparse.Namespace) -> dfs.DualFSigConfig:
    if not 1 <= args.primes <= len(DEFAULT_PRIMES):
        raise UsageError(f"--primes must be in 1..{len(DEFAULT_PRIMES)}")
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    if args.depth is not None and args.depth < 2:
        raise UsageError("--depth must be at least 2")
    return dfs.DualFSigConfig(trials=args.trials, n_primes=args.primes, seed=_seed(args), depth=args.depth)


def _fmt(args: argparse.Namespace) -> str:
    f = "md" if args.format == "markdown" else args.format
    if f == "dot":
        raise UsageError("--format dot is only available for the quiver command (use --emit dot)")
    return f


# -- quiver ----------------------------------------------------------------------


def _dot_id(v: VertexId) -> str:
    return "v" + ("_".join(map(str, v)) if isinstance(v, tuple) else str(v))


def quiver_dot(spec: ARQuiverSpec) -> str:
    lines = [f'digraph "{spec.label}" {{', "  node [shape=circle];"]
    for v in spec.vertices:
        style = ", shape=doublecircle" if v == spec.projective else ""
        lines.append(f'  {_dot_id(v)} [label="{spec.vertex_name(v)} ({spec.ranks[v]})"{style}];')
    for a in spec.arrows:
        lines.append(f'  {_dot_id(a.src)} -> {_dot_id(a.dst)} [label="{a.label}"];')
    for v in spec.vertices:
        t = spec.tau0[v]
        if t != v:
            lines.append(f'  {_dot_id(v)} -> {_dot_id(t)} [style=dashed, arrowhead=open, label="tau"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_quiver(args: argparse.Namespace) -> int:
    spec = build(_label(args))
    if args.emit == "dot":
        sys.stdout.write(quiver_dot(spec))
    else:
        sys.stdout.write(json.dumps(spec.to_json(), sort_keys=True, indent=2) + "\n")
    return EXIT_OK


# -- dual F-signature ------------------------------------------------------------


def _value_text(r: dfs.DualFSigResult, reduced: bool) -> str:
    num, den = r.rendered(reduced)
    return f"{num}/{den}"


# Rows of the Dynkin diagram, top to bottom; None is an empty cell.
def _diagram(label: DynkinLabel) -> list[list[VertexId | None]] | None:
    if label.kind == "A":
        return [list(range(1, label.n + 1))]
    if label.kind == "D":
        n = label.n
        width = n - 1
        top: list[VertexId | None] = [None] * width
        bottom: list[VertexId | None] = [None] * width
        top[-1], bottom[-1] = n - 1, n
        return [top, list(range(1, n - 1)) + [None], bottom]
    if label.kind == "E6":
        return [[None, None, 1, None, None], [5, 3, 2, 4, 6]]
    if label.kind == "E7":
        return [[None, None, 7, None, None, None], [1, 2, 3, 4, 5, 6]]
    if label.kind == "E8":
        return [[None, None, None, None, 8, None, None], [1, 2, 3, 4, 5, 6, 7]]
    return None


def _md_row(cells: Sequence[str]) -> str:
    return "| " + " | ".join(cells) + " |"


def results_markdown(spec: ARQuiverSpec, results: Sequence[dfs.DualFSigResult], reduced: bool) -> str:
    by = {r.module: r for r in results}
    out: list[str] = [f"## {spec.label}", ""]
    layout = _diagram(spec.label)
    if layout is not None and set(by) == set(spec.vertices):
        width = len(layout[0])
        out.append(_md_row([""] * width))
        out.append(_md_row(["---"] * width))
        for grid in layout:
            out.append(_md_row([f"M{v}: {_value_text(by[v], reduced)}" if v is not None else "" for v in grid]))
        out.append("")
        out.append(f"R: {_value_text(by[spec.projective], reduced)}")
        out.append("")
    out.append(_md_row(["module", "rank", "upper", "certified", "value", "status"]))
    out.append(_md_row(["---"] * 6))
    for r in results:
        out.append(
            _md_row(
                [
                    spec.vertex_name(r.module),
                    str(r.rank),
                    dfs.frac_text(r.upper),
                    dfs.frac_text(r.certified),
                    _value_text(r, reduced),
                    r.status,
                ]
            )
        )
    return "\n".join(out) + "\n"


def results_csv(spec: ARQuiverSpec, results: Sequence[dfs.DualFSigResult], reduced: bool) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "module", "rank", "group_order", "upper", "certified", "num", "den", "status", "kind"])
    for r in results:
        num, den = r.rendered(reduced)
        kind = "dual F-signature" if spec.label.is_ade else "block value"
        w.writerow(
            [str(spec.label), spec.vertex_name(r.module), r.rank, r.group_order,
             dfs.frac_text(r.upper), dfs.frac_text(r.certified), num, den, r.status, kind]
        )
    return buf.getvalue()


def results_text(spec: ARQuiverSpec, results: Sequence[dfs.DualFSigResult], reduced: bool) -> str:
    lines = []
    for r in results:
        line = f"{spec.vertex_name(r.module)}: {_value_text(r, reduced)}"
        if r.status != "exact":
            line += f" (gap: certified {dfs.frac_text(r.certified)}, upper {dfs.frac_text(r.upper)})"
        if not spec.label.is_ade:
            line += " [block value]"
        lines.append(line)
    return "\n".join(lines) + "\n"


def cmd_dualfsig(args: argparse.Namespace) -> int:
    fmt = _fmt(args)
    spec = build(_label(args))
    cfg = _config(args)
    mods = list(spec.vertices) if args.all else [_module(spec, args.module)]
    results = [dfs.dual_f_signature(spec, m, config=cfg) for m in mods]
    if fmt == "json":
        sys.stdout.write(dfs.dumps(results, args.reduced) + "\n")
    elif fmt == "csv":
        sys.stdout.write(results_csv(spec, results, args.reduced))
    elif fmt == "md":
        sys.stdout.write(results_markdown(spec, results, args.reduced))
    else:
        sys.stdout.write(results_text(spec, results, args.reduced))
    gaps = [r for r in results if r.status != "exact"]
    if gaps and spec.label.is_ade:
        for r in gaps:
            print(
                f"gap at {spec.vertex_name(r.module)}: certified {dfs.frac_text(r.certified)}, "
                f"upper {dfs.frac_text(r.upper)}",
                file=sys.stderr,
            )
        return EXIT_GAP
    return EXIT_OK


# -- invariants ------------------------------------------------------------------


def cmd_hk(args: argparse.Namespace) -> int:
    fmt = _fmt(args)
    spec = build(_label(args))
    e = hk_multiplicity(spec)
    text = render(e, spec.group_order, args.reduced)
    if fmt == "json":
        num, den = text.split("/")
        doc = {"label": str(spec.label), "group_order": spec.group_order, "e_hk": {"num": int(num), "den": int(den)}}
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    elif fmt == "csv":
        sys.stdout.write(f"label,group_order,e_hk\n{spec.label},{spec.group_order},{text}\n")
    elif fmt == "md":
        sys.stdout.write(_md_row(["label", "|G|", "e_HK"]) + "\n" + _md_row(["---"] * 3) + "\n")
        sys.stdout.write(_md_row([str(spec.label), str(spec.group_order), text]) + "\n")
    else:
        sys.stdout.write(text + "\n")
    return EXIT_OK


def _invariant_table(args: argparse.Namespace, column: str) -> int:
    fmt = _fmt(args)
    spec = build(_label(args))
    rep = InvariantReport.of(spec)
    G = spec.group_order

    def cell(v) -> str:
        return str(v.mu) if column == "mu" else render(v.f_signature, G, args.reduced)

    if fmt == "json":
        if column == "mu":
            doc = {"label": rep.label, "mu": {v.name: v.mu for v in rep.vertices},
                   "order": [vertex_to_json(v.vertex) for v in rep.vertices]}
            sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        else:
            sys.stdout.write(rep.dumps(args.reduced) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["vertex", "rank", column])
        for v in rep.vertices:
            w.writerow([v.name, v.rank, cell(v)])
        sys.stdout.write(buf.getvalue())
    elif fmt == "md":
        rows = [_md_row(["vertex", "rank", column]), _md_row(["---"] * 3)]
        rows += [_md_row([v.name, str(v.rank), cell(v)]) for v in rep.vertices]
        sys.stdout.write("\n".join(rows) + "\n")
    else:
        if column == "mu":
            sys.stdout.write("(" + ",".join(str(v.mu) for v in rep.vertices) + ")\n")
        else:
            sys.stdout.write("".join(f"{v.name}: {cell(v)}\n" for v in rep.vertices))
    return EXIT_OK


def cmd_fsig(args: argparse.Namespace) -> int:
    return _invariant_table(args, "f_signature")


def cmd_mu(args: argparse.Namespace) -> int:
    return _invariant_table(args, "mu")


# -- key lemma -------------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def cmd_lemma(args: argparse.Namespace) -> int:
    if not 3 <= args.primes <= len(DEFAULT_PRIMES):
        raise UsageError(f"--primes must be in 3..{len(DEFAULT_PRIMES)} for the key lemma")
    try:
        table = GeneratorTable.from_csv(_read(args.table))
    except TableParseError as exc:
        raise UsageError(str(exc)) from exc
    seed = _seed(args)
    primes = DEFAULT_PRIMES[: args.primes]
    cert = greedy_chain(table)
    ver = verify_minor(table, cert, seed=seed, primes=primes, strategy=args.strategy)
    doc = certificate_json(table, cert, ver, seed, primes) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc)
    else:
        sys.stdout.write(doc)
    return EXIT_OK if ver.verified else EXIT_GAP


# -- replay ----------------------------------------------------------------------


def cmd_replay(args: argparse.Namespace) -> int:
    spec = build(_label(args))
    m = _module(spec, args.module)
    try:
        doc = json.loads(_read(args.certificate))
    except json.JSONDecodeError as exc:
        raise UsageError(f"certificate is not JSON: {exc.msg}") from exc
    if isinstance(doc, list):
        want = vertex_to_json(m)
        doc = next((d for d in doc if d.get("module") == want), None)
        if doc is None:
            raise UsageError(f"no entry for module {args.module} in the report")
    cert = doc.get("certificate", doc) if isinstance(doc, dict) else None
    if not isinstance(cert, dict) or "strategy" not in cert:
        raise UsageError("no certificate found in the JSON document")
    ok = dfs.replay(spec, m, cert, depth=args.depth)
    n, k = cert.get("n"), cert.get("blocks", 1)
    print(f"{spec.vertex_name(m)}: {'verified' if ok else 'FAILED'} {n}/{k} blocks ({cert['strategy']})")
    return EXIT_OK if ok else EXIT_GAP


COMMANDS = {
    "quiver": cmd_quiver,
    "dualfsig": cmd_dualfsig,
    "hk": cmd_hk,
    "fsig": cmd_fsig,
    "mu": cmd_mu,
    "lemma": cmd_lemma,
    "replay": cmd_replay,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ParameterError, CertificateError) as exc:
        print(f"arsig: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - reported as an internal failure
        print(f"arsig: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
