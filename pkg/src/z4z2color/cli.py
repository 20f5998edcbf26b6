"""Command line driver.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import multiprocessing
import os
import sys
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from . import generators, oracle
from .coloring import Certificate, check_certificate
from .errors import BadParameter, BudgetExhausted, GraphError, InvalidColoring
from .factor import oddness_witness
from .graph import CubicGraph
from .graph6 import parse_graph6, to_graph6
from .pipeline import PipelineConfig, PipelineReport, run_pipeline

log = logging.getLogger("z4z2color")

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def read_graphs(source: str) -> list[tuple[str, CubicGraph]]:
    """Graphs from a graph6 file, ``-`` for stdin, or a generator spec."""
    if source == "-":
        lines = sys.stdin.read().splitlines()
        label = "stdin"
    elif os.path.exists(source):
        lines = Path(source).read_text().splitlines()
        label = Path(source).stem
    else:
        try:
            return [(source, generators.by_name(source))]
        except (BadParameter, ValueError) as exc:
            raise InputError(f"{source!r} is neither a file nor a generator spec: {exc}") from exc
    out = []
    for i, line in enumerate(lines):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.append((f"{label}:{i + 1}", parse_graph6(line)))
        except GraphError as exc:
            raise InputError(f"line {i + 1}: {exc}") from exc
    if not out:
        raise InputError("no graphs in input")
    return out


def _config(args: argparse.Namespace) -> PipelineConfig:
    return PipelineConfig(pm_limit=args.pm_limit, search_nodes=args.search_nodes,
                          oracle_nodes=args.oracle_nodes)


def to_dot(cert: Certificate) -> str:
    """F colored per cycle, M dashed, F-paths bold."""
    g = parse_graph6(cert.graph6)
    palette = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "teal"]
    cyc_of_edge = {}
    for k, cyc in enumerate(cert.two_factor):
        for i in range(len(cyc)):
            cyc_of_edge[g.edge_index(cyc[i], cyc[(i + 1) % len(cyc)])] = k
    m = {g.edge_index(u, v) for u, v in cert.matching}
    bold = set()
    for p in cert.f_matching:
        bold.update(g.edge_index(p[i], p[i + 1]) for i in range(len(p) - 1))
    lines = ["graph G {", "  node [shape=circle, fontsize=10];"]
    for e, (u, v) in enumerate(g.edges):
        x, y = cert.coloring[str(e)]
        attrs = [f'label="({x},{y})"']
        if e in cyc_of_edge:
            attrs.append(f"color={palette[cyc_of_edge[e] % len(palette)]}")
        else:
            attrs.append("color=gray")
        if e in m:
            attrs.append("style=dashed")
        elif e in bold:
            attrs.append("penwidth=3")
        lines.append(f"  {u} -- {v} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _safe(name: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in name)


def cmd_color(args: argparse.Namespace) -> int:
    graphs = read_graphs(args.input)
    cfg = _config(args)
    code = EXIT_OK
    for gid, g in graphs:
        rep = run_pipeline(g, cfg, gid)
        log.info("%s: %s via %s", gid, rep.verdict, rep.stage)
        if rep.certificate is None:
            print(json.dumps({"id": gid, "verdict": rep.verdict, "budgets_hit": rep.budgets_hit}))
            if rep.verdict == "unknown":
                code = max(code, EXIT_BUDGET)
            continue
        if not check_certificate(rep.certificate).ok:
            code = EXIT_VERIFY
        text = rep.certificate.to_json(indent=args.indent)
        if args.out_dir:
            d = Path(args.out_dir)
            d.mkdir(parents=True, exist_ok=True)
            (d / f"{_safe(gid)}.json").write_text(text + "\n")
        else:
            print(text)
        if args.emit_dot:
            d = Path(args.emit_dot)
            d.mkdir(parents=True, exist_ok=True)
            (d / f"{_safe(gid)}.dot").write_text(to_dot(rep.certificate))
    return code


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        text = sys.stdin.read() if args.certificate == "-" else Path(args.certificate).read_text()
        cert = Certificate.from_json(text)
        chk = check_certificate(cert)
    except (OSError, ValueError, KeyError, TypeError, GraphError) as exc:
        if isinstance(exc, InvalidColoring):
            print(json.dumps({"ok": False, "problems": [str(exc)]}))
            return EXIT_VERIFY
        raise InputError(f"cannot read certificate: {exc}") from exc
    print(json.dumps({"ok": chk.ok, "verdicts": chk.verdicts.as_dict(), "problems": list(chk.problems)}))
    return EXIT_OK if chk.ok else EXIT_VERIFY


def cmd_oracle(args: argparse.Namespace) -> int:
    for gid, g in read_graphs(args.input):
        v = oracle.brute_force_z4z2(g, paranoid=args.paranoid, max_nodes=args.oracle_nodes)
        t = oracle.is_3_edge_colorable(g, args.oracle_nodes)
        out = {"id": gid, "colorable": v.colorable, "three_edge_colorable": t.colorable,
               "nodes": v.nodes, "seconds": round(v.seconds, 6), **v.stats}
        if v.witness is not None:
            out["witness"] = [[c.x, c.y] for c in v.witness.colors]
        print(json.dumps(out))
    return EXIT_OK


def _survey_one(job: tuple[str, str, dict, str | None, bool]) -> str:
    gid, g6, cfg_kw, cert_dir, timings = job
    g = parse_graph6(g6)
    rep: PipelineReport = run_pipeline(g, PipelineConfig(**cfg_kw), gid)
    if rep.certificate is not None and cert_dir:
        p = Path(cert_dir) / f"{_safe(gid)}.json"
        p.write_text(rep.certificate.to_json() + "\n")
        rep.certificate_path = str(p)
    d = rep.to_dict(timings)
    d["certificate_ok"] = None if rep.certificate is None else check_certificate(rep.certificate).ok
    return json.dumps(d, sort_keys=True)


def cmd_survey(args: argparse.Namespace) -> int:
    graphs = read_graphs(args.input)
    if args.cert_dir:
        Path(args.cert_dir).mkdir(parents=True, exist_ok=True)
    kw = {"pm_limit": args.pm_limit, "search_nodes": args.search_nodes, "oracle_nodes": args.oracle_nodes}
    jobs = [(gid, to_graph6(g), kw, args.cert_dir, not args.no_timings) for gid, g in graphs]
    out = open(args.out, "w") if args.out and args.out != "-" else sys.stdout
    code = EXIT_OK
    try:
        if args.workers > 1:
            with multiprocessing.Pool(args.workers) as pool:
                lines: Iterable[str] = pool.imap(_survey_one, jobs)
                code = _write_lines(lines, out)
        else:
            code = _write_lines(map(_survey_one, jobs), out)
    finally:
        if out is not sys.stdout:
            out.close()
    return code


def _write_lines(lines: Iterable[str], out) -> int:
    code = EXIT_OK
    for line in lines:
        rec = json.loads(line)
        if rec["certificate_ok"] is False:
            code = EXIT_VERIFY
        elif rec["verdict"] == "unknown" and code == EXIT_OK:
            code = EXIT_BUDGET
        out.write(line + "\n")
        out.flush()
    return code


def _gen_graphs(args: argparse.Namespace) -> Iterator[CubicGraph]:
    fam = args.family.lower()
    p = args.params
    if fam == "controls":
        yield from generators.controls().values()
    elif fam == "snarks":
        yield from generators.named_snarks().values()
    elif fam in ("perm-snarks", "permutation-snarks"):
        for pg in generators.random_permutation_snarks(args.count, seed=args.seed):
            yield pg.graph
    elif fam == "random":
        sizes = [int(x) for x in p] or [14]
        yield from generators.random_cubic_graphs(args.count, sizes, seed=args.seed)
    else:
        spec = fam if not p else f"{fam}:{','.join(p)}"
        yield generators.by_name(spec)


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        for g in _gen_graphs(args):
            print(to_graph6(g))
    except (BadParameter, ValueError) as exc:
        raise InputError(str(exc)) from exc
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    for gid, g in read_graphs(args.input):
        ow = oddness_witness(g)
        r = oracle.resistance(g)
        er = oracle.reduction_number(g)
        col = oracle.brute_force_z4z2(g, max_nodes=args.oracle_nodes).colorable
        out = {
            "id": gid, "n": g.n, "resistance": r, "reduction_number": er,
            "oddness": ow.oddness, "oddness_exact": ow.proven_minimal,
            "z4z2_colorable": col,
            "bound_holds": 2 * er <= g.n - ow.oddness if col else None,
        }
        print(json.dumps(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="z4z2color", description="Proper Z4 x Z2 edge-colorings of cubic graphs")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def budgets(p: argparse.ArgumentParser) -> None:
        p.add_argument("--pm-limit", type=int, default=None,
                       help="perfect matchings to scan (default: all up to 30 vertices, else 20000)")
        p.add_argument("--search-nodes", type=int, default=oracle.DEFAULT_CHARACTERIZATION_NODES)
        p.add_argument("--oracle-nodes", type=int, default=oracle.DEFAULT_ORACLE_NODES)

    p = sub.add_parser("color", help="color graphs and print certificates")
    p.add_argument("input", help="graph6 file, '-' for stdin, or generator spec such as flower:5")
    budgets(p)
    p.add_argument("--out-dir")
    p.add_argument("--emit-dot", metavar="DIR")
    p.add_argument("--indent", type=int, default=None)
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="re-check a certificate")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force colorability")
    p.add_argument("input")
    p.add_argument("--paranoid", action="store_true", help="disable symmetry reduction")
    p.add_argument("--oracle-nodes", type=int, default=oracle.DEFAULT_ORACLE_NODES)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("survey", help="batch run, one JSON line per graph")
    p.add_argument("input")
    p.add_argument("--out", default="-")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cert-dir")
    p.add_argument("--no-timings", action="store_true", help="omit timing fields for byte-stable output")
    budgets(p)
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("gen", help="print graph6 for a family")
    p.add_argument("family", help="petersen, blanusa, flower, prism, k4, k33, q3, perm, "
                                  "controls, snarks, perm-snarks, random")
    p.add_argument("params", nargs="*")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", help="resistance, reduction number and the bound check")
    p.add_argument("input")
    p.add_argument("--oracle-nodes", type=int, default=oracle.DEFAULT_ORACLE_NODES)
    p.set_defaults(func=cmd_reduce)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
