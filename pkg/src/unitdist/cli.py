"""Command-line front end.

Exit codes: 0 success, 1 a check or claim failed, 2 usage or input error,
3 a search budget ran out.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import fixture
from .certificate import certificate_to_json, check_certificate
from .chromatic import ChiUnresolved, chi_exact, structure_probe
from .exact import Field, LiteralError, parse_elem, to_literal
from .geometry import DiagForm, UGraph, build_exact_graph, build_fp_graph, from_dimacs, to_dimacs
from .numtheory import scan_embedding_primes
from .reduction import OracleId, oracle_trace

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _parse_point(text: str, fld: Field | None) -> tuple:
    return tuple(parse_elem(part.strip(), fld) for part in text.split(";"))


def read_points(path: str, fld: Field) -> list[tuple]:
    """One point per line, coordinates separated by ';', '#' starts a comment."""
    pts = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            pts.append(_parse_point(line, fld))
        except LiteralError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from None
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from None
    if not pts:
        raise UsageError(f"{path}: no points")
    return pts


def _form(text: str | None, d: int) -> DiagForm:
    if text is None:
        return DiagForm.euclidean(d)
    form = DiagForm.parse(text)
    if form.d != d:
        raise UsageError(f"--form has {form.d} coefficients, dimension is {d}")
    return form


def _graph_from_args(args) -> UGraph:
    if getattr(args, "dimacs_in", None):
        return from_dimacs(Path(args.dimacs_in).read_text(encoding="utf-8"))
    if getattr(args, "points", None):
        fld = Field.parse(args.field)
        pts = read_points(args.points, fld)
        return build_exact_graph(pts, _form(args.form, len(pts[0])), name=Path(args.points).name)
    if getattr(args, "fixture", None):
        return fixture(args.fixture).graph()
    if args.p is not None:
        return build_fp_graph(args.p, args.d, _form(args.form, args.d))
    raise UsageError("give a graph: --p/--d, --field/--points, --fixture or --dimacs-in")


def _solve(g: UGraph, args) -> int:
    try:
        cert = chi_exact(g, node_budget=args.node_budget, time_budget=args.time_budget, threads=args.threads)
    except ChiUnresolved as exc:
        print(f"chi unresolved: {exc.lo} <= chi <= {exc.hi}")
        return EXIT_BUDGET
    print(f"chi = {cert.chi}")
    lo = cert.lower
    if lo.kind == "exhaustive_unsat":
        print(f"lower bound: no {lo.k}-colouring (complete search, {lo.nodes} nodes)")
    else:
        print(f"lower bound: {lo.kind} {' '.join(map(str, lo.witness))}")
    if args.certificate:
        _write(args.certificate, certificate_to_json(g, cert))
    if getattr(args, "dimacs", None):
        _write(args.dimacs, to_dimacs(g))
    return EXIT_OK


def cmd_chi_fp(args) -> int:
    g = build_fp_graph(args.p, args.d, _form(args.form, args.d))
    print(f"graph: {g.name} n = {g.n} m = {g.m}")
    return _solve(g, args)


def cmd_chi_points(args) -> int:
    g = _graph_from_args(args)
    print(f"graph: n = {g.n} m = {g.m}")
    return _solve(g, args)


def cmd_color(args) -> int:
    oid = OracleId.parse(args.oracle)
    try:
        pt = _parse_point(args.point, None)
    except LiteralError as exc:
        raise UsageError(str(exc)) from None
    trace = oracle_trace(oid, pt)
    print(trace["color"])
    if args.verbose:
        print(f"oracle: {trace['oracle']}")
        print("representative: " + "; ".join(to_literal(r) for r in trace["representative"]))
        residue = " ".join(map(str, trace["residue"]))
        if trace["residue_names"]:
            residue += f" ({trace['residue_names']})"
        print(f"residue: {residue}")
        print(f"residue colour: {trace['color']}")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    from .claims import FAIL, report_json, report_table, verify_paper

    claims = verify_paper(budget=args.budget, samples=args.samples, seed=args.seed)
    sys.stdout.write(report_table(claims))
    if args.json:
        _write(args.json, report_json(claims))
    return EXIT_FAIL if any(c.status == FAIL for c in claims) else EXIT_OK


def cmd_scan_primes(args) -> int:
    qr = [int(s) for s in args.qr.split(",") if s.strip()] if args.qr else []
    if args.mod4 not in (None, 3):
        raise UsageError("--mod4 only supports 3")
    for rep in scan_embedding_primes(args.mod4 == 3, qr, args.limit):
        print(rep.prime)
    return EXIT_OK


def cmd_export_dimacs(args) -> int:
    text = to_dimacs(_graph_from_args(args))
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_probe(args) -> int:
    g = _graph_from_args(args)
    rep = structure_probe(g)
    degs = [g.degree(i) for i in range(g.n)]
    print(f"n = {g.n}")
    print(f"m = {g.m}")
    print(f"degree = {min(degs, default=0)}..{max(degs, default=0)}")
    print(f"bipartite = {str(rep.is_bipartite).lower()}")
    print(f"triangles = {rep.triangle_count}")
    print(f"shortest odd cycle = {rep.shortest_odd_cycle if rep.shortest_odd_cycle else 'none'}")
    if args.check_certificate:
        cert = json.loads(Path(args.check_certificate).read_text(encoding="utf-8"))
        audit = check_certificate(g.n, g.edges, cert)
        print(f"certificate = {'ok' if audit.ok else 'INVALID'}")
        for msg in audit.messages:
            print(f"  {msg}")
        if not audit.ok:
            return EXIT_FAIL
        if audit.unsat_rechecked is False:
            return EXIT_BUDGET
    return EXIT_OK


def _add_graph_source(sp, fp=True):
    if fp:
        sp.add_argument("--p", type=int, help="prime for Gamma(F_p^d)")
        sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--field", default="q", help="q | quad:M | biquad:M1,M2")
    sp.add_argument("--points", help="points file: one point per line, ';' between coordinates")
    sp.add_argument("--fixture", help="named construction, e.g. moser_spindle")
    sp.add_argument("--dimacs-in", help="read the graph from a DIMACS file")
    sp.add_argument("--form", help="diagonal form coefficients, e.g. 1,-1")


def _add_solver(sp):
    sp.add_argument("--certificate", help="write the chi certificate (JSON)")
    sp.add_argument("--node-budget", type=int)
    sp.add_argument("--time-budget", type=float)
    sp.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="unitdist", description="Exact unit-distance graph toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("chi-fp", help="chromatic number of Gamma(F_p^d, q)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--form")
    sp.add_argument("--dimacs", help="also write the graph in DIMACS format")
    _add_solver(sp)
    sp.set_defaults(func=cmd_chi_fp)

    sp = sub.add_parser("chi-points", help="chromatic number of an exact point set")
    _add_graph_source(sp, fp=False)
    _add_solver(sp)
    sp.set_defaults(func=cmd_chi_points, p=None)

    sp = sub.add_parser("color", help="colour a point with a reduction oracle")
    sp.add_argument("--oracle", required=True, help=", ".join(o.value for o in OracleId))
    sp.add_argument("--point", required=True, help='e.g. "1/2; 1/2*sqrt(3)"')
    sp.add_argument("--verbose", action="store_true")
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("verify-paper", help="run every claim check")
    sp.add_argument("--json", help="write the claim report (JSON)")
    sp.add_argument("--budget", type=float, help="seconds; later claims are skipped")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify_paper)

    sp = sub.add_parser("scan-primes", help="primes with prescribed residue behaviour")
    sp.add_argument("--mod4", type=int)
    sp.add_argument("--qr", help="comma-separated integers that must be squares mod p")
    sp.add_argument("--limit", type=int, required=True)
    sp.set_defaults(func=cmd_scan_primes)

    sp = sub.add_parser("export-dimacs", help="write a graph in DIMACS edge format")
    _add_graph_source(sp)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_export_dimacs)

    sp = sub.add_parser("probe", help="structure report, optionally auditing a certificate")
    _add_graph_source(sp)
    sp.add_argument("--check-certificate", help="certificate JSON to audit against the graph")
    sp.set_defaults(func=cmd_probe)
    return ap


def run(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
