"""Command-line interface: ``efforge {build,verify,certificate,export-lp}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .builders import build_cycle_ef, build_matching_ef, build_spanning_tree_ef
from .errors import DomainError, InfeasibleError, SizeGuardError
from .graph import CompleteGraphContext, enumerate_cycles, enumerate_matchings, enumerate_spanning_trees
from .hashfam import DEFAULT_SEED, build_family
from .lpformat import export_lp
from .polyhedra import ExtendedFormulation, parse_rational, random_objectives, verify_projection_equals
from .symcert import build_certificate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
KINDS = ("spanning-tree", "matching", "cycle")


class UsageError(Exception):
    pass


def resolve_seed(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("EFFORGE_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"EFFORGE_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _need_ell(args: argparse.Namespace) -> int:
    if args.kind != "spanning-tree" and args.ell is None:
        raise UsageError(f"--ell is required for --kind {args.kind}")
    return args.ell


def make_formulation(kind: str, n: int, ell: int | None, seed: int) -> ExtendedFormulation:
    if kind == "spanning-tree":
        return build_spanning_tree_ef(n)
    if kind == "matching":
        if not (1 <= ell and 2 * ell <= n):
            raise DomainError(f"need 1 <= ell <= n/2, got n={n}, ell={ell}")
        return build_matching_ef(n, ell, build_family(n, 2 * ell, seed=seed))
    if not (3 <= ell <= n):
        raise DomainError(f"need 3 <= ell <= n, got n={n}, ell={ell}")
    return build_cycle_ef(n, ell, build_family(n, ell, seed=seed))


def oracle_vertices(kind: str, n: int, ell: int | None) -> list:
    ctx = CompleteGraphContext(n)
    if kind == "spanning-tree":
        objs = enumerate_spanning_trees(ctx)
    elif kind == "matching":
        objs = enumerate_matchings(ctx, ell)
    else:
        objs = enumerate_cycles(ctx, ell)
    return [s.vector() for s in objs]


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _load_formulation(path: str) -> ExtendedFormulation:
    try:
        return ExtendedFormulation.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot read formulation {path}: {exc}") from None


def cmd_build(args: argparse.Namespace) -> int:
    ell = _need_ell(args)
    ef = make_formulation(args.kind, args.n, ell, resolve_seed(args.seed))
    if args.out:
        _write(ef.dumps(), args.out)
    print(f"kind: {args.kind}")
    print(f"size: {ef.size()}")
    print(f"variables: {ef.dim}")
    print(f"equations: {len(ef.equations)}")
    print(f"blocks: {ef.blocks}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    ell = _need_ell(args)
    ef = _load_formulation(args.formulation)
    m = args.n * (args.n - 1) // 2
    if ef.ambient_dim != m:
        raise UsageError(f"formulation lives in dimension {ef.ambient_dim}, K_{args.n} has {m} edges")
    if args.objectives < 0:
        raise UsageError("--objectives must be nonnegative")
    verts = oracle_vertices(args.kind, args.n, ell)
    suite = random_objectives(m, args.objectives, resolve_seed(args.seed))
    rep = verify_projection_equals(ef, verts, suite)
    ok_v = rep.vertices_checked - len(rep.vertex_failures)
    print(f"vertices: {ok_v}/{rep.vertices_checked} in projection: {'pass' if not rep.vertex_failures else 'FAIL'}")
    for idx in rep.vertex_failures:
        print(f"  vertex {idx} not in projection: {[str(v) for v in verts[idx]]}")
    failed = {tuple(g.objective): g for g in rep.objective_failures}
    for k, c in enumerate(suite):
        g = failed.get(tuple(c))
        if g is None:
            print(f"objective {k}: pass")
        else:
            print(f"objective {k}: FAIL formulation={g.formulation_value} oracle={g.oracle_value} "
                  f"c={[str(v) for v in c]}")
    print(f"result: {'pass' if rep.passed else 'FAIL'}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_certificate(args: argparse.Namespace) -> int:
    cert = build_certificate(args.k, args.n)
    if args.out:
        _write(cert.dumps(), args.out)
    print(f"k: {cert.k}  n: {cert.n}")
    for i, c, lam in zip(cert.table.classes, cert.table.counts, cert.table.lambdas):
        print(f"  class i={i}: count={c} lambda={lam}")
    failing = sum(1 for c in cert.checks if not c.passed)
    print(f"patterns: {len(cert.checks)} checked, {failing} failing")
    print(f"slack_equation: {cert.slack_equation}")
    print(f"verdict: {str(cert.verdict).lower()}")
    return EXIT_OK if cert.verdict else EXIT_FAIL


def cmd_export_lp(args: argparse.Namespace) -> int:
    ef = _load_formulation(args.formulation)
    c = None
    if args.objective:
        try:
            raw = json.loads(Path(args.objective).read_text(encoding="utf-8"))
            c = [parse_rational(v) for v in raw]
        except (OSError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot read objective {args.objective}: {exc}") from None
        if len(c) != ef.ambient_dim:
            raise UsageError(f"objective has {len(c)} entries, expected {ef.ambient_dim}")
    _write(export_lp(ef, c), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="efforge", description="Exact extended formulations over K_n.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a formulation and write it as JSON")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int)
    p.add_argument("--seed", type=int, help="hash family seed (default: $EFFORGE_SEED or built-in)")
    p.add_argument("--out", help="output JSON file; omitted means summary only")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="compare a formulation with the brute-force hull")
    p.add_argument("--formulation", required=True)
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int)
    p.add_argument("--objectives", type=int, default=50, help="number of random objectives")
    p.add_argument("--seed", type=int, help="objective seed (default: $EFFORGE_SEED or built-in)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certificate", help="emit the symmetric-extension certificate")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("export-lp", help="write a formulation as a plain-text LP model")
    p.add_argument("--formulation", required=True)
    p.add_argument("--objective", help="JSON list with one rational per ambient coordinate")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_export_lp)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError, SizeGuardError) as exc:
        print(f"efforge {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleError as exc:
        print(f"efforge {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
