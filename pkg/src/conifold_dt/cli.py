"""Command-line entry point: ``conifold-dt <subcommand> [options]``.

Exit status: 0 success, 1 domain error, 2 usage error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import flop, mmalgebra, partial, qseries, strip, verify
from .errors import ConifoldError
from .strip import StripDiagram, Triangulation

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3

SUBCOMMANDS = {
    "count": "face/edge/triangulation counts of C_{m,n}",
    "enum": "list triangulations with their edge types",
    "zprime": "reduced partition function of one triangulation (--subset)",
    "ztot": "total partition function and homogeneity report",
    "degree": "degree from the binomial and probabilistic formulas",
    "sigma": "signature closed form vs brute force, N = m + n",
    "flop": "change-of-variables total for C_{1,n}",
    "partial": "partial-resolution factorization (--blocks)",
    "expand": "q-expansion of ztot (or zprime with --subset) to --order",
    "verify": "run the invariant suite up to --max-size",
}


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _blocks(text: str) -> list[tuple[int, int]]:
    try:
        out = []
        for item in text.split(","):
            a, b = item.split(":")
            out.append((int(a), int(b)))
        return out
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected m1:n1,m2:n2,..., got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--subset", type=_int_list)
    common.add_argument("--blocks", type=_blocks)
    common.add_argument("--order", type=int, default=qseries.DEFAULT_ORDER)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--max-size", type=int, default=10)

    parser = argparse.ArgumentParser(
        prog="conifold-dt",
        description="Total DT partition functions of generalised conifolds C_{m,n}.",
    )
    sub = parser.add_subparsers(dest="command", metavar="<subcommand>", required=True)
    for name, help_text in SUBCOMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def _need(args, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} requires {' '.join(missing)}")


def _diagram(args) -> StripDiagram:
    _need(args, "m", "n")
    return StripDiagram(args.m, args.n)


def cmd_count(args):
    d = _diagram(args)
    faces, edges, tri, chi = strip.counts(d)
    doc = {"m": d.m, "n": d.n, "faces": faces, "interior_edges": edges,
           "triangulations": str(tri), "euler_char": chi}
    text = f"C_{{{d.m},{d.n}}}: faces={faces} interior_edges={edges} triangulations={tri} euler_char={chi}"
    return doc, text, EXIT_OK


def cmd_enum(args):
    d = _diagram(args)
    rows = [{"top_set": list(t.top_set), "edge_types": t.edge_types()}
            for t in strip.enumerate_triangulations(d)]
    doc = {"m": d.m, "n": d.n, "count": str(len(rows)), "triangulations": rows}
    text = "\n".join(
        "T={" + ",".join(map(str, r["top_set"])) + "} " + "".join("+" if s > 0 else "-" for s in r["edge_types"])
        for r in rows
    )
    return doc, text, EXIT_OK


def _triangulation(args) -> Triangulation:
    _need(args, "subset")
    return Triangulation(_diagram(args), tuple(args.subset))


def cmd_zprime(args):
    t = _triangulation(args)
    z = mmalgebra.reduced_partition(t)
    doc = {"top_set": list(t.top_set), **z.to_json()}
    return doc, z.to_text(), EXIT_OK


def cmd_ztot(args):
    z = mmalgebra.total_partition(_diagram(args), workers=args.threads)
    rep = mmalgebra.check_homogeneity(z)
    doc = {**z.to_json(), **rep.to_json()}
    text = z.to_text()
    if rep.is_homogeneous and rep.degree is not None:
        text += f"\nhomogeneous of degree {rep.degree}"
    elif not rep.is_homogeneous:
        text += f"\nnot homogeneous: {tuple(rep.witness[0])} vs {tuple(rep.witness[1])}"
    return doc, text, EXIT_OK


def cmd_degree(args):
    d = _diagram(args)
    a, b = mmalgebra.degree_formula(d), mmalgebra.degree_probabilistic(d)
    agree = a == b
    doc = {"m": d.m, "n": d.n, "degree": str(a), "degree_formula": str(a),
           "degree_probabilistic": str(b), "agree": agree}
    text = f"degree_formula={a} degree_probabilistic={b} {'agree' if agree else 'DISAGREE'}"
    return doc, text, EXIT_OK if agree else EXIT_VERIFY


def cmd_sigma(args):
    d = _diagram(args)
    N, m = d.size, d.m
    closed = mmalgebra.signature_closed_form(N, m)
    rows = []
    for i in range(1, N):
        for j in range(i, N):
            rows.append({"S": [i, j], "bruteforce": str(mmalgebra.signature_bruteforce(N, m, range(i, j + 1)))})
    agree = all(r["bruteforce"] == str(closed) for r in rows)
    doc = {"N": N, "m": m, "closed_form": str(closed), "contiguous_sets": rows, "agree": agree}
    text = f"sigma(N={N}, m={m}) = {closed}; brute force over {len(rows)} sets {'agrees' if agree else 'DISAGREES'}"
    return doc, text, EXIT_OK if agree else EXIT_VERIFY


def cmd_flop(args):
    _need(args, "n")
    m = 1 if args.m is None else args.m
    flop.flop_chain_bases(args.n, m)
    z = flop.flop_total(args.n)
    return z.to_json(), z.to_text(), EXIT_OK


def cmd_partial(args):
    d = _diagram(args)
    _need(args, "blocks")
    dec = partial.BlockDecomposition(d, tuple(args.blocks))
    f = partial.factorize(dec)
    doc = f.to_json()
    lines = [f"Z'' = {f.zpp.to_text()}"]
    for k, (block, b) in enumerate(f.block_factors):
        lines.append(f"block {dec.blocks[k]} offset {dec.offsets[k]}: ({block.to_text()})^{b}")
    return doc, "\n".join(lines), EXIT_OK


def cmd_expand(args):
    if args.subset is not None:
        z = mmalgebra.reduced_partition(_triangulation(args))
    else:
        z = mmalgebra.total_partition(_diagram(args), workers=args.threads)
    if args.order < 0:
        raise UsageError("--order must be non-negative")
    s = qseries.evaluate_exponent_map(z, args.order)
    doc = {"m": z.diagram.m, "n": z.diagram.n, "series": s.to_json()}
    return doc, s.to_text(), EXIT_OK


def cmd_verify(args):
    results = verify.run_all(args.max_size, workers=max(2, min(args.threads, 4)))
    ok = all(r.passed for r in results)
    doc = {"max_size": args.max_size, "passed": ok, "properties": [r.to_json() for r in results]}
    text = "\n".join(
        f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.cases} cases){' ' + r.detail if r.detail else ''}"
        for r in results
    )
    return doc, text, EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "count": cmd_count, "enum": cmd_enum, "zprime": cmd_zprime, "ztot": cmd_ztot,
    "degree": cmd_degree, "sigma": cmd_sigma, "flop": cmd_flop, "partial": cmd_partial,
    "expand": cmd_expand, "verify": cmd_verify,
}


def render(doc, text: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    return text + "\n"


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        doc, text, status = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(stderr)
        print(f"conifold-dt: error: {exc}", file=stderr)
        return EXIT_USAGE
    except ConifoldError as exc:
        print(f"conifold-dt: {exc.code}: {exc}", file=stderr)
        return EXIT_DOMAIN
    stdout.write(render(doc, text, args.format))
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
