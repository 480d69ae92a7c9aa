"""Command-line surface: ``treepoly <verb> [flags]``.

Verbs: enumerate, density, project, hull, model, verify, figure.  All numbers
print as exact ``p/q`` unless ``--decimal K`` asks for K-digit decimals.
Shapes are passed inline or via ``--file`` (one shape per line).  Exit codes:
0 success, 1 domain/verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .caps import ResourceCaps
from .density import (ShapeDistribution, density_matrix, density_row, marginalize,
                      read_distribution)
from .errors import CapExceeded, DomainError
from .experiments import CLAIM_IDS, FIGURES, emit_figure_data, run_claims, write_reports
from .geometry import certify_vertices, write_polytope
from .models import (MultinomialParams, SplittingRule, beta_distribution, beta_rule,
                     derive_lower_rule, multinomial_distribution, parse_beta,
                     read_params)
from .rational import format_decimal, format_rational, parse_rational
from .shapes import TreeShape, display_name, enumerate_shapes, parse_shape

_THREAD_DEFAULT = os.cpu_count() or 1


def _render(value: Fraction, decimal: "int | None") -> str:
    return format_rational(value) if decimal is None else format_decimal(value, decimal)


def _print_distribution(dist: ShapeDistribution, decimal: "int | None") -> None:
    parts = [f"{display_name(t)}: {_render(p, decimal)}" for t, p in dist.items()]
    print("  ".join(parts))


def _shape_from_args(args: argparse.Namespace) -> TreeShape:
    if args.tree is not None:
        return parse_shape(args.tree)
    if args.file is not None:
        text = Path(args.file).read_text(encoding="utf-8")
        lines = [line for line in text.splitlines() if line.strip()]
        if len(lines) != 1:
            raise DomainError(f"{args.file} must contain exactly one shape line")
        return parse_shape(lines[0])
    raise DomainError("pass a shape with --tree or --file")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--decimal", type=int, default=None, metavar="K",
                        help="render numbers as K-digit decimals instead of p/q")
    parser.add_argument("--threads", type=int, default=_THREAD_DEFAULT, metavar="K",
                        help="worker threads for independent columns/claims")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treepoly",
        description="Exact toolkit for sampling-consistent tree shape distributions.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("enumerate", help="list all shapes with n leaves")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", action="store_true", help="print only the count")
    p.add_argument("--out", metavar="PATH", help="write shapes to a file, one per line")
    _add_common(p)

    p = sub.add_parser("density", help="induced subtree densities of one shape")
    p.add_argument("--tree", help="shape expression, e.g. '((*,*),(*,(*,*)))'")
    p.add_argument("--file", help="file with one shape line")
    p.add_argument("--n", type=int, required=True, help="pattern leaf count")
    p.add_argument("--json", metavar="PATH", help="also write the distribution as JSON")
    _add_common(p)

    p = sub.add_parser("project", help="marginalize a distribution to fewer leaves")
    p.add_argument("--m", type=int, required=True, help="source leaf count")
    p.add_argument("--n", type=int, required=True, help="target leaf count")
    p.add_argument("--probs", help="comma-separated p/q values in canonical shape order")
    p.add_argument("--file", help="JSON distribution file {n, probs}")
    p.add_argument("--json", metavar="PATH", help="write the result as JSON")
    _add_common(p)

    p = sub.add_parser("hull", help="certify the vertices of the (n, m) projection polytope")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--json", metavar="PATH", help="write the polytope as JSON")
    _add_common(p)

    p = sub.add_parser("model", help="evaluate a parametric model")
    model_sub = p.add_subparsers(dest="model", required=True)

    b = model_sub.add_parser("beta", help="beta-splitting distribution on n leaves")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--beta", required=True, help="p/q, -2, or inf")
    b.add_argument("--json", metavar="PATH")
    _add_common(b)

    r = model_sub.add_parser("rule", help="splitting rule of the beta model at one level")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--beta", required=True, help="p/q, -2, or inf")
    r.add_argument("--lower", action="store_true",
                   help="also derive the level n-1 rule via the consistency recurrence")
    r.add_argument("--json", metavar="PATH")
    _add_common(r)

    m = model_sub.add_parser("multinomial", help="multinomial model on a skeleton")
    m.add_argument("--skeleton", help="skeleton shape expression")
    m.add_argument("--weights", help="comma-separated edge weights (pendant root edge first)")
    m.add_argument("--params", metavar="PATH", help="JSON params file {skeleton, weights}")
    m.add_argument("--n", type=int, required=True, help="sample size")
    m.add_argument("--json", metavar="PATH")
    _add_common(m)

    p = sub.add_parser("verify", help="run the exact verification suite")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--all", action="store_true")
    group.add_argument("--claims", help=f"comma-separated ids from: {', '.join(CLAIM_IDS)}")
    p.add_argument("--report", metavar="PATH", help="write JSON-lines report")
    _add_common(p)

    p = sub.add_parser("figure", help="emit CSV data bundles for the figures")
    p.add_argument("name", choices=FIGURES)
    p.add_argument("--out", required=True, metavar="DIR")
    _add_common(p)

    return parser


def _cmd_enumerate(args, caps) -> int:
    index = enumerate_shapes(args.n)
    if len(index) > caps.max_columns:
        raise CapExceeded(f"{len(index)} shapes exceeds cap {caps.max_columns}")
    if args.count:
        print(len(index))
        return 0
    lines = [t.encoding for t in index]
    if args.out:
        Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    else:
        print("\n".join(lines))
    return 0


def _cmd_density(args, caps) -> int:
    shape = _shape_from_args(args)
    dist = density_row(shape, args.n)
    _print_distribution(dist, args.decimal)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as stream:
            json.dump(dist.to_json(), stream, indent=2)
            stream.write("\n")
    return 0


def _distribution_from_args(args) -> ShapeDistribution:
    if args.probs is not None:
        probs = tuple(parse_rational(p) for p in args.probs.split(","))
        return ShapeDistribution(enumerate_shapes(args.m), probs)
    if args.file is not None:
        with open(args.file, encoding="utf-8") as stream:
            dist = read_distribution(stream)
        if dist.n != args.m:
            raise DomainError(f"distribution file is over n={dist.n}, expected m={args.m}")
        return dist
    raise DomainError("pass a distribution with --probs or --file")


def _cmd_project(args, caps) -> int:
    dist = _distribution_from_args(args)
    result = marginalize(dist, args.n)
    _print_distribution(result, args.decimal)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as stream:
            json.dump(result.to_json(), stream, indent=2)
            stream.write("\n")
    return 0


def _cmd_hull(args, caps) -> int:
    matrix = density_matrix(args.n, args.m, caps, threads=args.threads)
    poly = certify_vertices(matrix.point_set())
    print(f"{len(poly.vertices)} vertices among {len(matrix.columns)} columns")
    for i in poly.vertices:
        point = poly.point_set.points[i]
        coords = ", ".join(_render(v, args.decimal) for v in point)
        tags = ";".join(poly.tags_of_point(point))
        print(f"({coords})  {tags}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as stream:
            write_polytope(poly, stream)
    return 0


def _cmd_model(args, caps) -> int:
    if args.model == "beta":
        dist = beta_distribution(args.n, parse_beta(args.beta))
        _print_distribution(dist, args.decimal)
        payload = dist.to_json()
    elif args.model == "rule":
        rule = beta_rule(args.n, parse_beta(args.beta))
        rules = [rule] + ([derive_lower_rule(rule)] if args.lower else [])
        for r in rules:
            weights = "  ".join(
                f"q({i})={_render(w, args.decimal)}" for i, w in enumerate(r.q, start=1))
            print(f"level {r.n}: {weights}")
        payload = rules[-1].to_json() if len(rules) == 1 else [r.to_json() for r in rules]
    else:
        if args.params:
            with open(args.params, encoding="utf-8") as stream:
                params = read_params(stream)
        elif args.skeleton and args.weights:
            params = MultinomialParams(
                parse_shape(args.skeleton),
                tuple(parse_rational(w) for w in args.weights.split(",")))
        else:
            raise DomainError("pass --params, or both --skeleton and --weights")
        dist = multinomial_distribution(params, args.n, caps)
        _print_distribution(dist, args.decimal)
        payload = dist.to_json()
    if args.json:
        with open(args.json, "w", encoding="utf-8") as stream:
            json.dump(payload, stream, indent=2)
            stream.write("\n")
    return 0


def _cmd_verify(args, caps) -> int:
    names = None if args.all else [c.strip() for c in args.claims.split(",") if c.strip()]
    reports = run_claims(names, caps=caps, threads=args.threads)
    for report in reports:
        print(f"{report.status.upper():5} {report.claim} ({report.elapsed_s:.2f}s)")
        if report.status != "pass":
            for line in report.details:
                print(f"      {line}")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as stream:
            write_reports(reports, stream)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_figure(args, caps) -> int:
    for path in emit_figure_data(args.name, args.out, caps):
        print(path)
    return 0


_COMMANDS = {
    "enumerate": _cmd_enumerate,
    "density": _cmd_density,
    "project": _cmd_project,
    "hull": _cmd_hull,
    "model": _cmd_model,
    "verify": _cmd_verify,
    "figure": _cmd_figure,
}


_NEGATIVE_VALUE_FLAGS = ("--beta", "--probs", "--weights")


def _merge_negative_values(argv: Sequence[str]) -> list[str]:
    """Join ``--beta -3/2`` into ``--beta=-3/2`` so argparse keeps the value."""
    out: list[str] = []
    skip = False
    for i, token in enumerate(argv):
        if skip:
            skip = False
            continue
        if (token in _NEGATIVE_VALUE_FLAGS and i + 1 < len(argv)
                and argv[i + 1].startswith("-")):
            out.append(f"{token}={argv[i + 1]}")
            skip = True
        else:
            out.append(token)
    return out


def run(argv: Sequence[str]) -> int:
    """Parse and execute; returns the exit code (argparse may exit 2 itself)."""
    args = _build_parser().parse_args(_merge_negative_values(argv))
    caps = ResourceCaps.from_env()
    try:
        return _COMMANDS[args.verb](args, caps)
    except (DomainError, CapExceeded, OSError) as exc:
        print(f"treepoly: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
