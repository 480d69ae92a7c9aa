"""Claim-by-claim verification suite and figure-data emission.

Each ``verify_*`` function replays one family of exact claims about the
consistent-distribution polytopes and the parametric models, entirely in
rational arithmetic, and returns a report with explicit witnesses.  A report
passes only if every sub-assertion holds exactly; resource-cap violations
downgrade a claim to "skip" with the reason spelled out, never to a silently
truncated pass.

The figure-data functions write plain CSV bundles (projected point clouds,
hull boundary cycles, model curve/surface samples) for external plotting.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import IO, Callable, Iterable, Sequence

from .caps import DEFAULT_CAPS, ResourceCaps
from .density import DensityMatrix, density_matrix, density_row
from .errors import CapExceeded, DomainError
from .geometry import (Point, PointSet, Polytope, certify_vertices, contains_polytope,
                       convex_hull_2d, convex_membership, project_points)
from .linprog import INFEASIBLE, OPTIMAL
from .models import (BETA_COMB, BETA_INFINITY, MultinomialParams, beta_distribution,
                     format_beta, multinomial_distribution, uniform_leaf_params)
from .rational import format_rational
from .shapes import (TreeShape, build_bicomb, build_comb, build_comb_replace,
                     build_complete, build_max_balanced, count_pattern,
                     enumerate_shapes, leaf, node, parse_shape)

_ZERO = Fraction(0)
_ONE = Fraction(1)

_GIR5 = node(leaf(), node(node(leaf(), leaf()), node(leaf(), leaf())))
_BAL5 = build_bicomb(2, 3)


@dataclass(frozen=True)
class VerificationReport:
    claim: str
    status: str  # "pass" | "fail" | "skip"
    details: tuple[str, ...]
    elapsed_s: float

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json_line(self) -> str:
        return json.dumps({
            "claim": self.claim,
            "status": self.status,
            "details": list(self.details),
            "elapsed_s": round(self.elapsed_s, 6),
        })


class _Checker:
    def __init__(self):
        self.lines: list[str] = []
        self.failed = False

    def expect(self, condition: bool, message: str) -> None:
        if condition:
            self.lines.append(message)
        else:
            self.failed = True
            self.lines.append(f"FAIL: {message}")

    def note(self, message: str) -> None:
        self.lines.append(message)


def _run_claim(claim: str, body: Callable[[_Checker], None]) -> VerificationReport:
    started = time.perf_counter()
    checker = _Checker()
    try:
        body(checker)
        status = "fail" if checker.failed else "pass"
    except CapExceeded as exc:
        status = "skip"
        checker.note(f"skipped: {exc}")
    elapsed = time.perf_counter() - started
    return VerificationReport(claim, status, tuple(checker.lines), elapsed)


# ---------------------------------------------------------------------------
# Four-leaf consistent distributions form a shrinking segment


def verify_four_leaf_segment(m_max: int = 12,
                             caps: ResourceCaps = DEFAULT_CAPS) -> VerificationReport:
    """The m-consistent four-leaf polytope is a segment from the comb point
    to the balanced-tree projection, shrinking monotonically toward the
    termwise model limit (4/7, 3/7)."""

    limit = Fraction(3, 7)

    def body(check: _Checker) -> None:
        previous: Fraction | None = None
        for m in range(5, m_max + 1):
            dm = density_matrix(4, m, caps)
            poly = certify_vertices(dm.point_set())
            points = poly.vertex_points()
            check.expect(len(points) == 2, f"m={m}: exactly 2 vertices (got {len(points)})")
            comb_point = (_ONE, _ZERO)
            check.expect(comb_point in points, f"m={m}: comb point (1, 0) is a vertex")
            others = [p for p in points if p != comb_point]
            if len(others) != 1:
                check.expect(False, f"m={m}: expected one non-comb vertex")
                continue
            balanced_share = others[0][1]
            tags = poly.tags_of_point(others[0])
            expected = build_max_balanced(m).encoding
            check.expect(tags == (expected,),
                         f"m={m}: non-comb vertex comes from the maximally balanced "
                         f"tree alone (tags {tags})")
            top = max(column.probs[1] for column in dm.columns)
            check.expect(top == balanced_share,
                         f"m={m}: vertex value {balanced_share} is the columnwise max")
            if m & (m - 1) == 0:  # power of two
                closed = Fraction(3 * m - 5, 7 * m - 21)
                check.expect(balanced_share == closed,
                             f"m={m}: closed form gives {closed}")
            if previous is not None:
                check.expect(balanced_share <= previous,
                             f"m={m}: balanced share {balanced_share} <= previous {previous}")
            check.expect(balanced_share > limit,
                         f"m={m}: balanced share {balanced_share} > 3/7")
            inside = convex_membership((Fraction(4, 7), limit), dm.point_set().points)
            check.expect(inside.status == OPTIMAL,
                         f"m={m}: model limit point (4/7, 3/7) is inside")
            previous = balanced_share

    return _run_claim("four-leaf-segment", body)


# ---------------------------------------------------------------------------
# Five-leaf vertex families


def _family_trees(n: int) -> dict[str, TreeShape]:
    return {
        "comb": build_comb(n),
        "comb-over-giraffe": build_comb_replace(_GIR5, n - 4),
        "balanced-bicomb": build_bicomb(n // 2, (n + 1) // 2),
        "max-balanced": build_max_balanced(n),
    }


def verify_five_leaf_vertex_families(n_values: Iterable[int] = range(6, 11),
                                     caps: ResourceCaps = DEFAULT_CAPS) -> VerificationReport:
    """The comb, giraffe-comb, balanced-bicomb and maximally balanced trees
    all project to certified vertices of the five-leaf consistent polytope."""

    def body(check: _Checker) -> None:
        for n in n_values:
            dm = density_matrix(5, n, caps)
            poly = certify_vertices(dm.point_set())
            vertex_points = set(poly.vertex_points())
            check.note(f"n={n}: {len(vertex_points)} vertices among {len(dm.columns)} columns")
            for label, tree in _family_trees(n).items():
                point = dm.column_for(tree).probs
                coords = "(" + ", ".join(map(str, point)) + ")"
                check.expect(point in vertex_points,
                             f"n={n}: {label} column {coords} is a vertex")

    return _run_claim("five-leaf-vertex-families", body)


# ---------------------------------------------------------------------------
# The comb5 count is minimized by the maximally balanced tree, uniquely


def verify_comb5_minimizer(n_values: Iterable[int] = range(7, 12),
                           caps: ResourceCaps = DEFAULT_CAPS) -> VerificationReport:
    def body(check: _Checker) -> None:
        comb5 = build_comb(5)
        for n in n_values:
            index = enumerate_shapes(n)
            if len(index) > caps.max_shapes:
                raise CapExceeded(
                    f"n={n} needs {len(index)} shapes, cap is {caps.max_shapes}")
            counts = [count_pattern(t, comb5) for t in index]
            smallest = min(counts)
            argmin = [t for t, c in zip(index.shapes, counts) if c == smallest]
            expected = build_max_balanced(n)
            check.expect(argmin == [expected],
                         f"n={n}: unique minimizer with count {smallest} is "
                         f"{expected.encoding} ({len(argmin)} minimizers)")

    return _run_claim("comb5-minimizer", body)


# ---------------------------------------------------------------------------
# Exact limit densities of complete trees and the infinite-parameter model


def verify_balanced_limit_densities(depths: Iterable[int] = (3, 4, 5)) -> VerificationReport:
    def body(check: _Checker) -> None:
        at_infinity = beta_distribution(5, BETA_INFINITY)
        target = (Fraction(4, 21), Fraction(1, 7), Fraction(2, 3))
        check.expect(at_infinity.probs == target,
                     f"limit model on 5 leaves equals (4/21, 1/7, 2/3)")
        for k in depths:
            tree = build_complete(k)
            m = 2 ** k
            row = density_row(tree, 5)
            check.expect(row.probs[1] == Fraction(1, 7),
                         f"depth {k}: giraffe density is exactly 1/7")
            bal = Fraction(2, 3) + Fraction(20, 21 * (m - 3))
            check.expect(row.probs[2] == bal,
                         f"depth {k}: balanced density is exactly {bal}")
            b5 = count_pattern(tree, _BAL5)
            b5_closed = Fraction(2 ** (k - 2) * (m - 4) * (m - 2) * (m - 1) * (7 * m - 11), 315)
            check.expect(b5 == b5_closed, f"depth {k}: balanced count {b5} matches closed form")
            g5 = count_pattern(tree, _GIR5)
            g5_closed = Fraction(2 ** (k - 3) * (m - 4) * (m - 3) * (m - 2) * (m - 1), 105)
            check.expect(g5 == g5_closed, f"depth {k}: giraffe count {g5} matches closed form")

    return _run_claim("balanced-limit-densities", body)


# ---------------------------------------------------------------------------
# Leaf-weighted multinomial models approximate density rows at rate 1/m


def verify_multinomial_approximation(n_values: Sequence[int] = (4, 5),
                                     sizes: Sequence[int] = (8, 12, 16, 20),
                                     factor: int = 2,
                                     caps: ResourceCaps = DEFAULT_CAPS) -> VerificationReport:
    def body(check: _Checker) -> None:
        for n in n_values:
            scaled: list[Fraction] = []
            for m in sizes:
                tree = build_max_balanced(m)
                exact = density_row(tree, n)
                approx = multinomial_distribution(uniform_leaf_params(tree), n, caps)
                gap = max(abs(a - b) for a, b in zip(exact.probs, approx.probs))
                scaled.append(gap * m)
                check.note(f"n={n} m={m}: sup gap {gap}, scaled {gap * m}")
            spread_ok = max(scaled) <= factor * min(scaled)
            check.expect(spread_ok,
                         f"n={n}: scaled gaps within a factor {factor} "
                         f"(fitted constant {max(scaled)})")

    return _run_claim("multinomial-approximation", body)


# ---------------------------------------------------------------------------
# Nested containment of the consistent polytopes


def verify_nested_containment(m_values: Iterable[int] = range(5, 11),
                              caps: ResourceCaps = DEFAULT_CAPS) -> VerificationReport:
    def body(check: _Checker) -> None:
        m_list = list(m_values)
        polys = {m: certify_vertices(density_matrix(5, m, caps).point_set())
                 for m in range(min(m_list), max(m_list) + 2)}
        for m in m_list:
            ok, witness = contains_polytope(polys[m + 1], polys[m])
            check.expect(ok, f"m={m}: level {m + 1} polytope sits inside level {m}")
            if witness is not None:
                check.note(f"  witness: {tuple(map(str, witness))}")
        # a deliberately nudged vertex must be rejected with a witness
        base = polys[min(m_list) + 1]
        v = base.vertex_points()[0]
        points = list(dict.fromkeys(base.point_set.points))
        centroid = tuple(sum(p[d] for p in points) / len(points) for d in range(base.dim))
        nudged = tuple(x + (x - c) / 10 for x, c in zip(v, centroid))
        probe = Polytope(PointSet(base.dim, (nudged,)), (0,))
        ok, witness = contains_polytope(probe, base)
        check.expect(not ok and witness == nudged,
                     f"nudged point {tuple(map(str, nudged))} rejected with witness")

    return _run_claim("nested-containment", body)


# ---------------------------------------------------------------------------
# Suite runner


_CLAIMS: tuple[tuple[str, Callable[[ResourceCaps], VerificationReport]], ...] = (
    ("four-leaf-segment", lambda caps: verify_four_leaf_segment(caps=caps)),
    ("five-leaf-vertex-families", lambda caps: verify_five_leaf_vertex_families(caps=caps)),
    ("comb5-minimizer", lambda caps: verify_comb5_minimizer(caps=caps)),
    ("balanced-limit-densities", lambda caps: verify_balanced_limit_densities()),
    ("multinomial-approximation", lambda caps: verify_multinomial_approximation(caps=caps)),
    ("nested-containment", lambda caps: verify_nested_containment(caps=caps)),
)

CLAIM_IDS = tuple(name for name, _ in _CLAIMS)


def run_claims(names: "Iterable[str] | None" = None,
               caps: ResourceCaps = DEFAULT_CAPS,
               threads: int = 1) -> list[VerificationReport]:
    """Run the selected claims (all by default); reports sorted by claim id."""
    wanted = list(names) if names is not None else list(CLAIM_IDS)
    unknown = sorted(set(wanted) - set(CLAIM_IDS))
    if unknown:
        raise DomainError(f"unknown claims {unknown}; known: {list(CLAIM_IDS)}")
    selected = [(name, fn) for name, fn in _CLAIMS if name in wanted]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(lambda item: item[1](caps), selected))
    else:
        reports = [fn(caps) for _, fn in selected]
    return sorted(reports, key=lambda r: r.claim)


def write_reports(reports: Sequence[VerificationReport], stream: IO[str]) -> None:
    for report in reports:
        stream.write(report.to_json_line())
        stream.write("\n")


# ---------------------------------------------------------------------------
# Figure data

FIGURES = ("fig4", "fig5", "fig6")

#: exact parameter grid for the one-parameter model curve, endpoints included
BETA_GRID = ((BETA_COMB,)
             + tuple(Fraction(num, 8) for num in range(-15, 0))
             + (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4),
                Fraction(8), Fraction(16), Fraction(64), Fraction(256))
             + (BETA_INFINITY,))


def _simplex_grid(parts: int, denominator: int) -> Iterable[tuple[Fraction, ...]]:
    """All rational weight vectors with the given denominator, summing to 1."""
    for cuts in combinations(range(denominator + parts - 1), parts - 1):
        borders = (-1,) + cuts + (denominator + parts - 1,)
        counts = tuple(b - a - 1 for a, b in zip(borders, borders[1:]))
        yield tuple(Fraction(c, denominator) for c in counts)


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> Path:
    with path.open("w", encoding="utf-8", newline="") as stream:
        writer = csv.writer(stream)
        writer.writerow(header)
        writer.writerows(rows)
    return path


def _projected_cloud(dm: DensityMatrix) -> dict[tuple[Fraction, Fraction], list[str]]:
    cloud: dict[tuple[Fraction, Fraction], list[str]] = {}
    for tree, column in zip(dm.col_index.shapes, dm.columns):
        key = (column.probs[0], column.probs[1])
        cloud.setdefault(key, []).append(tree.encoding)
    return cloud


def _hull_rows(cloud: dict[tuple[Fraction, Fraction], list[str]]) -> list[list[str]]:
    cycle = convex_hull_2d(list(cloud))
    return [[str(i), format_rational(p[0]), format_rational(p[1]), ";".join(cloud[p])]
            for i, p in enumerate(cycle)]


def _beta_curve_rows(n: int) -> list[list[str]]:
    rows = []
    for beta in BETA_GRID:
        probs = beta_distribution(n, beta).probs
        rows.append([format_beta(beta)] + [format_rational(p) for p in probs])
    return rows


def _multinomial_surface_rows(skeleton: TreeShape, denominator: int, n: int,
                              caps: ResourceCaps) -> list[list[str]]:
    rows = []
    for weights in _simplex_grid(2 * skeleton.leaf_count - 1, denominator):
        params = MultinomialParams(skeleton, weights)
        probs = multinomial_distribution(params, n, caps).probs
        rows.append([format_rational(w) for w in weights]
                    + [format_rational(p) for p in probs])
    return rows


def emit_figure_data(figure: str, out_dir: "str | Path",
                     caps: ResourceCaps = DEFAULT_CAPS) -> list[Path]:
    """Write the CSV bundle for one figure; returns the created paths.

    ``fig4``: the five-leaf projection of the seven-leaf shapes (distinct
    projected points with provenance, plus the hull boundary cycle).
    ``fig5``: model curve over the parameter grid plus the two-leaf-skeleton
    multinomial surface.  ``fig6``: hull boundaries of the five-leaf polytope
    at levels 5, 6, 9 and 12, the model curve, and the three-leaf-comb
    multinomial surface.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    shape5 = [t.encoding for t in enumerate_shapes(5)]
    point_header = [f"p[{enc}]" for enc in shape5]
    created: list[Path] = []

    if figure == "fig4":
        cloud = _projected_cloud(density_matrix(5, 7, caps))
        created.append(_write_csv(
            out / "fig4_points.csv",
            point_header[:2] + ["trees"],
            [[format_rational(p[0]), format_rational(p[1]), ";".join(tags)]
             for p, tags in sorted(cloud.items())]))
        created.append(_write_csv(
            out / "fig4_hull.csv",
            ["order"] + point_header[:2] + ["trees"],
            _hull_rows(cloud)))
    elif figure == "fig5":
        created.append(_write_csv(
            out / "fig5_beta.csv", ["beta"] + point_header, _beta_curve_rows(5)))
        created.append(_write_csv(
            out / "fig5_multinomial.csv",
            ["t0", "t1", "t2"] + point_header,
            _multinomial_surface_rows(node(leaf(), leaf()), 10, 5, caps)))
    elif figure == "fig6":
        for m in (5, 6, 9, 12):
            cloud = _projected_cloud(density_matrix(5, m, caps))
            created.append(_write_csv(
                out / f"fig6_hull_n{m}.csv",
                ["order"] + point_header[:2] + ["trees"],
                _hull_rows(cloud)))
        created.append(_write_csv(
            out / "fig6_beta.csv", ["beta"] + point_header, _beta_curve_rows(5)))
        created.append(_write_csv(
            out / "fig6_multinomial.csv",
            ["t0", "t1", "t2", "t3", "t4"] + point_header,
            _multinomial_surface_rows(build_comb(3), 5, 5, caps)))
    else:
        raise DomainError(f"unknown figure {figure!r}; known: {list(FIGURES)}")
    return created
