"""Acceptance suite: one test per headline criterion, at stated tolerances.

Every assertion is an exact rational comparison (tolerance zero); the only
approximate statements are the explicit runtime budgets.  Run with
``pytest -v tests/test_acceptance.py`` to get one pass/fail line per
criterion; each test also prints a short witness line.
"""

import math
import random
import time
from fractions import Fraction as F
from itertools import combinations_with_replacement

from treepoly.density import density_matrix, density_row, marginalize
from treepoly.geometry import (Polytope, PointSet, certify_vertices,
                               contains_polytope, convex_membership)
from treepoly.linprog import OPTIMAL
from treepoly.models import (BETA_COMB, BETA_INFINITY, MultinomialParams,
                             beta_distribution, beta_q, beta_rule, derive_lower_rule,
                             edge_count, multinomial_distribution, multinomial_prob,
                             uniform_leaf_params)
from treepoly.shapes import (build_bicomb, build_comb, build_comb_replace,
                             build_complete, build_max_balanced, count_pattern,
                             count_pattern_scan, enumerate_shapes, labeling_count,
                             leaf, node, parse_shape, random_shape)

CHERRY = node(leaf(), leaf())
BAL4 = node(CHERRY, CHERRY)
GIR5 = node(leaf(), BAL4)
BAL5 = build_bicomb(2, 3)
WORKED_TREE = parse_shape("((*,*),((*,*),*))")


def _timed(fn):
    start = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - start


def test_01_five_leaf_tree_density_is_two_fifths_three_fifths():
    density_row(build_comb(5), 4)  # warm the index caches, not this shape
    row, elapsed = _timed(lambda: density_row(WORKED_TREE, 4))
    assert row.probs == (F(2, 5), F(3, 5))
    assert elapsed < 0.001, f"took {elapsed * 1000:.3f} ms"
    print(f"\nACCEPTANCE 01 PASS density (2/5, 3/5) in {elapsed * 1e6:.0f} us")


def test_02_labeling_counts_partition_double_factorial():
    def body():
        for n in range(2, 11):
            total = sum(labeling_count(t) for t in enumerate_shapes(n))
            assert total == math.prod(range(2 * n - 3, 0, -2))

    _, elapsed = _timed(body)
    assert elapsed < 5
    print(f"\nACCEPTANCE 02 PASS labeling partition n=2..10 in {elapsed:.2f} s")


def test_03_level_four_split_weights_closed_form():
    for beta in (F(0), F(1), F(-3, 2), F(10), F(7, 3)):
        assert 2 * beta_q(4, 1, beta) == F(12 + 4 * beta, 18 + 7 * beta)
        assert beta_q(4, 2, beta) == F(6 + 3 * beta, 18 + 7 * beta)
    assert beta_q(4, 2, BETA_INFINITY) == F(3, 7)
    print("\nACCEPTANCE 03 PASS split-weight closed forms at 5 samples and inf")


def test_04_rule_recurrence_fixes_the_beta_family():
    def body():
        for n in range(4, 9):
            for beta in (F(0), F(1), F(-1), F(-3, 2)):
                assert derive_lower_rule(beta_rule(n, beta)) == beta_rule(n - 1, beta)

    _, elapsed = _timed(body)
    assert elapsed < 1
    print(f"\nACCEPTANCE 04 PASS recurrence consistency n=4..8 in {elapsed:.3f} s")


def test_05_four_leaf_polytope_segment_structure():
    def body():
        previous = None
        for m in range(5, 13):
            dm = density_matrix(4, m)
            poly = certify_vertices(dm.point_set())
            points = poly.vertex_points()
            assert len(points) == 2
            assert (F(1), F(0)) in points
            share = next(p[1] for p in points if p != (F(1), F(0)))
            if m == 8:
                assert share == F(19, 35)
            if m & (m - 1) == 0:
                assert share == F(3 * m - 5, 7 * m - 21)
            if previous is not None:
                assert share <= previous
            assert share > F(3, 7)
            inside = convex_membership((F(4, 7), F(3, 7)), dm.point_set().points)
            assert inside.status == OPTIMAL
            previous = share
        return previous

    last, elapsed = _timed(body)
    assert elapsed < 120
    print(f"\nACCEPTANCE 05 PASS segment m=5..12 (last share {last}) in {elapsed:.1f} s")


def test_06_five_leaf_vertex_families_certify():
    def body():
        for n in range(6, 11):
            dm = density_matrix(5, n)
            poly = certify_vertices(dm.point_set())
            vertex_points = set(poly.vertex_points())
            families = (build_comb(n), build_comb_replace(GIR5, n - 4),
                        build_bicomb(n // 2, (n + 1) // 2), build_max_balanced(n))
            for tree in families:
                assert dm.column_for(tree).probs in vertex_points, (n, tree.encoding)

    _, elapsed = _timed(body)
    assert elapsed < 180
    print(f"\nACCEPTANCE 06 PASS four vertex families n=6..10 in {elapsed:.1f} s")


def test_07_unique_comb5_minimizer_is_maximally_balanced():
    def body():
        comb5 = build_comb(5)
        for n in range(7, 12):
            counts = [count_pattern(t, comb5) for t in enumerate_shapes(n)]
            smallest = min(counts)
            argmin = [t for t, c in zip(enumerate_shapes(n).shapes, counts)
                      if c == smallest]
            assert argmin == [build_max_balanced(n)], n

    _, elapsed = _timed(body)
    assert elapsed < 120
    print(f"\nACCEPTANCE 07 PASS unique minimizer n=7..11 in {elapsed:.2f} s")


def test_08_complete_tree_densities_and_limit_point():
    for k in (3, 4, 5):
        row = density_row(build_complete(k), 5)
        assert row.probs[1] == F(1, 7)
        assert row.probs[2] == F(2, 3) + F(20, 21 * (2**k - 3))
    assert beta_distribution(5, BETA_INFINITY).probs == (F(4, 21), F(1, 7), F(2, 3))
    print("\nACCEPTANCE 08 PASS complete-tree densities k=3..5 and limit point")


def test_09_tripod_identity_and_normalization():
    samples = [(F(1, 2), F(1, 4), F(1, 4)), (F(0), F(1, 2), F(1, 2)),
               (F(1, 6), F(1, 3), F(1, 2)), (F(1, 3), F(1, 3), F(1, 3)),
               (F(1, 10), F(7, 10), F(1, 5))]
    for t0, t1, t2 in samples:
        params = MultinomialParams(CHERRY, (t0, t1, t2))
        assert multinomial_prob(params, BAL5, 5) == 10 * t1**3 * t2**2 + 10 * t1**2 * t2**3
    for m in (2, 3, 4):
        for skeleton in enumerate_shapes(m):
            k = edge_count(skeleton)
            weights = tuple(F(2 * e + 1, k * k) for e in range(k))
            params = MultinomialParams(skeleton, weights)
            for n in range(1, 7):
                assert sum(multinomial_distribution(params, n).probs) == 1
    print("\nACCEPTANCE 09 PASS tripod identity at 5 samples; normalization exact")


def test_10_leaf_weight_approximation_gap_scales_like_one_over_m():
    def body():
        ratios = {}
        for n in (4, 5):
            scaled = []
            for m in (8, 12, 16, 20):
                tree = build_max_balanced(m)
                exact = density_row(tree, n)
                approx = multinomial_distribution(uniform_leaf_params(tree), n)
                gap = max(abs(a - b) for a, b in zip(exact.probs, approx.probs))
                scaled.append(gap * m)
            assert max(scaled) <= 2 * min(scaled), (n, scaled)
            ratios[n] = max(scaled) / min(scaled)
        return ratios

    ratios, elapsed = _timed(body)
    assert elapsed < 300
    shown = {n: f"{float(r):.3f}" for n, r in ratios.items()}
    print(f"\nACCEPTANCE 10 PASS scaled gaps within factor 2 {shown} in {elapsed:.1f} s")


def test_11_consistency_polytopes_nest_and_reject_outsiders():
    polys = {m: certify_vertices(density_matrix(5, m).point_set())
             for m in range(5, 12)}
    for m in range(5, 11):
        ok, witness = contains_polytope(polys[m + 1], polys[m])
        assert ok and witness is None, m
    base = polys[6]
    v = base.vertex_points()[0]
    pts = list(dict.fromkeys(base.point_set.points))
    centroid = tuple(sum(p[d] for p in pts) / len(pts) for d in range(3))
    nudged = tuple(x + (x - c) / 10 for x, c in zip(v, centroid))
    probe = Polytope(PointSet(3, (nudged,)), (0,))
    ok, witness = contains_polytope(probe, base)
    assert not ok and witness == nudged
    print("\nACCEPTANCE 11 PASS nesting m=5..10 and perturbation rejected")


def test_12_count_oracle_equivalence_on_random_pairs():
    rng = random.Random(20240817)
    checked = 0
    while checked < 500:
        m = rng.randint(5, 14)
        n = rng.randint(2, 5)
        host = random_shape(m, rng)
        pattern = random_shape(n, rng)
        assert count_pattern(host, pattern) == count_pattern_scan(host, pattern)
        checked += 1
    print(f"\nACCEPTANCE 12 PASS dynamic program == scan on {checked} pairs")
