"""Shared test helpers: independent oracles and shape generators.

Everything here deliberately avoids the library code paths it is used to
check: shape counts come from the size recurrence written out again, label
counts from brute-force enumeration, multinomial attachment from explicit
graph surgery, and LP answers are re-verified by substitution.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

from hypothesis import strategies as st

from treepoly.shapes import TreeShape, leaf, node, random_shape

# Shape counts for n = 1..12, frozen from the pairing recurrence
WEDDERBURN = (1, 1, 1, 2, 3, 6, 11, 23, 46, 98, 207, 451)


@st.composite
def shapes(draw, min_leaves: int = 1, max_leaves: int = 10) -> TreeShape:
    n = draw(st.integers(min_leaves, max_leaves))
    return drawn_shape(draw, n)


def drawn_shape(draw, n: int) -> TreeShape:
    if n == 1:
        return leaf()
    i = draw(st.integers(1, n - 1))
    return node(drawn_shape(draw, i), drawn_shape(draw, n - i))


def seeded_shapes(n: int, count: int, seed: int) -> list[TreeShape]:
    rng = random.Random(seed)
    return [random_shape(n, rng) for _ in range(count)]


# ---------------------------------------------------------------------------
# Brute-force labeling count


def brute_labeling_count(shape: TreeShape) -> int:
    """Distinct leaf-labeled trees of a shape, by enumerating all labelings."""

    def canon(t: TreeShape, labels: list[int], start: int) -> tuple[str, int]:
        if t.is_leaf:
            return str(labels[start]), start + 1
        a, mid = canon(t.left, labels, start)
        b, end = canon(t.right, labels, mid)
        lo, hi = sorted((a, b))
        return f"({lo},{hi})", end

    n = shape.leaf_count
    seen = {canon(shape, list(perm), 0)[0] for perm in permutations(range(n))}
    return len(seen)


# ---------------------------------------------------------------------------
# Graph-surgery oracle for multinomial attachment


class _GNode:
    __slots__ = ("children", "fresh")

    def __init__(self, fresh: bool = False):
        self.children: list[_GNode] = []
        self.fresh = fresh  # True for the pendant leaves added by the multiset


def surgery_build(skeleton: TreeShape, multiset) -> TreeShape:
    """Independent route for the pendant-attachment construction.

    Builds the extended tree as explicit nodes, subdivides edges bottom-up
    per multiset entry, prunes everything that is not a fresh leaf, and
    suppresses unary chains.  Edge indices follow the package convention
    (0 = pendant root edge, then preorder, left child first).
    """
    counts: dict[int, int] = {}
    for e in multiset:
        counts[e] = counts.get(e, 0) + 1
    cursor = [1]

    def build(t: TreeShape) -> _GNode:
        g = _GNode()
        if t.is_leaf:
            return g
        for child in (t.left, t.right):
            edge_id = cursor[0]
            cursor[0] += 1
            sub = build(child)
            g.children.append(subdivide(sub, counts.get(edge_id, 0)))
        return g

    def subdivide(below: _GNode, k: int) -> _GNode:
        # each subdivision point carries one fresh pendant leaf
        for _ in range(k):
            joint = _GNode()
            joint.children = [below, _GNode(fresh=True)]
            below = joint
        return below

    body = build(skeleton)
    top = subdivide(body, counts.get(0, 0))

    def prune(g: _GNode) -> "_GNode | None":
        if not g.children:
            return g if g.fresh else None
        kept = [p for p in (prune(c) for c in g.children) if p is not None]
        if not kept:
            return None
        if len(kept) == 1:
            return kept[0]  # suppress the unary joint
        out = _GNode()
        out.children = kept
        return out

    pruned = prune(top)
    assert pruned is not None, "nonempty multisets always leave fresh leaves"

    def to_shape(g: _GNode) -> TreeShape:
        if not g.children:
            return leaf()
        assert len(g.children) == 2
        return node(to_shape(g.children[0]), to_shape(g.children[1]))

    return to_shape(pruned)


# ---------------------------------------------------------------------------
# LP answer verification by substitution


def assert_feasible_point(x, *, a_ub=(), b_ub=(), a_eq=(), b_eq=()):
    assert all(v >= 0 for v in x)
    for row, rhs in zip(a_ub, b_ub):
        assert sum(c * v for c, v in zip(row, x)) <= rhs
    for row, rhs in zip(a_eq, b_eq):
        assert sum(c * v for c, v in zip(row, x)) == rhs


def assert_farkas_certificate(y, *, a_ub=(), b_ub=(), a_eq=(), b_eq=()):
    """y proves infeasibility: y.b > 0 while every column value is <= 0."""
    rows = list(a_ub) + list(a_eq)
    rhs = list(b_ub) + list(b_eq)
    assert len(y) == len(rows)
    ncols = len(rows[0]) if rows else 0
    for j in range(ncols):
        assert sum(y[i] * rows[i][j] for i in range(len(rows))) <= 0
    for i in range(len(a_ub)):  # slack columns of inequality rows
        assert y[i] <= 0
    assert sum(y[i] * rhs[i] for i in range(len(rows))) > 0


def rational_grid(denominator: int, parts: int):
    """All exact weight vectors with the given denominator summing to 1."""

    def compositions(total: int, k: int):
        if k == 1:
            yield (total,)
            return
        for head in range(total + 1):
            for tail in compositions(total - head, k - 1):
                yield (head,) + tail

    for combo in compositions(denominator, parts):
        yield tuple(Fraction(c, denominator) for c in combo)
