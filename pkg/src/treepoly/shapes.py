"""Canonical unlabeled rooted binary tree shapes.

A shape is either a leaf or an unordered pair of child shapes.  We keep the
children in a canonical order, so two shapes are equal exactly when their wire
encodings are equal as strings (leaf is ``*``, an internal node is
``(left,right)``).

One total order drives everything: shapes compare by leaf count first, then by
descending encoding.  That order fixes the child order inside every node, the
position of each shape in the index of all n-leaf shapes, and therefore every
coordinate system downstream.  Under it the comb tree is always index 0 of its
size, matching the usual convention of listing the comb coordinate first.

Besides construction, parsing and enumeration, this module counts leaf
labelings of a shape and counts/locates induced subtrees ("patterns"): for a
subset S of leaves, the induced subtree is the one spanned by S after
suppressing the resulting degree-2 vertices, rooted at the meet of S.  Pattern
counting has two independent routes, a bottom-up dynamic program used by
default and an exhaustive subset scan kept as an oracle.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_left
from dataclasses import dataclass
from functools import cache
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Iterator

from .caps import DEFAULT_CAPS, ResourceCaps
from .errors import CapExceeded, DomainError, ParseError

# Encoding characters remapped so that an ascending string comparison of the
# translated text is a descending comparison of the original.
_DESCENDING = str.maketrans({c: chr(0xFF - ord(c)) for c in "(),*"})


class TreeShape:
    """An immutable, interned tree shape.

    Instances are only created through :func:`leaf` and :func:`node`, which
    canonicalize and intern them, so equal shapes are the same object and the
    object is safe to share across threads.
    """

    __slots__ = ("left", "right", "leaf_count", "encoding", "sort_key")

    left: "TreeShape | None"
    right: "TreeShape | None"
    leaf_count: int
    encoding: str
    sort_key: tuple[int, str]

    def __init__(self, left: "TreeShape | None", right: "TreeShape | None",
                 leaf_count: int, encoding: str):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "leaf_count", leaf_count)
        object.__setattr__(self, "encoding", encoding)
        object.__setattr__(self, "sort_key", (leaf_count, encoding.translate(_DESCENDING)))

    def __setattr__(self, name, value):
        raise AttributeError("TreeShape is immutable")

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, TreeShape) and self.encoding == other.encoding

    def __hash__(self) -> int:
        return hash(self.encoding)

    def __lt__(self, other: "TreeShape") -> bool:
        return self.sort_key < other.sort_key

    def __le__(self, other: "TreeShape") -> bool:
        return self.sort_key <= other.sort_key

    def __gt__(self, other: "TreeShape") -> bool:
        return self.sort_key > other.sort_key

    def __ge__(self, other: "TreeShape") -> bool:
        return self.sort_key >= other.sort_key

    def __repr__(self) -> str:
        return f"TreeShape({self.encoding!r})"


_POOL: dict[str, TreeShape] = {}


def _interned(left: TreeShape | None, right: TreeShape | None,
              leaf_count: int, encoding: str) -> TreeShape:
    hit = _POOL.get(encoding)
    if hit is not None:
        return hit
    # setdefault keeps interning consistent under concurrent construction
    return _POOL.setdefault(encoding, TreeShape(left, right, leaf_count, encoding))


_LEAF = _interned(None, None, 1, "*")


def leaf() -> TreeShape:
    """The 1-leaf shape."""
    return _LEAF


def node(a: TreeShape, b: TreeShape) -> TreeShape:
    """Join two shapes at a new root, in canonical child order."""
    if b.sort_key < a.sort_key:
        a, b = b, a
    return _interned(a, b, a.leaf_count + b.leaf_count, f"({a.encoding},{b.encoding})")


def serialize_shape(shape: TreeShape) -> str:
    """Canonical wire encoding of a shape (inverse of :func:`parse_shape`)."""
    return shape.encoding


def parse_shape(text: str) -> TreeShape:
    """Parse a shape expression over ``* ( ) ,`` such as ``((*,*),(*,(*,*)))``.

    Whitespace is ignored.  The result is canonicalized, so
    ``parse_shape(serialize_shape(t)) == t`` and re-serializing emits the
    canonical child order regardless of the order in the input.
    """
    s = text
    n = len(s)
    pos = 0

    def skip_ws() -> None:
        nonlocal pos
        while pos < n and s[pos].isspace():
            pos += 1

    def subtree() -> TreeShape:
        nonlocal pos
        skip_ws()
        if pos >= n:
            raise ParseError("unexpected end of input", pos)
        c = s[pos]
        if c == "*":
            pos += 1
            return _LEAF
        if c == "(":
            pos += 1
            a = subtree()
            skip_ws()
            if pos >= n or s[pos] != ",":
                raise ParseError("expected ',' after first subtree", pos)
            pos += 1
            b = subtree()
            skip_ws()
            if pos >= n or s[pos] != ")":
                # a third comma here means a non-binary node
                raise ParseError("expected ')' after second subtree", pos)
            pos += 1
            return node(a, b)
        raise ParseError(f"unexpected character {c!r}", pos)

    skip_ws()
    if pos >= n:
        raise ParseError("empty input", pos)
    result = subtree()
    skip_ws()
    if pos != n:
        raise ParseError("trailing input after shape", pos)
    return result


# ---------------------------------------------------------------------------
# Enumeration


def shape_count(n: int) -> int:
    """Number of distinct shapes with ``n`` leaves, via the size recurrence.

    Deliberately independent of :func:`enumerate_shapes` so the two can be
    checked against each other.
    """
    if n < 1:
        raise DomainError("leaf count must be at least 1")
    return _shape_count(n)


@cache
def _shape_count(n: int) -> int:
    if n == 1:
        return 1
    total = sum(_shape_count(i) * _shape_count(n - i) for i in range(1, (n + 1) // 2))
    if n % 2 == 0:
        half = _shape_count(n // 2)
        total += half * (half + 1) // 2
    return total


class ShapeIndex:
    """All shapes with ``n`` leaves, in canonical order, with reverse lookup."""

    __slots__ = ("n", "shapes", "_position")

    def __init__(self, n: int, shapes: tuple[TreeShape, ...]):
        self.n = n
        self.shapes = shapes
        self._position = {t.encoding: i for i, t in enumerate(shapes)}

    def position(self, shape: TreeShape) -> int:
        try:
            return self._position[shape.encoding]
        except KeyError:
            raise DomainError(
                f"shape {shape.encoding} has {shape.leaf_count} leaves, index holds {self.n}"
            ) from None

    def __len__(self) -> int:
        return len(self.shapes)

    def __iter__(self) -> Iterator[TreeShape]:
        return iter(self.shapes)

    def __getitem__(self, i: int) -> TreeShape:
        return self.shapes[i]

    def __contains__(self, shape: TreeShape) -> bool:
        return isinstance(shape, TreeShape) and shape.encoding in self._position

    def __repr__(self) -> str:
        return f"ShapeIndex(n={self.n}, size={len(self.shapes)})"


@cache
def _all_shapes(n: int) -> tuple[TreeShape, ...]:
    if n == 1:
        return (_LEAF,)
    found: list[TreeShape] = []
    for i in range(1, n // 2 + 1):
        smaller = _all_shapes(i)
        larger = _all_shapes(n - i)
        if i < n - i:
            found.extend(node(a, b) for a in smaller for b in larger)
        else:
            found.extend(node(a, b) for a, b in combinations_with_replacement(smaller, 2))
    return tuple(sorted(found, key=lambda t: t.sort_key))


@cache
def enumerate_shapes(n: int) -> ShapeIndex:
    """Index of all distinct ``n``-leaf shapes, each exactly once."""
    if n < 1:
        raise DomainError("leaf count must be at least 1")
    return ShapeIndex(n, _all_shapes(n))


# ---------------------------------------------------------------------------
# Named constructions


def build_comb(n: int) -> TreeShape:
    """Comb (caterpillar) tree on ``n`` leaves."""
    if n < 1:
        raise DomainError("comb size must be at least 1")
    t = _LEAF
    for _ in range(n - 1):
        t = node(_LEAF, t)
    return t


def build_bicomb(i: int, j: int) -> TreeShape:
    """Two combs of sizes ``i`` and ``j`` joined at a new root."""
    if i < 1 or j < 1:
        raise DomainError("bicomb sizes must be at least 1")
    return node(build_comb(i), build_comb(j))


def build_comb_replace(t: TreeShape, k: int) -> TreeShape:
    """Comb tree with ``k`` leaves whose deepest leaf is replaced by ``t``.

    The result has ``t.leaf_count + k - 1`` leaves.
    """
    if k < 2:
        raise DomainError("comb replacement needs size at least 2")
    out = t
    for _ in range(k - 1):
        out = node(_LEAF, out)
    return out


def build_complete(depth: int) -> TreeShape:
    """Complete symmetric tree on ``2**depth`` leaves."""
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    t = _LEAF
    for _ in range(depth):
        t = node(t, t)
    return t


def build_max_balanced(n: int) -> TreeShape:
    """The unique shape whose every internal node splits as evenly as possible."""
    if n < 1:
        raise DomainError("leaf count must be at least 1")
    if n == 1:
        return _LEAF
    return node(build_max_balanced((n + 1) // 2), build_max_balanced(n // 2))


# ---------------------------------------------------------------------------
# Leaf labelings


@cache
def _symmetric_nodes(t: TreeShape) -> int:
    if t.is_leaf:
        return 0
    return int(t.left is t.right) + _symmetric_nodes(t.left) + _symmetric_nodes(t.right)


def labeling_count(t: TreeShape) -> int:
    """Number of distinct leaf-labeled trees with this shape.

    Equals ``n! / 2**s`` where ``s`` counts internal nodes whose two child
    subtrees are the same shape; swapping the children of such a node is the
    only relabeling symmetry a binary shape has.
    """
    return math.factorial(t.leaf_count) // (1 << _symmetric_nodes(t))


# ---------------------------------------------------------------------------
# Restriction (induced subtrees)


@dataclass(frozen=True)
class LeafSubset:
    """A set of leaf positions, 0-based in the canonical left-to-right order."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = self.indices
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise DomainError("leaf indices must be strictly increasing")
        if idx and idx[0] < 0:
            raise DomainError("leaf indices must be nonnegative")

    def __len__(self) -> int:
        return len(self.indices)


def _as_indices(subset: "LeafSubset | Iterable[int]") -> tuple[int, ...]:
    if isinstance(subset, LeafSubset):
        return subset.indices
    idx = tuple(sorted(subset))
    return LeafSubset(idx).indices


def restrict(t: TreeShape, subset: "LeafSubset | Iterable[int]") -> TreeShape:
    """Shape induced by a subset of leaves.

    Leaves outside the subset are removed, degree-2 vertices are suppressed,
    and the result is rooted at the meet of the kept leaves.
    """
    idx = _as_indices(subset)
    if not idx:
        raise DomainError("leaf subset must be nonempty")
    if idx[-1] >= t.leaf_count:
        raise DomainError(
            f"leaf index {idx[-1]} out of range for a {t.leaf_count}-leaf shape")

    def go(s: TreeShape, lo: int, a: int, b: int) -> TreeShape | None:
        if a == b:
            return None
        if s.is_leaf:
            return _LEAF
        mid = lo + s.left.leaf_count
        cut = bisect_left(idx, mid, a, b)
        kept_left = go(s.left, lo, a, cut)
        kept_right = go(s.right, mid, cut, b)
        if kept_left is None:
            return kept_right
        if kept_right is None:
            return kept_left
        return node(kept_left, kept_right)

    result = go(t, 0, 0, len(idx))
    assert result is not None
    return result


# ---------------------------------------------------------------------------
# Pattern counting


@cache
def _pattern_table(t: TreeShape, max_leaves: int) -> dict[TreeShape, int]:
    """For each shape q with at most ``max_leaves`` leaves, the number of leaf
    subsets of ``t`` whose induced subtree is ``q``.  Treat as read-only."""
    if t.is_leaf:
        return {_LEAF: 1}
    left = _pattern_table(t.left, max_leaves)
    right = _pattern_table(t.right, max_leaves)
    table: dict[TreeShape, int] = {}
    for part in (left, right):
        for q, c in part.items():
            table[q] = table.get(q, 0) + c
    for qa, ca in left.items():
        for qb, cb in right.items():
            if qa.leaf_count + qb.leaf_count <= max_leaves:
                joined = node(qa, qb)
                table[joined] = table.get(joined, 0) + ca * cb
    return table


def pattern_counts(t: TreeShape, n: int) -> dict[TreeShape, int]:
    """Counts of every ``n``-leaf pattern inside ``t``, by dynamic program.

    The returned dict covers all of ``enumerate_shapes(n)`` (zeros included)
    and its values sum to ``C(t.leaf_count, n)``.
    """
    if n < 1:
        raise DomainError("pattern size must be at least 1")
    if n > t.leaf_count:
        raise DomainError("pattern cannot have more leaves than the host shape")
    table = _pattern_table(t, n)
    return {p: table.get(p, 0) for p in enumerate_shapes(n)}


def count_pattern(t: TreeShape, pattern: TreeShape) -> int:
    """Number of ``|pattern|``-subsets of leaves of ``t`` inducing ``pattern``."""
    return pattern_counts(t, pattern.leaf_count)[pattern]


def count_pattern_scan(t: TreeShape, pattern: TreeShape,
                       caps: ResourceCaps = DEFAULT_CAPS) -> int:
    """Same count by brute-force subset scan; the independent oracle route."""
    n = pattern.leaf_count
    m = t.leaf_count
    if n > m:
        raise DomainError("pattern cannot have more leaves than the host shape")
    total = math.comb(m, n)
    if total > caps.max_scan:
        raise CapExceeded(
            f"subset scan needs {total} restrictions, cap is {caps.max_scan}")
    return sum(1 for s in combinations(range(m), n) if restrict(t, s) == pattern)


# ---------------------------------------------------------------------------
# Display names

_NAMED: dict[str, str] = {}


def display_name(shape: TreeShape) -> str:
    """Conventional name for the small shapes, wire encoding otherwise."""
    if not _NAMED:
        for k in range(2, 17):
            _NAMED[build_comb(k).encoding] = f"Comb_{k}"
        _NAMED[node(node(_LEAF, _LEAF), node(_LEAF, _LEAF)).encoding] = "Bal_4"
        _NAMED[node(_LEAF, node(node(_LEAF, _LEAF), node(_LEAF, _LEAF))).encoding] = "Gir_5"
        _NAMED[build_bicomb(2, 3).encoding] = "Bal_5"
    return _NAMED.get(shape.encoding, shape.encoding)


def random_shape(n: int, rng: random.Random) -> TreeShape:
    """Uniformly random *split sizes* at every node; handy for tests and demos."""
    if n < 1:
        raise DomainError("leaf count must be at least 1")
    if n == 1:
        return _LEAF
    i = rng.randint(1, n - 1)
    return node(random_shape(i, rng), random_shape(n - i, rng))
