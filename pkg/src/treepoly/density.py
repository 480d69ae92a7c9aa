"""Induced subtree densities and the marginalization map on shape coordinates.

A distribution over the n-leaf shapes is a vector of exact rationals indexed
by :func:`treepoly.shapes.enumerate_shapes`.  For a host shape T with m >= n
leaves, its density row assigns to each n-leaf pattern the fraction of
n-subsets of T's leaves inducing that pattern.  Stacking the rows of every
m-leaf shape as columns gives the density matrix; applying it to a
distribution over m-leaf shapes marginalizes that distribution down to n
leaves.  Everything here is exact; no floating point.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import IO, Iterator

from .caps import DEFAULT_CAPS, ResourceCaps
from .errors import CapExceeded, DomainError
from .rational import format_rational, parse_rational
from .shapes import ShapeIndex, TreeShape, enumerate_shapes, pattern_counts

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ShapeDistribution:
    """Exact probability vector over the shapes of one leaf count."""

    __slots__ = ("index", "probs")

    def __init__(self, index: ShapeIndex, probs: tuple[Fraction, ...]):
        if len(probs) != len(index):
            raise DomainError(
                f"expected {len(index)} probabilities for n={index.n}, got {len(probs)}")
        if any(p < 0 for p in probs):
            raise DomainError("probabilities must be nonnegative")
        if sum(probs) != _ONE:
            raise DomainError("probabilities must sum to exactly 1")
        self.index = index
        self.probs = probs

    @property
    def n(self) -> int:
        return self.index.n

    def prob_of(self, shape: TreeShape) -> Fraction:
        return self.probs[self.index.position(shape)]

    def items(self) -> Iterator[tuple[TreeShape, Fraction]]:
        return zip(self.index.shapes, self.probs)

    @classmethod
    def point_mass(cls, shape: TreeShape) -> "ShapeDistribution":
        index = enumerate_shapes(shape.leaf_count)
        probs = [_ZERO] * len(index)
        probs[index.position(shape)] = _ONE
        return cls(index, tuple(probs))

    def __eq__(self, other) -> bool:
        return (isinstance(other, ShapeDistribution)
                and self.n == other.n and self.probs == other.probs)

    def __hash__(self) -> int:
        return hash((self.n, self.probs))

    def __repr__(self) -> str:
        body = ", ".join(f"{t.encoding}: {p}" for t, p in self.items())
        return f"ShapeDistribution(n={self.n}, {{{body}}})"

    def to_json(self) -> dict:
        return {"n": self.n, "probs": [format_rational(p) for p in self.probs]}

    @classmethod
    def from_json(cls, data: dict) -> "ShapeDistribution":
        index = enumerate_shapes(int(data["n"]))
        return cls(index, tuple(parse_rational(str(p)) for p in data["probs"]))


def density_row(t: TreeShape, n: int) -> ShapeDistribution:
    """Induced subtree density of every ``n``-leaf pattern in ``t``, exactly."""
    m = t.leaf_count
    if n > m:
        raise DomainError(f"cannot project a {m}-leaf shape to {n} leaves")
    total = math.comb(m, n)
    counts = pattern_counts(t, n)
    index = enumerate_shapes(n)
    return ShapeDistribution(
        index, tuple(Fraction(counts[p], total) for p in index.shapes))


class DensityMatrix:
    """One density row per m-leaf shape, presented as columns of an (n, m) map."""

    __slots__ = ("row_index", "col_index", "columns")

    def __init__(self, row_index: ShapeIndex, col_index: ShapeIndex,
                 columns: tuple[ShapeDistribution, ...]):
        self.row_index = row_index
        self.col_index = col_index
        self.columns = columns

    @property
    def n(self) -> int:
        return self.row_index.n

    @property
    def m(self) -> int:
        return self.col_index.n

    def column_for(self, shape: TreeShape) -> ShapeDistribution:
        return self.columns[self.col_index.position(shape)]

    def apply(self, p: ShapeDistribution) -> ShapeDistribution:
        """Marginalize ``p`` (over the column shapes) down to the row shapes."""
        if p.n != self.m:
            raise DomainError(f"distribution is over n={p.n}, matrix columns are m={self.m}")
        out = [_ZERO] * len(self.row_index)
        for weight, column in zip(p.probs, self.columns):
            if weight:
                for i, value in enumerate(column.probs):
                    out[i] += weight * value
        return ShapeDistribution(self.row_index, tuple(out))

    def point_set(self):
        """The columns as an exact point set tagged with their source trees."""
        from .geometry import PointSet  # local import keeps geometry standalone

        return PointSet(
            dim=len(self.row_index),
            points=tuple(c.probs for c in self.columns),
            provenance=tuple(t.encoding for t in self.col_index.shapes),
        )

    def to_csv(self, stream: IO[str]) -> None:
        """One line per source tree; header lists the pattern encodings."""
        writer = csv.writer(stream)
        writer.writerow(["tree"] + [p.encoding for p in self.row_index.shapes])
        for t, column in zip(self.col_index.shapes, self.columns):
            writer.writerow([t.encoding] + [format_rational(v) for v in column.probs])

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "patterns": [p.encoding for p in self.row_index.shapes],
            "columns": [
                {"tree": t.encoding, "probs": [format_rational(v) for v in c.probs]}
                for t, c in zip(self.col_index.shapes, self.columns)
            ],
        }

    def __repr__(self) -> str:
        return f"DensityMatrix(n={self.n}, m={self.m}, columns={len(self.columns)})"


def density_matrix(n: int, m: int, caps: ResourceCaps = DEFAULT_CAPS,
                   threads: int = 1) -> DensityMatrix:
    """All density rows from m-leaf shapes down to n-leaf patterns.

    Columns may be computed concurrently (``threads > 1``); the result is
    identical either way because the column order is the canonical shape
    order, not completion order.
    """
    if not 1 <= n <= m:
        raise DomainError(f"need 1 <= n <= m, got n={n}, m={m}")
    col_index = enumerate_shapes(m)
    if len(col_index) > caps.max_columns:
        raise CapExceeded(
            f"density matrix for m={m} needs {len(col_index)} columns, "
            f"cap is {caps.max_columns} (set TREEPOLY_CAPS to raise it)")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            columns = tuple(pool.map(lambda t: density_row(t, n), col_index.shapes))
    else:
        columns = tuple(density_row(t, n) for t in col_index.shapes)
    return DensityMatrix(enumerate_shapes(n), col_index, columns)


def marginalize(p: ShapeDistribution, n: int) -> ShapeDistribution:
    """Project a distribution over m-leaf shapes down to n-leaf shapes.

    Linear in ``p``: the result is the convex combination of the density rows
    of the m-leaf shapes, weighted by ``p``.
    """
    if n > p.n:
        raise DomainError(f"cannot marginalize n={p.n} up to {n}")
    if n == p.n:
        return p
    index = enumerate_shapes(n)
    out = [_ZERO] * len(index)
    for shape, weight in p.items():
        if weight:
            for i, value in enumerate(density_row(shape, n).probs):
                out[i] += weight * value
    return ShapeDistribution(index, tuple(out))


def write_distribution(p: ShapeDistribution, stream: IO[str]) -> None:
    json.dump(p.to_json(), stream, indent=2)
    stream.write("\n")


def read_distribution(stream: IO[str]) -> ShapeDistribution:
    return ShapeDistribution.from_json(json.load(stream))
