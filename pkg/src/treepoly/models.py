"""Parametric families of exchangeable, sampling-consistent shape distributions.

Two families live here.

Markov branching models: a symmetric split-size distribution ``q_n`` on
``{1, ..., n-1}`` per level recursively splits the leaf set.  The probability
of an unlabeled shape multiplies a split weight per internal node, doubled
whenever the two child subtrees differ (the two orientations of the split
produce the same shape).  The one-parameter beta-splitting subfamily is
handled exactly: its split weights are rational functions of the parameter,
evaluated here in a reduced form that stays finite on the whole open domain
``beta > -2``, with the endpoints ``beta = -2`` (all mass on comb splits) and
``beta = infinity`` (termwise limit, ``C(n,i) / (2**n - 2)``) as symbols.
Consistent families obey a one-step downward recurrence on the split rules,
so the rule at the top level determines all the lower ones.

Multinomial models: fix a skeleton shape, extend it with a pendant root edge,
and put a probability weight on every edge.  A sample of size n draws an edge
multiset, hangs one new leaf on an edge per draw (repeats chain along the
edge), and takes the subtree induced by the new leaves.  The probability of a
shape is the sum of multinomial monomials over the edge multisets producing
it.  The construction that weights each leaf edge ``1/m`` approximates the
density row of the skeleton itself.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import IO, Iterable, Sequence

from .caps import DEFAULT_CAPS, ResourceCaps
from .density import ShapeDistribution
from .errors import CapExceeded, DomainError
from .rational import format_rational, parse_rational
from .shapes import TreeShape, enumerate_shapes, leaf, node

_ZERO = Fraction(0)
_ONE = Fraction(1)
_HALF = Fraction(1, 2)


class _BetaEndpoint:
    __slots__ = ("label",)

    def __init__(self, label: str):
        self.label = label

    def __repr__(self) -> str:
        return f"BetaParam({self.label})"


#: symbolic endpoint beta = -2: every split sends one leaf to each side
BETA_COMB = _BetaEndpoint("-2")
#: symbolic endpoint beta = infinity: termwise limit of the split weights
BETA_INFINITY = _BetaEndpoint("inf")

BetaParam = "Fraction | _BetaEndpoint"


def parse_beta(text: str) -> "Fraction | _BetaEndpoint":
    """Parse ``p/q``, ``-2`` or ``inf`` into a beta parameter."""
    cleaned = text.strip().lower()
    if cleaned in ("inf", "infinity", "oo"):
        return BETA_INFINITY
    value = parse_rational(text)
    return _check_beta(value)


def _check_beta(beta) -> "Fraction | _BetaEndpoint":
    if isinstance(beta, _BetaEndpoint):
        return beta
    value = Fraction(beta)
    if value == -2:
        return BETA_COMB
    if value < -2:
        raise DomainError(f"beta must be > -2 (or the -2/inf endpoints), got {value}")
    return value


def format_beta(beta: "Fraction | _BetaEndpoint") -> str:
    return beta.label if isinstance(beta, _BetaEndpoint) else format_rational(beta)


def falling_factorial(x: Fraction, k: int) -> Fraction:
    """``x (x-1) ... (x-k+1)`` with exact rational ``x``."""
    if k < 0:
        raise DomainError("falling factorial needs k >= 0")
    out = _ONE
    for j in range(k):
        out *= x - j
    return out


@dataclass(frozen=True)
class SplittingRule:
    """Split-size distribution for one level: ``q[i-1]`` is the weight of an
    ``(i, n-i)`` split.  Must be symmetric, nonnegative, and sum to 1."""

    n: int
    q: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 2:
            raise DomainError("splitting rules start at level 2")
        if len(self.q) != self.n - 1:
            raise DomainError(f"level {self.n} rule needs {self.n - 1} weights")
        if any(w < 0 for w in self.q):
            raise DomainError("split weights must be nonnegative")
        if sum(self.q) != _ONE:
            raise DomainError("split weights must sum to exactly 1")
        if any(self.q[i - 1] != self.q[self.n - i - 1] for i in range(1, self.n)):
            raise DomainError("split weights must be symmetric")

    def weight(self, i: int) -> Fraction:
        if not 1 <= i <= self.n - 1:
            raise DomainError(f"split size {i} out of range for level {self.n}")
        return self.q[i - 1]

    def to_json(self) -> dict:
        return {"n": self.n, "q": [format_rational(w) for w in self.q]}

    @classmethod
    def from_json(cls, data: dict) -> "SplittingRule":
        return cls(int(data["n"]), tuple(parse_rational(str(w)) for w in data["q"]))


def write_rule(rule: SplittingRule, stream: IO[str]) -> None:
    json.dump(rule.to_json(), stream, indent=2)
    stream.write("\n")


def read_rule(stream: IO[str]) -> SplittingRule:
    return SplittingRule.from_json(json.load(stream))


# ---------------------------------------------------------------------------
# Beta splitting

@lru_cache(maxsize=None)
def _beta_numerators(n: int, beta: Fraction) -> tuple[Fraction, ...]:
    # C(n,i) * (beta+2)...(beta+i) * (beta+2)...(beta+n-i): the common factor
    # (beta+1)^2 of the textbook numerator and denominator is cancelled, which
    # keeps every value finite and positive on the whole domain beta > -2.
    rising = [_ONE]
    for a in range(2, n):
        rising.append(rising[-1] * (beta + a))
    return tuple(
        math.comb(n, i) * rising[i - 1] * rising[n - i - 1] for i in range(1, n)
    )


def beta_q(n: int, i: int, beta) -> Fraction:
    """Split weight ``q_n(i)`` of the beta-splitting model, exactly."""
    if n < 2:
        raise DomainError("beta split weights start at level 2")
    if not 1 <= i <= n - 1:
        raise DomainError(f"split size {i} out of range for level {n}")
    beta = _check_beta(beta)
    if beta is BETA_COMB:
        if n == 2:
            return _ONE
        return _HALF if i in (1, n - 1) else _ZERO
    if beta is BETA_INFINITY:
        return Fraction(math.comb(n, i), 2**n - 2)
    numerators = _beta_numerators(n, Fraction(beta))
    total = sum(numerators)
    assert total > 0, "reduced denominator must be positive for beta > -2"
    return numerators[i - 1] / total


def beta_rule(n: int, beta) -> SplittingRule:
    """The whole level-``n`` split rule of the beta-splitting model."""
    return SplittingRule(n, tuple(beta_q(n, i, beta) for i in range(1, n)))


def beta_distribution(n: int, beta) -> ShapeDistribution:
    """Beta-splitting distribution on the ``n``-leaf shapes."""
    if n < 1:
        raise DomainError("leaf count must be at least 1")
    return markov_branching_distribution([beta_rule(k, beta) for k in range(2, n + 1)])


def derive_lower_rule(rule: SplittingRule) -> SplittingRule:
    """Step a split rule down one level.

    Any sampling-consistent family of rules satisfies this recurrence, so the
    level-``n`` rule of such a family determines every lower rule.
    """
    n = rule.n
    if n < 3:
        raise DomainError("cannot derive below level 2")
    denom = n - 2 * rule.weight(1)
    if denom == 0:
        raise DomainError("degenerate rule: derivation denominator is zero")
    q = tuple(
        ((n - i) * rule.weight(i) + (i + 1) * rule.weight(i + 1)) / denom
        for i in range(1, n - 1)
    )
    return SplittingRule(n - 1, q)


# ---------------------------------------------------------------------------
# Markov branching models


def markov_branching_distribution(rules: Sequence[SplittingRule]) -> ShapeDistribution:
    """Distribution on shapes defined by one split rule per level 2..n.

    The probability of a shape is the product over internal nodes of the
    split weight of the node's (i, k-i) split, times 2 whenever the two child
    subtrees differ (either side of the split can carry either subtree).
    """
    by_level = {r.n: r for r in rules}
    if len(by_level) != len(rules):
        raise DomainError("duplicate splitting rule levels")
    n = max(by_level) if by_level else 1
    missing = [k for k in range(2, n + 1) if k not in by_level]
    if missing:
        raise DomainError(f"missing splitting rules for levels {missing}")

    cache: dict[TreeShape, Fraction] = {}

    def prob(t: TreeShape) -> Fraction:
        if t.is_leaf:
            return _ONE
        hit = cache.get(t)
        if hit is not None:
            return hit
        rule = by_level[t.leaf_count]
        factor = 1 if t.left is t.right else 2
        value = factor * rule.weight(t.left.leaf_count) * prob(t.left) * prob(t.right)
        cache[t] = value
        return value

    index = enumerate_shapes(n)
    return ShapeDistribution(index, tuple(prob(t) for t in index.shapes))


# ---------------------------------------------------------------------------
# Multinomial models


def edge_count(skeleton: TreeShape) -> int:
    """Edges of the skeleton extended with a pendant root edge: ``2m - 1``."""
    return 2 * skeleton.leaf_count - 1


@dataclass(frozen=True)
class MultinomialParams:
    """A skeleton shape plus one probability weight per extended-tree edge.

    Edge order: index 0 is the pendant root edge, then depth-first over the
    canonical skeleton, the edge into a child immediately before the edges
    inside that child, left child first.
    """

    skeleton: TreeShape
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        expected = edge_count(self.skeleton)
        if len(self.weights) != expected:
            raise DomainError(
                f"skeleton with {self.skeleton.leaf_count} leaves needs "
                f"{expected} edge weights, got {len(self.weights)}")
        if any(w < 0 for w in self.weights):
            raise DomainError("edge weights must be nonnegative")
        if sum(self.weights) != _ONE:
            raise DomainError("edge weights must sum to exactly 1")

    def to_json(self) -> dict:
        return {
            "skeleton": self.skeleton.encoding,
            "weights": [format_rational(w) for w in self.weights],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MultinomialParams":
        from .shapes import parse_shape

        return cls(parse_shape(str(data["skeleton"])),
                   tuple(parse_rational(str(w)) for w in data["weights"]))


def write_params(params: MultinomialParams, stream: IO[str]) -> None:
    json.dump(params.to_json(), stream, indent=2)
    stream.write("\n")


def read_params(stream: IO[str]) -> MultinomialParams:
    return MultinomialParams.from_json(json.load(stream))


def leaf_edge_indices(skeleton: TreeShape) -> tuple[int, ...]:
    """Indices (in the order above) of the edges ending in a skeleton leaf."""
    out: list[int] = []
    cursor = 1  # 0 is the pendant root edge

    def walk(t: TreeShape) -> None:
        nonlocal cursor
        for child in (t.left, t.right):
            here = cursor
            cursor += 1
            if child.is_leaf:
                out.append(here)
            else:
                walk(child)

    if not skeleton.is_leaf:
        walk(skeleton)
    return tuple(out)


def _chain(below: TreeShape | None, pendants: int) -> TreeShape | None:
    for _ in range(pendants):
        below = leaf() if below is None else node(leaf(), below)
    return below


def multinomial_build(skeleton: TreeShape, edges: Iterable[int],
                      n: "int | None" = None) -> TreeShape:
    """Shape induced by hanging one new leaf per multiset entry on its edge.

    Repeated entries chain along the edge; the result only keeps the new
    leaves, so it is independent of the chaining order.
    """
    counts = Counter(edges)
    size = sum(counts.values())
    if size == 0:
        raise DomainError("edge multiset must be nonempty")
    if n is not None and size != n:
        raise DomainError(f"edge multiset has {size} entries, expected {n}")
    total = edge_count(skeleton)
    bad = [e for e in counts if not 0 <= e < total]
    if bad:
        raise DomainError(f"edge indices {sorted(bad)} out of range 0..{total - 1}")

    cursor = 1

    def walk(t: TreeShape) -> TreeShape | None:
        nonlocal cursor
        merged: TreeShape | None = None
        for child in (t.left, t.right):
            here = cursor
            cursor += 1
            sub = None if child.is_leaf else walk(child)
            sub = _chain(sub, counts.get(here, 0))
            if sub is not None:
                merged = sub if merged is None else node(merged, sub)
        return merged

    body = None if skeleton.is_leaf else walk(skeleton)
    result = _chain(body, counts.get(0, 0))
    assert result is not None
    return result


@lru_cache(maxsize=64)
def _multinomial_distribution(params: MultinomialParams, n: int) -> ShapeDistribution:
    support = tuple(e for e, w in enumerate(params.weights) if w > 0)
    index = enumerate_shapes(n)
    mass: dict[TreeShape, Fraction] = {}
    fact_n = math.factorial(n)
    from itertools import combinations_with_replacement

    for multiset in combinations_with_replacement(support, n):
        counts = Counter(multiset)
        shape = multinomial_build(params.skeleton, multiset)
        coeff = fact_n
        weight = _ONE
        for e, k in counts.items():
            coeff //= math.factorial(k)
            weight *= params.weights[e] ** k
        mass[shape] = mass.get(shape, _ZERO) + coeff * weight
    return ShapeDistribution(
        index, tuple(mass.get(t, _ZERO) for t in index.shapes))


def multinomial_distribution(params: MultinomialParams, n: int,
                             caps: ResourceCaps = DEFAULT_CAPS) -> ShapeDistribution:
    """Distribution on ``n``-leaf shapes under the multinomial model.

    Enumerates every size-``n`` multiset over the positively weighted edges;
    zero-weight edges contribute nothing and are skipped.
    """
    if n < 1:
        raise DomainError("sample size must be at least 1")
    support_size = sum(1 for w in params.weights if w > 0)
    if support_size == 0:
        raise DomainError("at least one edge weight must be positive")
    work = math.comb(support_size + n - 1, n)
    if work > caps.max_scan:
        raise CapExceeded(
            f"multinomial enumeration needs {work} multisets, cap is {caps.max_scan}")
    return _multinomial_distribution(params, n)


def multinomial_prob(params: MultinomialParams, shape: TreeShape, n: int,
                     caps: ResourceCaps = DEFAULT_CAPS) -> Fraction:
    """Probability of one ``n``-leaf shape under the multinomial model."""
    if shape.leaf_count != n:
        raise DomainError(f"shape has {shape.leaf_count} leaves, expected {n}")
    return multinomial_distribution(params, n, caps).prob_of(shape)


def uniform_leaf_params(skeleton: TreeShape) -> MultinomialParams:
    """Weights ``1/m`` on each of the ``m`` leaf edges, zero elsewhere.

    Sampling from this model approximates sampling leaves of the skeleton
    itself, with an error that shrinks like ``1/m``.
    """
    m = skeleton.leaf_count
    if m < 2:
        raise DomainError("skeleton needs at least 2 leaves")
    weights = [_ZERO] * edge_count(skeleton)
    for e in leaf_edge_indices(skeleton):
        weights[e] = Fraction(1, m)
    return MultinomialParams(skeleton, tuple(weights))
