"""Exact convex geometry for finite rational point sets.

The objects here are finite lists of points with exact rational coordinates,
tagged with the tree that produced each point.  A point is a *vertex* of the
convex hull exactly when it cannot be written as a convex combination of the
other (distinct) points; that is decided by an exact feasibility LP, so a
vertex claim is a certified infeasibility and a non-vertex claim comes with an
explicit convex combination.  Containment of one hull in another reduces to
membership LPs on the vertices of the inner hull.

For planar cross-checks there is an independent convex hull routine built on
exact orientation predicates, plus an affine rank computation by Gaussian
elimination.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Sequence

from .errors import DomainError
from .linprog import INFEASIBLE, OPTIMAL, LPResult, lp_feasible
from .rational import format_rational, parse_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class PointSet:
    """Finite list of exact points; duplicates allowed but tracked."""

    dim: int
    points: tuple[Point, ...]
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        if any(len(p) != self.dim for p in self.points):
            raise DomainError(f"all points must have dimension {self.dim}")
        if self.provenance and len(self.provenance) != len(self.points):
            raise DomainError("provenance must tag every point (or be empty)")

    def __len__(self) -> int:
        return len(self.points)

    def tag(self, i: int) -> str:
        return self.provenance[i] if self.provenance else ""


@dataclass(frozen=True)
class Polytope:
    """A point set together with the certified indices of its hull vertices.

    ``vertices`` holds the first occurrence of each distinct vertex point, in
    input order; duplicates of a vertex point are recoverable through
    ``tags_of_point``.
    """

    point_set: PointSet
    vertices: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.point_set.dim

    def vertex_points(self) -> tuple[Point, ...]:
        return tuple(self.point_set.points[i] for i in self.vertices)

    def tags_of_point(self, point: Point) -> tuple[str, ...]:
        """Provenance tags of every input point equal to ``point``."""
        ps = self.point_set
        return tuple(ps.tag(i) for i, p in enumerate(ps.points) if p == point)

    def to_json(self) -> dict:
        ps = self.point_set
        return {
            "dim": ps.dim,
            "points": [[format_rational(v) for v in p] for p in ps.points],
            "vertices": list(self.vertices),
            "provenance": list(ps.provenance),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Polytope":
        ps = PointSet(
            dim=int(data["dim"]),
            points=tuple(tuple(parse_rational(str(v)) for v in p) for p in data["points"]),
            provenance=tuple(str(t) for t in data.get("provenance", ())),
        )
        return cls(ps, tuple(int(i) for i in data["vertices"]))


def write_polytope(poly: Polytope, stream: IO[str]) -> None:
    json.dump(poly.to_json(), stream, indent=2)
    stream.write("\n")


def read_polytope(stream: IO[str]) -> Polytope:
    return Polytope.from_json(json.load(stream))


def convex_membership(point: Point, generators: Sequence[Point]) -> LPResult:
    """Is ``point`` a convex combination of ``generators``?  Exact LP answer.

    Feasible results carry the combination weights; infeasible ones carry a
    Farkas certificate, i.e. an exact separating functional.
    """
    dim = len(point)
    if any(len(g) != dim for g in generators):
        raise DomainError("point and generators must share a dimension")
    a_eq = [[g[d] for g in generators] for d in range(dim)]
    a_eq.append([_ONE] * len(generators))
    b_eq = list(point) + [_ONE]
    return lp_feasible(a_eq=a_eq, b_eq=b_eq)


def certify_vertices(ps: PointSet) -> Polytope:
    """Classify every distinct point as hull vertex or not, by exact LP.

    Input order and duplication do not affect which *points* are vertices.
    Once a point is certified as a convex combination of the rest it is
    dropped from the working generator set; removing a non-extreme point
    never changes the hull, so later verdicts are unaffected.
    """
    first_seen: dict[Point, int] = {}
    for i, p in enumerate(ps.points):
        first_seen.setdefault(p, i)
    active = list(first_seen)
    vertices = []
    k = 0
    while k < len(active):
        p = active[k]
        others = active[:k] + active[k + 1:]
        if convex_membership(p, others).status == INFEASIBLE:
            vertices.append(first_seen[p])
            k += 1
        else:
            del active[k]
    return Polytope(ps, tuple(sorted(vertices)))


def contains_polytope(inner: Polytope, outer: Polytope) -> "tuple[bool, Point | None]":
    """Whether ``conv(inner) <= conv(outer)``; on failure, a witness vertex.

    Checks each vertex of the inner hull for membership in the outer point
    set; the first vertex that fails is returned as the witness.
    """
    if inner.dim != outer.dim:
        raise DomainError(f"dimension mismatch: {inner.dim} vs {outer.dim}")
    generators = list(dict.fromkeys(outer.vertex_points()))
    for p in inner.vertex_points():
        if convex_membership(p, generators).status != OPTIMAL:
            return False, p
    return True, None


def face_restrict(poly: Polytope, coordinate: int,
                  value: Fraction = _ZERO) -> Polytope:
    """Sub-polytope of the input points whose ``coordinate`` equals ``value``."""
    ps = poly.point_set
    if not 0 <= coordinate < ps.dim:
        raise DomainError(f"coordinate {coordinate} out of range for dim {ps.dim}")
    keep = [i for i, p in enumerate(ps.points) if p[coordinate] == value]
    sub = PointSet(
        dim=ps.dim,
        points=tuple(ps.points[i] for i in keep),
        provenance=tuple(ps.tag(i) for i in keep) if ps.provenance else (),
    )
    return certify_vertices(sub)


# ---------------------------------------------------------------------------
# Independent planar route


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points: Sequence[Point]) -> list[Point]:
    """Strict hull vertices in counterclockwise order (monotone chain).

    Exact orientation predicates; collinear boundary points are not vertices
    and are dropped.  This is the cross-check route for the LP certification,
    sharing no code with it.
    """
    if any(len(p) != 2 for p in points):
        raise DomainError("planar hull needs 2-dimensional points")
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def project_points(points: Sequence[Point], dims: Sequence[int]) -> tuple[Point, ...]:
    """Keep only the listed coordinates of each point."""
    return tuple(tuple(p[d] for d in dims) for p in points)


def affine_rank(points: Sequence[Point]) -> int:
    """Dimension of the affine hull of the points, by exact elimination."""
    if not points:
        return -1
    base = points[0]
    rows = [[v - b for v, b in zip(p, base)] for p in points[1:]]
    rank = 0
    ncols = len(base)
    pivot_col = 0
    while rows and pivot_col < ncols:
        hit = next((r for r, row in enumerate(rows) if row[pivot_col] != 0), None)
        if hit is None:
            pivot_col += 1
            continue
        rows[0], rows[hit] = rows[hit], rows[0]
        top = rows[0]
        inv = _ONE / top[pivot_col]
        for other in rows[1:]:
            factor = other[pivot_col] * inv
            if factor:
                for j in range(pivot_col, ncols):
                    other[j] -= factor * top[j]
        rows = rows[1:]
        rank += 1
        pivot_col += 1
    return rank
