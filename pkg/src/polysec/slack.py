"""Polygon slack matrices and exact nonnegative factorizations.

A certified section gives a nonnegative factorization of the polygon's
slack matrix: each facet inequality extends to an affine functional that is
nonnegative on the whole polytope (row factor), and each polygon vertex is
a convex combination of polytope vertices (column factor).  Both factors
are found exactly and the product is verified entry by entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import DomainError, NoExtension, NotInPolytope
from .linalg import fourier_motzkin_point, rank, solve_linear
from .polygon import Polygon
from .sections import SectionedPolytope, extreme_points

__all__ = [
    "SlackMatrix",
    "SlackFactorization",
    "AffineFunctional",
    "slack_matrix",
    "extend_facet_inequality",
    "convex_coefficients",
    "factorize_from_section",
    "verify_factorization",
]

Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class SlackMatrix:
    """S[i][j] = slack of vertex j in the inequality of edge (i, i+1)."""

    entries: Matrix

    @property
    def n(self) -> int:
        return len(self.entries)

    def rank(self) -> int:
        return rank(self.entries)


@dataclass(frozen=True)
class SlackFactorization:
    """Exact nonnegative factors with R * C = S and unit column sums in C."""

    r_factor: Matrix
    c_factor: Matrix

    @property
    def inner_dim(self) -> int:
        return len(self.r_factor[0]) if self.r_factor else 0


@dataclass(frozen=True)
class AffineFunctional:
    """constant + sum(coeffs[k] * x[k]), over ambient d-space."""

    constant: Fraction
    coeffs: tuple[Fraction, ...]

    def __call__(self, point: Sequence[Fraction]) -> Fraction:
        return self.constant + sum(c * Fraction(v) for c, v in zip(self.coeffs, point))


def _facet_inequality(polygon: Polygon, i: int) -> tuple[tuple[Fraction, Fraction], Fraction]:
    """Outward normal and offset of edge (i, i+1): a . x <= b on the polygon.

    For clockwise labels the outward normal is the edge vector rotated by
    +90 degrees.
    """
    x0, y0 = polygon.affine(i)
    x1, y1 = polygon.affine(i + 1)
    a = (-(y1 - y0), x1 - x0)
    b = a[0] * x0 + a[1] * y0
    return a, b


def slack_matrix(polygon: Polygon) -> SlackMatrix:
    n = polygon.n
    points = polygon.affine_vertices()
    rows = []
    for i in range(n):
        a, b = _facet_inequality(polygon, i)
        rows.append(tuple(b - a[0] * x - a[1] * y for (x, y) in points))
    return SlackMatrix(entries=tuple(rows))


def extend_facet_inequality(facet: int, s: SectionedPolytope) -> AffineFunctional:
    """Extend facet slack of the claimed polygon to all of the polytope.

    The planar slack b - a.x already vanishes appropriately on H; the free
    coefficients on coordinates 3..d are chosen by Fourier-Motzkin so the
    functional is nonnegative at every polytope vertex (midpoint of the
    residual interval per coordinate, eliminating in increasing index).
    """
    polygon = s.claimed_polygon()
    a, b = _facet_inequality(polygon, facet % polygon.n)
    free = s.dim - 2
    planar = [b - a[0] * v[0] - a[1] * v[1] for v in s.vertices]
    if free == 0:
        if any(val < 0 for val in planar):
            raise NoExtension(f"facet {facet} slack is negative on a vertex")
        return AffineFunctional(constant=b, coeffs=(-a[0], -a[1]))
    constraints = []
    for v, val in zip(s.vertices, planar):
        constraints.append(([Fraction(c) for c in v[2:]], -val))
    point = fourier_motzkin_point(constraints, free)
    if point is None:
        raise NoExtension(f"no nonnegative extension for facet {facet}")
    return AffineFunctional(constant=b, coeffs=(-a[0], -a[1], *point))


def _coefficients_over(
    target: tuple[Fraction, ...], gens: Sequence[tuple[Fraction, ...]], dim: int
) -> tuple[Fraction, ...]:
    k_max = min(len(gens), dim + 1)
    for size in range(1, k_max + 1):
        for subset in combinations(range(len(gens)), size):
            matrix = [[gens[k][coord] for k in subset] for coord in range(dim)]
            matrix.append([Fraction(1)] * size)
            rhs = list(target) + [Fraction(1)]
            sol = solve_linear(matrix, rhs)
            if sol is None or any(w < 0 for w in sol):
                continue
            weights = [Fraction(0)] * len(gens)
            for k, w in zip(subset, sol):
                weights[k] = w
            return tuple(weights)
    raise NotInPolytope(f"{target} is not in the polytope")


def convex_coefficients(point: Sequence[Fraction], s: SectionedPolytope) -> tuple[Fraction, ...]:
    """Convex weights over the extreme points of s that reproduce the point.

    Brute force over affinely independent vertex subsets of size at most
    d + 1, first feasible subset in lexicographic order; deterministic.
    """
    target = tuple(Fraction(c) for c in point)
    if len(target) != s.dim:
        raise DomainError(f"point {target} is not in dimension {s.dim}")
    return _coefficients_over(target, extreme_points(s.vertices, s.dim), s.dim)


def factorize_from_section(polygon: Polygon, s: SectionedPolytope) -> SlackFactorization:
    """Nonnegative factorization of the slack matrix through a certified section."""
    if not s.certified:
        raise DomainError("the extension must carry a verified certificate")
    if s.claimed_polygon() != polygon:
        raise DomainError("the extension's section is not this polygon")
    n = polygon.n
    gens = extreme_points(s.vertices, s.dim)
    functionals = [extend_facet_inequality(i, s) for i in range(n)]
    r_rows = []
    for f in functionals:
        row = tuple(f(q) for q in gens)
        if any(v < 0 for v in row):
            raise NoExtension("extended functional is negative on an extreme point")
        r_rows.append(row)
    c_cols = []
    for j in range(n):
        x, y = polygon.affine(j)
        target = (x, y) + (Fraction(0),) * (s.dim - 2)
        c_cols.append(_coefficients_over(target, gens, s.dim))
    c_rows = tuple(tuple(col[k] for col in c_cols) for k in range(len(gens)))
    fact = SlackFactorization(r_factor=tuple(r_rows), c_factor=c_rows)
    if not verify_factorization(slack_matrix(polygon), fact):
        raise NoExtension("factor product failed to reproduce the slack matrix")
    return fact


def verify_factorization(sm: SlackMatrix, fact: SlackFactorization) -> bool:
    """Exact check: factors nonnegative and R * C equals the slack matrix."""
    r, c = fact.r_factor, fact.c_factor
    n = sm.n
    if len(r) != n or (r and len(c) != len(r[0])) or any(len(row) != n for row in c):
        return False
    if any(v < 0 for row in r for v in row) or any(v < 0 for row in c for v in row):
        return False
    inner = len(c)
    for i in range(n):
        for j in range(n):
            total = sum(r[i][k] * c[k][j] for k in range(inner))
            if total != sm.entries[i][j]:
                return False
    return True
