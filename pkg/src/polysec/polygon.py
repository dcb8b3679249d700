"""Convex polygons with clockwise cyclic labeling, and planar maps.

The canonical labeling is produced by validate(): clockwise orientation
(the triangle (p_{i+2}, p_{i+1}, p_i) is positively oriented for every i)
and the lexicographically smallest vertex at index 0.  Operations that need
a specific index alignment take their own index parameter instead of
relying on the canonical rotation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import (
    DegenerateTriple,
    DuplicateVertex,
    ImageNotConvex,
    LineMeetsPolygon,
    MapsVertexToInfinity,
    NotConvex,
    TooFewVertices,
)
from .exactgeom import ProjLine, ProjPoint, det3

AffinePair = tuple[Fraction, Fraction]

__all__ = ["Polygon", "ProjMap2", "validate", "apply_map", "map_line_to_infinity",
           "affine_through_three", "convex_hull_2d"]


def _orient(a: AffinePair, b: AffinePair, c: AffinePair) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def convex_hull_2d(points: Iterable[AffinePair]) -> list[AffinePair]:
    """Strict convex hull (collinear boundary points dropped), counterclockwise.

    Monotone chain over exact rationals with lexicographic ordering; the
    first hull vertex is the lexicographically smallest point.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[AffinePair] = []
    for p in pts:
        while len(lower) >= 2 and _orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[AffinePair] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


class Polygon:
    """Strictly convex polygon, vertices cyclically clockwise labeled."""

    __slots__ = ("vertices",)

    def __init__(self, vertices: Sequence[ProjPoint]):
        self.vertices = tuple(vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> ProjPoint:
        return self.vertices[i % len(self.vertices)]

    def affine(self, i: int) -> AffinePair:
        return self.vertex(i).dehomogenize()

    def affine_vertices(self) -> list[AffinePair]:
        return [p.dehomogenize() for p in self.vertices]

    def contains(self, x: Fraction, y: Fraction) -> bool:
        """Point-in-closed-polygon via the n edge orientation signs."""
        pts = self.affine_vertices()
        n = len(pts)
        # clockwise labels: interior is where every (p_i, p_{i+1}, q) turn is <= 0
        return all(_orient(pts[i], pts[(i + 1) % n], (x, y)) <= 0 for i in range(n))

    def strictly_contains(self, x: Fraction, y: Fraction) -> bool:
        pts = self.affine_vertices()
        n = len(pts)
        return all(_orient(pts[i], pts[(i + 1) % n], (x, y)) < 0 for i in range(n))

    def __eq__(self, other):
        return isinstance(other, Polygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        coords = ", ".join(f"({x},{y})" for x, y in self.affine_vertices())
        return f"Polygon[{coords}]"


def validate(points: Iterable[Sequence]) -> Polygon:
    """Build the canonical Polygon from affine rational pairs.

    Rejects duplicates, collinear triples and non-convex orderings; flips
    counterclockwise input to clockwise; rotates the lexicographically
    smallest vertex to index 0.
    """
    pts = [(Fraction(p[0]), Fraction(p[1])) for p in points]
    if len(pts) < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {len(pts)}")
    if len(set(pts)) != len(pts):
        raise DuplicateVertex("duplicate vertices in input")
    hull = convex_hull_2d(pts)
    if len(hull) != len(pts):
        raise NotConvex("input contains collinear or interior points")
    # the input cyclic order must agree with the hull cyclic order, up to
    # rotation and reversal (rules out convex-position but self-crossing orders)
    index_of = {p: k for k, p in enumerate(hull)}
    seq = [index_of[p] for p in pts]
    n = len(pts)
    diffs = {(seq[(i + 1) % n] - seq[i]) % n for i in range(n)}
    if diffs != {1} and diffs != {n - 1}:
        raise NotConvex("vertex order does not trace the convex hull")
    clockwise = list(reversed(hull))  # monotone chain yields counterclockwise
    start = clockwise.index(min(clockwise))
    ordered = clockwise[start:] + clockwise[:start]
    return Polygon([ProjPoint.from_affine(x, y) for x, y in ordered])


class ProjMap2:
    """Invertible projective map of the plane, a 3x3 integer matrix up to scale."""

    __slots__ = ("m",)

    def __init__(self, rows: Sequence[Sequence]):
        scaled = _scale_matrix_to_int(rows)
        self.m = tuple(tuple(r) for r in scaled)
        if self.det == 0:
            raise DegenerateTriple("projective map must be invertible")

    @property
    def det(self) -> int:
        return det3(self.m[0], self.m[1], self.m[2])

    @classmethod
    def identity(cls) -> "ProjMap2":
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    def apply_raw(self, p: ProjPoint) -> tuple[int, int, int]:
        x, y, w = p.h
        return tuple(r[0] * x + r[1] * y + r[2] * w for r in self.m)

    def apply(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(*self.apply_raw(p))

    def compose(self, inner: "ProjMap2") -> "ProjMap2":
        """self after inner: (self.compose(inner))(p) = self(inner(p))."""
        a, b = self.m, inner.m
        rows = [
            [sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)]
            for i in range(3)
        ]
        return ProjMap2(rows)

    def inverse(self) -> "ProjMap2":
        (a, b, c), (d, e, f), (g, h, i) = self.m
        adj = (
            (e * i - f * h, c * h - b * i, b * f - c * e),
            (f * g - d * i, a * i - c * g, c * d - a * f),
            (d * h - e * g, b * g - a * h, a * e - b * d),
        )
        return ProjMap2(adj)

    def is_affine(self) -> bool:
        return self.m[2][0] == 0 and self.m[2][1] == 0

    def __repr__(self):
        return f"ProjMap2{self.m}"


def _scale_matrix_to_int(rows: Sequence[Sequence]) -> list[list[int]]:
    fracs = [[Fraction(v) for v in row] for row in rows]
    denom_lcm = 1
    for row in fracs:
        for v in row:
            d = v.denominator
            denom_lcm = denom_lcm // gcd(denom_lcm, d) * d
    ints = [[int(v * denom_lcm) for v in row] for row in fracs]
    g = 0
    for row in ints:
        for v in row:
            g = gcd(g, abs(v))
    if g > 1:
        ints = [[v // g for v in row] for row in ints]
    return ints


def apply_map(polygon: Polygon, t: ProjMap2) -> Polygon:
    """Vertexwise image of the polygon, revalidated.

    The images must all be finite with a consistent homogeneous sign, which
    is exactly the condition that the line t sends to infinity misses the
    polygon.
    """
    raws = [t.apply_raw(p) for p in polygon.vertices]
    ws = [r[2] for r in raws]
    if any(w == 0 for w in ws):
        raise MapsVertexToInfinity("a vertex maps to the line at infinity")
    if not (all(w > 0 for w in ws) or all(w < 0 for w in ws)):
        raise ImageNotConvex("the line sent to infinity crosses the polygon")
    pairs = [(Fraction(r[0], r[2]), Fraction(r[1], r[2])) for r in raws]
    try:
        return validate(pairs)
    except (NotConvex, DuplicateVertex, TooFewVertices) as exc:
        raise ImageNotConvex(str(exc)) from exc


def map_line_to_infinity(line: ProjLine, polygon: Polygon) -> ProjMap2:
    """An invertible map sending the given line to the line at infinity.

    The third row is proportional to the line's coordinates, with the sign
    chosen so every polygon vertex maps to w > 0; the other two rows are the
    standard basis rows away from the line's pivot coordinate.  Requires the
    line to miss the polygon.
    """
    sides = {line.side(p) for p in polygon.vertices}
    if 0 in sides or len(sides) != 1:
        raise LineMeetsPolygon(f"line {line!r} meets the polygon")
    sign = sides.pop()
    l = tuple(sign * v for v in line.h)
    pivot = next(k for k in range(3) if l[k] != 0)
    basis_rows = [row for k, row in enumerate(((1, 0, 0), (0, 1, 0), (0, 0, 1))) if k != pivot]
    return ProjMap2((basis_rows[0], basis_rows[1], l))


def affine_through_three(src: Sequence, dst: Sequence) -> ProjMap2:
    """The unique affine map carrying three independent points to three others."""
    s = [_as_affine(p) for p in src]
    d = [_as_affine(p) for p in dst]
    if len(s) != 3 or len(d) != 3:
        raise DegenerateTriple("need exactly three source and target points")
    det_src = _orient_det(s)
    if det_src == 0:
        raise DegenerateTriple("source points are collinear")
    if _orient_det(d) == 0:
        raise DegenerateTriple("target points are collinear")
    # solve two 3x3 systems for the rows (m11 m12 m13), (m21 m22 m23)
    rows = []
    for coord in range(2):
        rows.append(_solve3(s, [d[k][coord] for k in range(3)]))
    return ProjMap2((rows[0], rows[1], (0, 0, 1)))


def _as_affine(p) -> AffinePair:
    if isinstance(p, ProjPoint):
        return p.dehomogenize()
    return (Fraction(p[0]), Fraction(p[1]))


def _orient_det(pts: Sequence[AffinePair]) -> Fraction:
    (x0, y0), (x1, y1), (x2, y2) = pts
    return (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0)


def _solve3(pts: Sequence[AffinePair], rhs: Sequence[Fraction]) -> tuple:
    """Solve sum(m1*x_k + m2*y_k + m3) = rhs_k by Cramer's rule."""
    a = [[pts[k][0], pts[k][1], Fraction(1)] for k in range(3)]
    det = det3(a[0], a[1], a[2])
    out = []
    for col in range(3):
        mod = [list(row) for row in a]
        for k in range(3):
            mod[k][col] = rhs[k]
        out.append(det3(mod[0], mod[1], mod[2]) / det)
    return tuple(out)
