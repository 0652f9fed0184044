"""Exact rational geometry of the triangle map behind Farey gap statistics.

Everything lives in the closed triangle T = {(x, y) in [0,1]^2 : x+y >= 1}.
The map sends (x, y) to (y, n*y - x) with n = floor((1+x)/y); the subset
of T where the floor equals n is a convex cell, and the set of starting
points whose first K steps produce the index string (n_1, ..., n_K) is
the intersection of the first cell with pullbacks of the later ones.
Each branch inverse (u, v) -> (n*u - v, u) is linear with determinant 1,
so all regions are convex polygons with rational vertices and are
computed exactly with Fraction arithmetic (closed-boundary convention).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Tuple

Point = Tuple[Fraction, Fraction]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class HalfPlane:
    """Closed half-plane a*x + b*y <= c with rational coefficients."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))
        object.__setattr__(self, "c", _frac(self.c))
        if self.a == 0 and self.b == 0:
            raise ValueError("half-plane needs a non-zero normal")

    def side(self, pt: Point) -> Fraction:
        """Negative inside, zero on the boundary, positive outside."""
        return self.a * pt[0] + self.b * pt[1] - self.c


@dataclass(frozen=True)
class RationalPolygon:
    """Convex polygon with rational vertices in canonical form.

    Canonical means: counter-clockwise order, no repeated or collinear
    vertices, and the lexicographically smallest vertex first.  The empty
    polygon is represented by an empty vertex tuple; degenerate
    (zero-area) intersections canonicalise to empty as well.
    """

    vertices: Tuple[Point, ...] = ()

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) == 0


EMPTY_POLYGON = RationalPolygon()


def _signed_area2(pts) -> Fraction:
    """Twice the signed area (positive for counter-clockwise order)."""
    total = Fraction(0)
    n = len(pts)
    for i in range(n):
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def make_polygon(points: Iterable) -> RationalPolygon:
    """Canonicalise a cyclic vertex list (either orientation) into a polygon."""
    pts = [(_frac(x), _frac(y)) for x, y in points]
    # drop consecutive duplicates (cyclically)
    out = []
    for pt in pts:
        if not out or pt != out[-1]:
            out.append(pt)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    if len(out) < 3:
        return EMPTY_POLYGON
    if _signed_area2(out) < 0:
        out.reverse()
    # drop collinear vertices until stable
    changed = True
    while changed and len(out) >= 3:
        changed = False
        for i in range(len(out)):
            o = out[(i - 1) % len(out)]
            a = out[i]
            b = out[(i + 1) % len(out)]
            if _cross(o, a, b) == 0:
                del out[i]
                changed = True
                break
    if len(out) < 3 or _signed_area2(out) <= 0:
        return EMPTY_POLYGON
    k = min(range(len(out)), key=lambda i: out[i])
    return RationalPolygon(tuple(out[k:] + out[:k]))


def halfplane_clip(poly: RationalPolygon, hp: HalfPlane) -> RationalPolygon:
    """Intersect a polygon with a closed half-plane (exact clipping)."""
    if poly.is_empty:
        return EMPTY_POLYGON
    verts = poly.vertices
    sides = [hp.side(v) for v in verts]
    out = []
    n = len(verts)
    for i in range(n):
        j = (i + 1) % n
        vi, vj = verts[i], verts[j]
        si, sj = sides[i], sides[j]
        if si <= 0:
            out.append(vi)
        if (si < 0 < sj) or (sj < 0 < si):
            t = si / (si - sj)
            out.append((vi[0] + t * (vj[0] - vi[0]), vi[1] + t * (vj[1] - vi[1])))
    return make_polygon(out)


def polygon_area(poly: RationalPolygon) -> Fraction:
    """Exact area; 0 for the empty polygon."""
    if poly.is_empty:
        return Fraction(0)
    return _signed_area2(poly.vertices) / 2


def perimeter(poly: RationalPolygon) -> float:
    """Float perimeter (diagnostic only; areas stay exact)."""
    if poly.is_empty:
        return 0.0
    total = 0.0
    verts = poly.vertices
    for i in range(len(verts)):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % len(verts)]
        total += math.hypot(float(x2 - x1), float(y2 - y1))
    return total


def contains_point(poly: RationalPolygon, pt) -> bool:
    """Closed membership test (boundary counts as inside)."""
    if poly.is_empty:
        return False
    p = (_frac(pt[0]), _frac(pt[1]))
    verts = poly.vertices
    for i in range(len(verts)):
        if _cross(verts[i], verts[(i + 1) % len(verts)], p) < 0:
            return False
    return True


def scale_polygon(poly: RationalPolygon, s) -> RationalPolygon:
    """Dilate by a positive rational factor about the origin."""
    s = _frac(s)
    if s <= 0:
        raise ValueError("scale factor must be positive")
    return RationalPolygon(tuple((s * x, s * y) for x, y in poly.vertices))


def base_triangle() -> RationalPolygon:
    """The domain triangle with vertices (0,1), (1,0), (1,1)."""
    return make_polygon([(1, 0), (1, 1), (0, 1)])


def triangle_map(pt) -> tuple:
    """One step of the map: returns (index, image point), exact.

    The index is floor((1+x)/y); the image is (y, index*y - x).  Needs
    y > 0, which holds everywhere in the triangle except the corner (1,0).
    """
    x, y = _frac(pt[0]), _frac(pt[1])
    if y <= 0:
        raise ValueError("triangle map needs y > 0")
    n = (1 + x) // y  # Fraction floor division gives an integer
    n = int(n)
    return n, (y, n * y - x)


@lru_cache(maxsize=None)
def index_cell(n: int) -> RationalPolygon:
    """Cell of the triangle where the map index floor((1+x)/y) equals n.

    The condition n <= (1+x)/y < n+1 becomes the pair of half-planes
    -x + n*y <= 1 and x - (n+1)*y <= -1 (closed on both sides here).
    """
    if n < 1:
        raise ValueError("index must be >= 1")
    poly = base_triangle()
    poly = halfplane_clip(poly, HalfPlane(-1, n, 1))
    poly = halfplane_clip(poly, HalfPlane(1, -(n + 1), -1))
    return poly


def pullback(poly: RationalPolygon, n: int) -> RationalPolygon:
    """Preimage of a polygon under the branch with index n.

    The branch inverse (u, v) -> (n*u - v, u) is linear with determinant
    +1, so it maps polygons to polygons preserving orientation and area.
    """
    if n < 1:
        raise ValueError("index must be >= 1")
    if poly.is_empty:
        return EMPTY_POLYGON
    return make_polygon([(n * u - v, u) for u, v in poly.vertices])


@lru_cache(maxsize=None)
def region_tuple(ns: Tuple[int, ...]) -> RationalPolygon:
    """Starting points whose first len(ns) indices equal ns (closed region).

    Defined recursively: the empty string gives the whole triangle, and
    region(n1, rest) = cell(n1) intersected with the pullback of
    region(rest) along branch n1.
    """
    ns = tuple(int(n) for n in ns)
    if any(n < 1 for n in ns):
        raise ValueError("indices must be >= 1")
    if not ns:
        return base_triangle()
    inner = region_tuple(ns[1:])
    if inner.is_empty:
        return EMPTY_POLYGON
    poly = index_cell(ns[0])
    back = pullback(inner, ns[0])
    for i in range(len(back.vertices)):
        j = (i + 1) % len(back.vertices)
        vi, vj = back.vertices[i], back.vertices[j]
        # clip by each edge of the pulled-back polygon: inside is the left side
        a = vj[1] - vi[1]
        b = vi[0] - vj[0]
        c = a * vi[0] + b * vi[1]
        poly = halfplane_clip(poly, HalfPlane(a, b, c))
        if poly.is_empty:
            return EMPTY_POLYGON
    return poly


def predicted_empty(ns) -> bool:
    """Sufficient emptiness test for an index string, no clipping needed.

    A string of length K (window length R = K + 2) containing an entry
    n_r >= 4R - 6 forces an empty region unless the string matches the
    exceptional shape 2, ..., 2, 1, [n_r], 1, 2, ..., 2 around that entry
    (checked only at the positions that exist).
    """
    ns = tuple(int(n) for n in ns)
    if not ns:
        raise ValueError("index string must be non-empty")
    if any(n < 1 for n in ns):
        raise ValueError("indices must be >= 1")
    k = len(ns)
    threshold = 4 * (k + 2) - 6
    for r0, n in enumerate(ns):
        if n < threshold:
            continue
        # exceptional shape around position r0 (0-based): all earlier
        # entries 2 except the immediate predecessor 1, symmetrically after
        ok = True
        for i in range(k):
            if i == r0:
                continue
            want = 1 if abs(i - r0) == 1 else 2
            if ns[i] != want:
                ok = False
                break
        if not ok:
            return True
    return False
