"""Lattice-point counts over regions, by brute force and by Moebius sums.

Two region flavours share a common row-interval protocol:

* PolygonRegion wraps a closed rational polygon (any region built by the
  geometry module, typically scaled by the order Q);
* CellRegion is the half-open set of integer pairs (x, y) that occur as
  consecutive denominators of the order-Q sequence and whose walk
  produces a prescribed index string.  Membership is x, y in [1, Q],
  x + y >= Q + 1, and d_(j+2) = n_j * d_(j+1) - d_j staying a valid
  denominator walk (d_(j+2) <= Q < d_(j+1) + d_(j+2)) for every index.

Counts are over coprime pairs, optionally restricted to a congruence
class (x, y) == (a, b) mod p with a non-zero.  The Moebius evaluation
sums mu(d) over d coprime to p of the points of the joint class mod p*d,
and must agree exactly with brute force.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np

from .farey import _check_order, _check_prime
from .geometry import RationalPolygon

BRUTE_BUDGET = 10_000  # largest coordinate bound accepted by the counters


def _ceil_div(a: int, b: int) -> int:
    """ceil(a / b) for positive b."""
    return -((-a) // b)


def _tighten_le(lo, hi, a, b):
    """Intersect [lo, hi] with the integer solutions of a*x <= b."""
    if a > 0:
        hi = min(hi, b // a)
    elif a < 0:
        lo = max(lo, -(b // (-a)))
    elif b < 0:
        return 1, 0
    return lo, hi


def _tighten_ge(lo, hi, a, b):
    """Intersect [lo, hi] with the integer solutions of a*x >= b."""
    if a > 0:
        lo = max(lo, _ceil_div(b, a))
    elif a < 0:
        hi = min(hi, b // a)
    elif b > 0:
        return 1, 0
    return lo, hi


class CellRegion:
    """Consecutive-denominator pairs of order q_max with a fixed index string."""

    def __init__(self, q_max: int, ns=()):
        _check_order(q_max)
        self.q_max = q_max
        self.ns = tuple(int(n) for n in ns)
        if any(n < 1 for n in self.ns):
            raise ValueError("indices must be >= 1")
        self.bound = q_max
        self.y_range = (1, q_max)

    def row_interval(self, y: int) -> Optional[Tuple[int, int]]:
        """Integer x-interval of the row, or None when the row is empty.

        The denominator walk is linear in x for fixed y, so each floor
        condition tightens the interval by an exact integer division.
        """
        q = self.q_max
        if not 1 <= y <= q:
            return None
        lo, hi = max(1, q + 1 - y), q
        a1, b1 = 1, 0  # d_1 = x
        a2, b2 = 0, y  # d_2 = y
        for n in self.ns:
            a3, b3 = n * a2 - a1, n * b2 - b1
            lo, hi = _tighten_le(lo, hi, a3, q - b3)
            if lo > hi:
                return None
            lo, hi = _tighten_ge(lo, hi, a2 + a3, q + 1 - b2 - b3)
            if lo > hi:
                return None
            a1, b1, a2, b2 = a2, b2, a3, b3
        return lo, hi

    def contains(self, x: int, y: int) -> bool:
        """Direct membership via the walk itself (cross-check for tests)."""
        q = self.q_max
        if not (1 <= x <= q and 1 <= y <= q and x + y >= q + 1):
            return False
        d1, d2 = x, y
        for n in self.ns:
            if (q + d1) // d2 != n:
                return False
            d1, d2 = d2, n * d2 - d1
            if d2 < 1:
                return False
        return True


class PolygonRegion:
    """Closed polygon adapted to the row-interval counting protocol."""

    def __init__(self, poly: RationalPolygon):
        self.polygon = poly
        if poly.is_empty:
            self.bound = 0
            self.y_range = (1, 0)
            return
        xs = [v[0] for v in poly.vertices]
        ys = [v[1] for v in poly.vertices]
        if min(xs) < 0 or min(ys) < 0:
            raise ValueError("region must lie in the first quadrant")
        self.bound = int(math.ceil(max(max(xs), max(ys))))
        self.y_range = (int(math.ceil(min(ys))), int(math.floor(max(ys))))

    def row_interval(self, y: int) -> Optional[Tuple[int, int]]:
        poly = self.polygon
        if poly.is_empty:
            return None
        xs = []
        verts = poly.vertices
        n = len(verts)
        for i in range(n):
            (x1, y1), (x2, y2) = verts[i], verts[(i + 1) % n]
            if y1 == y2:
                if y1 == y:
                    xs.append(x1)
                    xs.append(x2)
            elif min(y1, y2) <= y <= max(y1, y2):
                t = (y - y1) / (y2 - y1)
                xs.append(x1 + t * (x2 - x1))
            # convexity: the row meets the boundary in at most one segment
        if not xs:
            return None
        lo, hi = int(math.ceil(min(xs))), int(math.floor(max(xs)))
        if lo > hi:
            return None
        return lo, hi


def as_region(obj):
    if isinstance(obj, RationalPolygon):
        return PolygonRegion(obj)
    if hasattr(obj, "row_interval") and hasattr(obj, "bound"):
        return obj
    raise ValueError(f"not a region: {obj!r}")


@dataclass(frozen=True)
class CongruenceClass:
    """Class (x, y) == (a, b) mod p with a != 0 (first coordinate kept)."""

    p: int
    a: int
    b: int

    def __post_init__(self):
        _check_prime(self.p)
        if not 1 <= self.a <= self.p - 1:
            raise ValueError("first residue must be non-zero mod p")
        if not 0 <= self.b <= self.p - 1:
            raise ValueError("second residue must lie in 0..p-1")


def _check_budget(region):
    if region.bound > BRUTE_BUDGET:
        raise ValueError(
            f"region bound {region.bound} exceeds the counting budget {BRUTE_BUDGET}")
    return region


def brute_count_congruent(region, cls: CongruenceClass) -> int:
    """Coprime pairs of the region in the congruence class, by scanning rows."""
    region = _check_budget(as_region(region))
    p, a, b = cls.p, cls.a, cls.b
    y0, y1 = region.y_range
    total = 0
    y = y0 + ((b - y0) % p)
    while y <= y1:
        iv = region.row_interval(y)
        if iv is not None:
            lo, hi = iv
            x = lo + ((a - lo) % p)
            while x <= hi:
                if math.gcd(x, y) == 1:
                    total += 1
                x += p
        y += p
    return total


def brute_count_coprime(region) -> int:
    """All coprime pairs of the region."""
    region = _check_budget(as_region(region))
    y0, y1 = region.y_range
    total = 0
    for y in range(y0, y1 + 1):
        iv = region.row_interval(y)
        if iv is None:
            continue
        lo, hi = iv
        for x in range(lo, hi + 1):
            if math.gcd(x, y) == 1:
                total += 1
    return total


def brute_count_p(region, p: int) -> int:
    """Coprime pairs whose first coordinate p does not divide."""
    _check_prime(p)
    region = _check_budget(as_region(region))
    y0, y1 = region.y_range
    total = 0
    for y in range(y0, y1 + 1):
        iv = region.row_interval(y)
        if iv is None:
            continue
        lo, hi = iv
        for x in range(lo, hi + 1):
            if x % p != 0 and math.gcd(x, y) == 1:
                total += 1
    return total


def mobius_sieve(limit: int) -> np.ndarray:
    """Moebius mu for 0..limit (int64 array)."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    mu = np.ones(limit + 1, dtype=np.int64)
    if limit >= 0:
        mu[0] = 0
    is_comp = np.zeros(limit + 1, dtype=bool)
    for i in range(2, limit + 1):
        if not is_comp[i]:
            mu[i::i] *= -1
            sq = i * i
            if sq <= limit:
                mu[sq::sq] = 0
            is_comp[i * 2::i] = True
    return mu


def _class_count(region, m: int, a: int, b: int) -> int:
    """Lattice points of the region with (x, y) == (a, b) mod m (no gcd)."""
    y0, y1 = region.y_range
    total = 0
    y = y0 + ((b - y0) % m)
    while y <= y1:
        iv = region.row_interval(y)
        if iv is not None:
            lo, hi = iv
            first = lo + ((a - lo) % m)
            if first <= hi:
                total += (hi - first) // m + 1
        y += m
    return total


def moebius_count_congruent(region, cls: CongruenceClass) -> int:
    """Same count as brute_count_congruent via the Moebius identity.

    Coprimality is sieved with sum over mu(d): the class (a, b) mod p
    joined with (0, 0) mod d is a single class mod p*d because d runs
    over integers coprime to p (x == a != 0 mod p blocks p | d anyway).
    """
    region = _check_budget(as_region(region))
    p, a, b = cls.p, cls.a, cls.b
    bound = region.bound
    mu = mobius_sieve(bound)
    total = 0
    for d in range(1, bound + 1):
        if d % p == 0 or mu[d] == 0:
            continue
        inv = pow(d, -1, p)
        a2 = d * ((a * inv) % p)
        b2 = d * ((b * inv) % p)
        total += int(mu[d]) * _class_count(region, p * d, a2, b2)
    return total


class MainTerms(NamedTuple):
    coprime: float  # all coprime pairs
    drop_p: float  # coprime pairs, first coordinate not divisible by p
    per_class: float  # coprime pairs in one congruence class (a, b), a != 0


def asymptotic_main_terms(area, p: int) -> MainTerms:
    """Leading terms of the three counts for a region of the given area.

    Coprime pairs have density 6/pi^2; restricting the first coordinate
    away from the multiples of p keeps a fraction p/(p+1) of them, and
    each of the p(p-1) congruence classes receives an equal share
    1/(p^2-1) of the coprime total.
    """
    _check_prime(p)
    area = float(area)
    if area < 0:
        raise ValueError("area must be non-negative")
    coprime = 6.0 * area / math.pi ** 2
    return MainTerms(coprime, coprime * p / (p + 1.0), coprime / (p * p - 1.0))
