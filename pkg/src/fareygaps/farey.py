"""Enumeration of Farey fractions and their prime-filtered subsets.

The Farey sequence of order Q is the sorted list of reduced fractions
a/q with 0 <= a <= q <= Q.  It is walked left to right with the classical
three-term recurrence: if a1/q1 < a2/q2 are neighbours of order Q, the
next fraction is (k*a2 - a1) / (k*q2 - q1) where k = (Q + q1) // q2.
Neighbours always satisfy the determinant identity q1*a2 - a1*q2 = 1.

Filtering by a prime p keeps only the fractions whose denominator is not
divisible by p.  The filter is applied after the walk, so consecutive
elements of the filtered sequence need not be neighbours of order Q.

Enumeration can be restarted from any member fraction: the left
neighbour of a reduced a/q is recovered with the extended Euclidean
algorithm, which makes sharded (parallel) traversals possible.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional

import numpy as np

from . import _fast
from ._errors import InvariantViolation


class FareyFraction(NamedTuple):
    """A reduced fraction a/q, ordered by value via cross multiplication."""

    a: int
    q: int

    def __lt__(self, other):
        oa, oq = other
        return self.a * oq < oa * self.q

    def __le__(self, other):
        oa, oq = other
        return self.a * oq <= oa * self.q

    def __gt__(self, other):
        oa, oq = other
        return self.a * oq > oa * self.q

    def __ge__(self, other):
        oa, oq = other
        return self.a * oq >= oa * self.q

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.q)

    def __str__(self):
        return f"{self.a}/{self.q}"


def is_prime(n: int) -> bool:
    """Primality by trial division; adequate for the moduli used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_prime(p) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be prime, got {p!r}")
    return p


def _check_order(q_max) -> int:
    if not isinstance(q_max, int) or q_max < 1:
        raise ValueError(f"sequence order must be a positive integer, got {q_max!r}")
    return q_max


def _as_pair(f) -> tuple:
    """Normalise a FareyFraction / (a, q) pair / Fraction to an (a, q) tuple."""
    if isinstance(f, Fraction):
        return f.numerator, f.denominator
    a, q = f
    return int(a), int(q)


def _check_member(q_max: int, f) -> FareyFraction:
    """Validate that f is a reduced fraction in [0, 1] with denominator <= q_max."""
    a, q = _as_pair(f)
    if q < 1 or not (0 <= a <= q) or math.gcd(a, q) != 1:
        raise ValueError(f"{a}/{q} is not a reduced fraction in [0, 1]")
    if q > q_max:
        raise ValueError(f"{a}/{q} has denominator above the order {q_max}")
    return FareyFraction(a, q)


def are_neighbors(f1, f2) -> bool:
    """True when q1*a2 - a1*q2 == 1, the determinant of adjacent fractions."""
    a1, q1 = _as_pair(f1)
    a2, q2 = _as_pair(f2)
    return q1 * a2 - a1 * q2 == 1


def next_pair(q_max: int, f1, f2) -> FareyFraction:
    """Successor of the neighbouring pair f1 < f2 in the sequence of order q_max.

    Raises ValueError when the pair is not adjacent or f2 is the final 1/1.
    """
    _check_order(q_max)
    a1, q1 = _as_pair(f1)
    a2, q2 = _as_pair(f2)
    if max(q1, q2) > q_max:
        raise ValueError("denominator above the sequence order")
    if q1 * a2 - a1 * q2 != 1:
        raise ValueError(f"{a1}/{q1} and {a2}/{q2} are not adjacent (determinant != 1)")
    if a2 == q2 == 1:
        raise ValueError("1/1 has no successor")
    k = (q_max + q1) // q2
    return FareyFraction(k * a2 - a1, k * q2 - q1)


def _ext_gcd(a: int, b: int) -> tuple:
    """Return (g, x, y) with a*x + b*y == g == gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_x, x = x, old_x - qq * x
        old_y, y = y, old_y - qq * y
    return old_r, old_x, old_y


def successor(q_max: int, f) -> FareyFraction:
    """Element immediately after f in the (unfiltered) sequence of order q_max.

    Solves q*a2 - a*q2 = 1 for the right neighbour with the largest
    admissible denominator, which is exactly the successor.
    """
    _check_order(q_max)
    a, q = _check_member(q_max, f)
    if a == q == 1:
        raise ValueError("1/1 has no successor")
    g, x, y = _ext_gcd(q, a)  # q*x + a*y == 1
    u, v = x, -y  # q*u - a*v == 1; successor is (u + t*a) / (v + t*q)
    t = (q_max - v) // q
    out = FareyFraction(u + t * a, v + t * q)
    if not (q_max - q < out.q <= q_max):
        raise InvariantViolation(f"successor of {a}/{q} landed outside ({q_max - q}, {q_max}]")
    return out


def predecessor(q_max: int, f) -> FareyFraction:
    """Element immediately before f in the (unfiltered) sequence of order q_max."""
    _check_order(q_max)
    a, q = _check_member(q_max, f)
    if a == 0:
        raise ValueError("0/1 has no predecessor")
    g, x, y = _ext_gcd(a, q)  # a*x + q*y == 1
    # predecessor is (-y + t*a)/(x + t*q): the left neighbour q1*a - a1*q == 1
    # with the largest denominator not exceeding q_max
    t = (q_max - x) // q
    out = FareyFraction(-y + t * a, x + t * q)
    if not (q_max - q < out.q <= q_max):
        raise InvariantViolation(f"predecessor of {a}/{q} landed outside ({q_max - q}, {q_max}]")
    return out


def enumerate_farey(q_max: int, p: Optional[int] = None,
                    start=None) -> Iterator[FareyFraction]:
    """Yield the sequence of order q_max in increasing order, 0/1 through 1/1.

    With p given (a prime), fractions whose denominator p divides are
    skipped.  With start given (a member of the unfiltered sequence),
    iteration begins at start instead of 0/1; the left neighbour needed to
    seed the recurrence is reconstructed, so a traversal can resume from
    any saved position.
    """
    _check_order(q_max)
    if p is not None:
        _check_prime(p)
    if start is None:
        a1, q1, a2, q2 = 0, 1, 1, q_max
    else:
        cur = _check_member(q_max, start)
        if cur.a == cur.q == 1:
            a1, q1, a2, q2 = 1, 1, 0, 0
        elif cur == (0, 1):
            a1, q1, a2, q2 = 0, 1, 1, q_max
        else:
            nxt = successor(q_max, cur)
            a1, q1, a2, q2 = cur.a, cur.q, nxt.a, nxt.q
    while True:
        if p is None or q1 % p != 0:
            yield FareyFraction(a1, q1)
        if a1 == 1 and q1 == 1:
            return
        if a2 == 1 and q2 == 1:
            a1, q1 = 1, 1
            continue
        k = (q_max + q1) // q2
        a1, q1, a2, q2 = a2, q2, k * a2 - a1, k * q2 - q1


def totients(limit: int) -> np.ndarray:
    """Euler phi for 0..limit as an int64 array (standard sieve)."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    phi = np.arange(limit + 1, dtype=np.int64)
    for i in range(2, limit + 1):
        if phi[i] == i:  # i is prime
            phi[i::i] -= phi[i::i] // i
    return phi


def farey_size(q_max: int, p: Optional[int] = None) -> int:
    """Exact number of elements of the sequence of order q_max.

    Unfiltered this is 1 + sum(phi(q), q=1..q_max).  With the prime
    filter the totients of the multiples of p are excluded; 0/1 and 1/1
    always survive because their denominator is 1.
    """
    _check_order(q_max)
    phi = totients(q_max)
    total = 1 + int(phi[1:].sum())
    if p is None:
        return total
    _check_prime(p)
    return total - int(phi[p::p].sum())


def size_main_term(q_max: int, p: int) -> float:
    """Leading asymptotic (p/(p+1)) * 3*q_max^2 / pi^2 of the filtered size."""
    _check_prime(p)
    if q_max < 0:
        raise ValueError("order must be non-negative")
    return (p / (p + 1)) * 3.0 * q_max * q_max / math.pi ** 2


def farey_arrays(q_max: int) -> tuple:
    """Numerators and denominators of the full sequence as int64 arrays."""
    _check_order(q_max)
    n = farey_size(q_max)
    a_out = np.empty(n, dtype=np.int64)
    q_out = np.empty(n, dtype=np.int64)
    if _fast.HAVE_NUMBA:
        m = _fast.pair_fill(q_max, a_out, q_out)
    else:
        m = 0
        for f in enumerate_farey(q_max):
            a_out[m] = f.a
            q_out[m] = f.q
            m += 1
    if m != n:
        raise InvariantViolation(f"walked {m} fractions, sieve predicted {n}")
    return a_out, q_out
