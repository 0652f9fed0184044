"""Limiting gap-tuple densities and their finite-order cross-checks.

The density of a gap tuple delta in the filtered sequence equals a sum
of exact region areas over the admissible families: each family
contributes 2/(p(p-1)) times the area of the index region for every
concrete index string its template admits.  Free template slots range
over an arithmetic progression, so the sum is truncated at a cutoff and
the discarded tail is bounded rigorously: cell areas telescope as
sum(4/(n(n+1)(n+2)), n > N) = 2/((N+1)(N+2)), and the area of a longer
index region never exceeds the area of any single participating cell.

At finite order Q the window count of delta equals a finite sum of
congruence-class lattice counts over the same index regions; the
identity check below evaluates both sides exactly.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .farey import _check_order, _check_prime
from .gaps import GapHistogram, empirical_density, tuple_counts
from .geometry import polygon_area, predicted_empty, region_tuple
from .lattice import BRUTE_BUDGET, CellRegion, CongruenceClass, brute_count_congruent
from .residues import MemberFamily, enumerate_families

IDENTITY_BUDGET = 200  # largest order accepted by the exact identity check

DeltaTuple = Tuple[int, ...]


@dataclass(frozen=True)
class DensityEstimate:
    """Truncated density: exact main part plus a rigorous tail bound."""

    main: Fraction
    tail_bound: Fraction
    cutoff: int

    @property
    def low(self) -> Fraction:
        return self.main

    @property
    def high(self) -> Fraction:
        return self.main + self.tail_bound


def default_cutoff(h: int) -> int:
    """Truncation point: at least the guard threshold 4(2h+1) - 6."""
    return max(50, 8 * h - 2)


def closed_form_density(p: int, k: int) -> Fraction:
    """Limiting density of the single gap (k): 1 - 2/(3p) for k = 1,
    8/(p*k*(k+1)*(k+2)) for k >= 2."""
    _check_prime(p)
    if k < 1:
        raise ValueError("gap value must be >= 1")
    if k == 1:
        return 1 - Fraction(2, 3 * p)
    return Fraction(8, p * k * (k + 1) * (k + 2))


def _family_area_sum(fam: MemberFamily, cutoff: int) -> Fraction:
    total = Fraction(0)
    for ns in fam.template.concrete(cutoff):
        if ns and predicted_empty(ns):
            continue
        total += polygon_area(region_tuple(ns))
    return total


def theoretical_density(p: int, h: int, delta, n_cut: Optional[int] = None,
                        threads: int = 1) -> DensityEstimate:
    """Limiting density of an h-tuple delta as main part + tail bound.

    The main part sums 2/(p(p-1)) * area(region) over every admissible
    family and every concrete index string up to the cutoff; the tail
    bound charges each (family, free slot) pair with the telescoped
    area remainder 2/((n_cut+1)(n_cut+2)).  The cutoff must be at least
    4(2h+1) - 6 so that the emptiness guard screens the skipped strings.
    """
    _check_prime(p)
    delta = tuple(int(d) for d in delta)
    cutoff = default_cutoff(h) if n_cut is None else int(n_cut)
    if cutoff < 4 * (2 * h + 1) - 6:
        raise ValueError(
            f"cutoff {cutoff} below the guard threshold {4 * (2 * h + 1) - 6}")
    families = enumerate_families(p, h, delta)
    if threads > 1:
        # warm the region cache concurrently; the summation below stays
        # sequential in enumeration order, so the result is unchanged
        jobs = []
        for fam in families:
            jobs.extend(tuple(ns) for ns in fam.template.concrete(cutoff)
                        if not (ns and predicted_empty(ns)))
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(region_tuple, set(jobs)))
    weight = Fraction(2, p * (p - 1))
    main = Fraction(0)
    free_slots = 0
    for fam in families:
        main += weight * _family_area_sum(fam, cutoff)
        free_slots += fam.template.n_free
    tail = free_slots * Fraction(2, (cutoff + 1) * (cutoff + 2))
    return DensityEstimate(main, tail, cutoff)


@dataclass(frozen=True)
class IdentityReport:
    """Both sides of the finite-order window-count identity."""

    q_max: int
    p: int
    h: int
    delta: DeltaTuple
    window_count: int  # direct histogram count
    lattice_count: int  # sum of congruence-class counts over index regions
    boundary_tuples: Tuple[tuple, ...]  # index strings touching 2*q_max

    @property
    def difference(self) -> int:
        return self.lattice_count - self.window_count


def identity_check(q_max: int, p: int, h: int, delta) -> IdentityReport:
    """Compare the window count of delta with its lattice-count expansion.

    The expansion enumerates the admissible families, expands free slots
    up to the largest possible index 2*q_max, and counts the coprime
    pairs of each index region lying in the family's leading congruence
    class.  Index strings containing the extreme value 2*q_max can count
    one walk that runs past the final element; such strings are reported
    so a difference of 1 can be attributed.
    """
    _check_order(q_max)
    if q_max > IDENTITY_BUDGET:
        raise ValueError(f"identity check budget is order <= {IDENTITY_BUDGET}")
    _check_prime(p)
    delta = tuple(int(d) for d in delta)
    hist = tuple_counts(q_max, p, h)
    lhs = hist.counts.get(delta, 0)
    rhs = 0
    boundary = []
    top = 2 * q_max
    for fam in enumerate_families(p, h, delta):
        cls = CongruenceClass(p, fam.pattern.alphas[0], fam.pattern.alphas[1])
        for ns in fam.template.concrete(top):
            if any(n > top for n in ns):  # pinned value beyond any real index
                continue
            cnt = brute_count_congruent(CellRegion(q_max, ns), cls)
            rhs += cnt
            if cnt and any(n == top for n in ns):
                boundary.append((fam.pattern.alphas, tuple(ns), cnt))
    return IdentityReport(q_max, p, h, delta, lhs, rhs, tuple(boundary))


@dataclass(frozen=True)
class CompareRow:
    """One gap tuple: empirical frequency next to the limiting density."""

    delta: DeltaTuple
    empirical: Fraction
    main: Fraction
    tail_bound: Fraction
    abs_difference: float
    reference_scale: float  # log(Q)^2 / Q, the proven error decay rate

    @property
    def empirical_float(self) -> float:
        return float(self.empirical)

    @property
    def main_float(self) -> float:
        return float(self.main)


def delta_grid(h: int, delta_max: int) -> List[DeltaTuple]:
    """All h-tuples with entries in 1..delta_max, lexicographic."""
    if h < 1 or delta_max < 1:
        raise ValueError("h and delta_max must be >= 1")
    out = [()]
    for _ in range(h):
        out = [t + (v,) for t in out for v in range(1, delta_max + 1)]
    return out


def compare(q_max: int, p: int, h: int, deltas: Optional[Sequence] = None,
            delta_max: int = 6, n_cut: Optional[int] = None,
            threads: int = 1) -> List[CompareRow]:
    """Empirical vs limiting densities for a batch of gap tuples."""
    if deltas is None:
        deltas = delta_grid(h, delta_max)
    hist = tuple_counts(q_max, p, h)
    scale = math.log(q_max) ** 2 / q_max if q_max > 1 else 1.0
    rows = []
    for delta in deltas:
        delta = tuple(int(d) for d in delta)
        est = theoretical_density(p, h, delta, n_cut=n_cut, threads=threads)
        emp = empirical_density(hist, delta)
        rows.append(CompareRow(delta, emp, est.main, est.tail_bound,
                               abs(float(emp) - float(est.main)), scale))
    return rows
