"""Gap statistics of the prime-filtered Farey sequence.

The gap value of consecutive elements f < g of the filtered sequence is
the determinant q_f * a_g - a_f * q_g.  Unfiltered neighbours always
have gap 1; dropping the multiples of p creates larger gaps.  An H-tuple
histogram counts, over every window of H+1 consecutive filtered
elements, the tuple of the H gap values inside the window.

Note on normalisation: empirical frequencies divide by the number of
elements of the filtered sequence, not by the number of windows.  The
two differ by H, which is negligible for large Q but keeps frequencies
summing to (size - H) / size rather than exactly 1.
"""
from __future__ import annotations

from collections import Counter, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, Optional, Tuple

import numpy as np

from . import _fast
from ._errors import InvariantViolation
from .farey import (FareyFraction, _as_pair, _check_order, _check_prime,
                    enumerate_farey, farey_arrays, farey_size)

DeltaTuple = Tuple[int, ...]


def delta_of_pair(f1, f2) -> int:
    """Gap value q1*a2 - a1*q2 of an increasing pair of reduced fractions."""
    a1, q1 = _as_pair(f1)
    a2, q2 = _as_pair(f2)
    if a1 * q2 >= a2 * q1:
        raise ValueError(f"{a1}/{q1} must be strictly below {a2}/{q2}")
    return q1 * a2 - a1 * q2


@dataclass
class GapHistogram:
    """Window counts of gap tuples for one (order, prime, window size)."""

    q_max: int
    p: int
    h: int
    counts: Dict[DeltaTuple, int] = field(default_factory=dict)
    population: int = 0  # size of the filtered sequence

    def windows(self) -> int:
        return max(self.population - self.h, 0)


def empirical_density(hist: GapHistogram, delta) -> Fraction:
    """count(delta) / population as an exact rational."""
    delta = tuple(int(d) for d in delta)
    if len(delta) != hist.h:
        raise ValueError(f"expected a {hist.h}-tuple, got {delta}")
    return Fraction(hist.counts.get(delta, 0), hist.population)


def delta_stream(q_max: int, p: int) -> Iterator[int]:
    """Reference generator of consecutive gap values of the filtered sequence."""
    prev = None
    for f in enumerate_farey(q_max, p):
        if prev is not None:
            yield delta_of_pair(prev, f)
        prev = f


def _delta_fill_python(q_max, p):
    """Pure-Python mirror of the compiled gap walk (denominators only)."""
    from array import array

    out = array("l")
    qa, qb = 1, q_max
    kept = 1
    while True:
        k = (q_max + qa) // qb
        if qb % p == 0:
            out.append(k)
        else:
            kept += 1
            if qa % p != 0:
                out.append(1)
        if qb == 1:
            break
        qa, qb = qb, k * qb - qa
    return np.asarray(out, dtype=np.int64), kept


def _delta_array(q_max: int, p: int) -> tuple:
    """(gap values of consecutive filtered pairs, filtered size)."""
    if _fast.HAVE_NUMBA:
        out = np.empty(farey_size(q_max), dtype=np.int64)
        kept = int(_fast.delta_fill(q_max, p, out))
        return out[: kept - 1], kept
    return _delta_fill_python(q_max, p)


def _window_counts(deltas: np.ndarray, h: int) -> Dict[DeltaTuple, int]:
    """Histogram of h-long windows of a gap-value array."""
    m = deltas.shape[0] - h + 1
    if m <= 0:
        return {}
    if h == 1:
        freq = np.bincount(deltas)
        nz = np.nonzero(freq)[0]
        return {(int(v),): int(freq[v]) for v in nz}
    # Remap the few distinct gap values to dense ids, then bincount the
    # base-D encoding of each window.  Falls back to row-wise unique when
    # the id space would be too large.
    values = np.unique(deltas)
    ndist = values.shape[0]
    if ndist ** h <= 50_000_000:
        remap = np.zeros(int(values[-1]) + 1, dtype=np.int64)
        remap[values] = np.arange(ndist, dtype=np.int64)
        ids = remap[deltas]
        enc = np.zeros(m, dtype=np.int64)
        for j in range(h):
            enc = enc * ndist + ids[j : j + m]
        freq = np.bincount(enc, minlength=ndist ** h)
        out = {}
        for e in np.nonzero(freq)[0]:
            digits = []
            x = int(e)
            for _ in range(h):
                x, r = divmod(x, ndist)
                digits.append(int(values[r]))
            out[tuple(reversed(digits))] = int(freq[e])
        return dict(sorted(out.items()))
    rows = np.lib.stride_tricks.sliding_window_view(deltas, h)
    uniq, cnt = np.unique(rows, axis=0, return_counts=True)
    return {tuple(int(v) for v in row): int(c) for row, c in zip(uniq, cnt)}


def _counts_reference(q_max, p, h, start=None, lo=None, hi=None, closed_hi=False):
    """Window counts via the element-by-element walk.

    With lo/hi set, only windows whose first element lies in [lo, hi)
    (or [lo, hi] when closed_hi) are counted, and the reported population
    covers the same value range; this is the building block for sharded
    traversals.  Fractions lo/hi are (num, den) pairs.
    """

    def _ge(f, bound):
        return f.a * bound[1] >= bound[0] * f.q

    def _lt(f, bound):
        return f.a * bound[1] < bound[0] * f.q

    def _le(f, bound):
        return f.a * bound[1] <= bound[0] * f.q

    counts = Counter()
    population = 0
    window = deque(maxlen=h + 1)
    for f in enumerate_farey(q_max, p, start=start):
        in_range = True
        if lo is not None and not _ge(f, lo):
            in_range = False
        if hi is not None:
            if closed_hi:
                if not _le(f, hi):
                    in_range = False
            elif not _lt(f, hi):
                in_range = False
        if in_range:
            population += 1
        window.append(f)
        if len(window) == h + 1:
            first = window[0]
            if hi is not None and not (_le(first, hi) if closed_hi else _lt(first, hi)):
                break
            if lo is None or _ge(first, lo):
                key = tuple(delta_of_pair(window[i], window[i + 1]) for i in range(h))
                counts[key] += 1
    return dict(counts), population


def _counts_sharded(q_max, p, h, shards, threads):
    """Merge value-partitioned sub-walks; equals the sequential result."""
    if shards > q_max:
        raise ValueError("shards must not exceed the sequence order")
    bounds = [Fraction(i, shards) for i in range(shards + 1)]

    def job(i):
        lo = (bounds[i].numerator, bounds[i].denominator)
        hi = (bounds[i + 1].numerator, bounds[i + 1].denominator)
        start = None
        if i > 0:
            # the reduced bound itself is a member (denominator <= shards)
            start = FareyFraction(bounds[i].numerator, bounds[i].denominator)
        return _counts_reference(q_max, p, h, start=start, lo=lo, hi=hi,
                                 closed_hi=(i == shards - 1))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(job, range(shards)))
    else:
        parts = [job(i) for i in range(shards)]
    counts = Counter()
    population = 0
    for c, n in parts:
        counts.update(c)
        population += n
    return dict(counts), population


def tuple_counts(q_max: int, p: int, h: int, engine: str = "auto",
                 shards: int = 1, threads: int = 1) -> GapHistogram:
    """Histogram of gap h-tuples over the filtered sequence of order q_max.

    engine "auto" uses the streaming denominator walk (compiled when
    numba is present); "reference" forces the element-by-element
    generator, useful as an independent check at small orders.  With
    shards > 1 the traversal is split at the values i/shards and merged,
    which must (and is tested to) reproduce the sequential histogram.
    """
    _check_order(q_max)
    _check_prime(p)
    if h < 1:
        raise ValueError("window size h must be >= 1")
    if engine not in ("auto", "reference"):
        raise ValueError(f"unknown engine {engine!r}")
    if shards < 1:
        raise ValueError("shards must be >= 1")
    if shards > 1:
        counts, population = _counts_sharded(q_max, p, h, shards, threads)
    elif engine == "reference":
        counts, population = _counts_reference(q_max, p, h)
    else:
        deltas, population = _delta_array(q_max, p)
        counts = _window_counts(deltas, h)
    hist = GapHistogram(q_max, p, h, dict(sorted(counts.items())), population)
    if sum(hist.counts.values()) != hist.windows():
        raise InvariantViolation("window counts do not sum to population - h")
    return hist


def triple_index_counts(q_max: int, n: int) -> int:
    """Number of consecutive triples of the unfiltered sequence with index n.

    The index of a triple (f1, f2, f3) is the coefficient in
    f3 = index * f2 - f1, equal to the determinant q1*a3 - a1*q3.
    """
    _check_order(q_max)
    if n < 1:
        raise ValueError("index must be >= 1")
    a, q = farey_arrays(q_max)
    if a.shape[0] < 3:
        return 0
    idx = q[:-2] * a[2:] - a[:-2] * q[2:]
    return int(np.count_nonzero(idx == n))
