"""Compiled kernels for the sequence walk (optional numba acceleration).

Only denominators matter for gap values, so the streaming kernels track
the pair (q1, q2) and never materialise numerators unless asked.  When
numba is unavailable the callers in gaps.py / farey.py fall back to the
pure-Python walk; results are identical and tested to be so.
"""
from __future__ import annotations

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None
    HAVE_NUMBA = False


def _delta_fill_impl(q_max, p, out):
    """Write the gap value of each consecutive filtered pair into out.

    Walks the full sequence of order q_max tracking denominators only.
    A kept element following a kept element contributes gap 1; a dropped
    element (p divides its denominator) bridges its kept neighbours with
    gap k, the walk coefficient at the dropped step.  Returns the number
    of kept elements; out[0 : kept-1] is filled.
    """
    qa = 1  # denominator of the previous element (starts at 0/1)
    qb = q_max  # denominator of the current element (starts at 1/q_max)
    kept = 1
    m = 0
    while True:
        k = (q_max + qa) // qb
        if qb % p == 0:
            # dropped: its two kept neighbours span a gap equal to k
            out[m] = k
            m += 1
        else:
            kept += 1
            if qa % p != 0:
                out[m] = 1
                m += 1
        if qb == 1:
            return kept
        qa, qb = qb, k * qb - qa


def _pair_fill_impl(q_max, a_out, q_out):
    """Write the full sequence of order q_max; returns the element count."""
    a1 = 0
    q1 = 1
    a2 = 1
    q2 = q_max
    a_out[0] = 0
    q_out[0] = 1
    m = 1
    while True:
        a_out[m] = a2
        q_out[m] = q2
        m += 1
        if a2 == 1 and q2 == 1:
            return m
        k = (q_max + q1) // q2
        a1, q1, a2, q2 = a2, q2, k * a2 - a1, k * q2 - q1


if HAVE_NUMBA:
    delta_fill = njit(cache=True)(_delta_fill_impl)
    pair_fill = njit(cache=True)(_pair_fill_impl)
else:  # pragma: no cover
    delta_fill = _delta_fill_impl
    pair_fill = _pair_fill_impl
