"""Acceptance suite: one test per release criterion, each printing a
PASS line with its headline numbers (run with pytest -s to see them).
Tolerances are part of the criteria and must not be loosened."""
import itertools
import math
import time
from fractions import Fraction

import numpy as np

from fareygaps import (CellRegion, CongruenceClass, PolygonRegion,
                       asymptotic_main_terms, base_triangle,
                       brute_count_congruent, brute_count_coprime,
                       closed_form_density, empirical_density, enumerate_farey,
                       farey_arrays, farey_size, identity_check, index_cell,
                       moebius_count_congruent, polygon_area, region_tuple,
                       scale_polygon, size_main_term, theoretical_density,
                       tuple_counts)

MAX_ORDER = 300


def _brute_master(limit):
    """All reduced fractions with denominator <= limit, sorted exactly."""
    items = []
    for q in range(1, limit + 1):
        for a in range(q + 1):
            if math.gcd(a, q) == 1:
                items.append((Fraction(a, q), a, q))
    items.sort(key=lambda t: t[0])
    a_arr = np.array([t[1] for t in items], dtype=np.int64)
    q_arr = np.array([t[2] for t in items], dtype=np.int64)
    return a_arr, q_arr


def test_criterion_01_exact_enumeration():
    start = time.perf_counter()
    master_a, master_q = _brute_master(MAX_ORDER)
    phi_cum = np.zeros(MAX_ORDER + 1, dtype=np.int64)
    from fareygaps import totients

    phi_cum[1:] = np.cumsum(totients(MAX_ORDER)[1:])
    for q_max in range(1, MAX_ORDER + 1):
        mask = master_q <= q_max
        exp_a, exp_q = master_a[mask], master_q[mask]
        got_a, got_q = farey_arrays(q_max)
        assert np.array_equal(got_a, exp_a), f"FAIL criterion 1 at Q={q_max}"
        assert np.array_equal(got_q, exp_q), f"FAIL criterion 1 at Q={q_max}"
        det = got_q[:-1] * got_a[1:] - got_a[:-1] * got_q[1:]
        assert np.all(det == 1), f"FAIL criterion 1: determinant at Q={q_max}"
        assert got_a.shape[0] == 1 + phi_cum[q_max] == farey_size(q_max)
    # the generator itself agrees with the array walk on spot checks
    for q_max in (1, 2, 3, 17, 150, 300):
        seq = list(enumerate_farey(q_max))
        got_a, got_q = farey_arrays(q_max)
        assert [f.a for f in seq] == list(got_a)
        assert [f.q for f in seq] == list(got_q)
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"FAIL criterion 1: {elapsed:.2f}s >= 5s"
    print(f"\nPASS criterion 1: exact enumeration Q<=300, determinants, "
          f"sizes ({elapsed:.2f}s)")


def test_criterion_02_single_gap_densities_exact():
    start = time.perf_counter()
    for p in (2, 3, 5, 7, 11):
        for k in range(1, 11):
            est = theoretical_density(p, 1, (k,))
            expect = (1 - Fraction(2, 3 * p) if k == 1
                      else Fraction(8, p * k * (k + 1) * (k + 2)))
            assert est.main == expect, f"FAIL criterion 2 at p={p} k={k}"
            assert est.tail_bound == 0, f"FAIL criterion 2: tail at p={p} k={k}"
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"FAIL criterion 2: {elapsed:.2f}s >= 10s"
    print(f"PASS criterion 2: single-gap densities exact for p in "
          f"{{2,3,5,7,11}}, k<=10 ({elapsed:.2f}s)")


def test_criterion_03_p2_matches_odd_denominator_form():
    for k in range(1, 11):
        expect = Fraction(4, k * (k + 1) * (k + 2))
        assert closed_form_density(2, k) == expect, f"FAIL criterion 3 at k={k}"
        assert theoretical_density(2, 1, (k,)).main == expect
    print("PASS criterion 3: p=2 densities equal 4/(k(k+1)(k+2)) for k<=10")


def test_criterion_04_region_partition():
    total = sum(polygon_area(index_cell(n)) for n in range(1, 51))
    assert total == Fraction(1, 2) - Fraction(2, 51 * 52), "FAIL criterion 4: sum"
    assert polygon_area(index_cell(1)) == Fraction(1, 6), "FAIL criterion 4: T_1"
    assert polygon_area(region_tuple((1, 1))) == 0, "FAIL criterion 4: T_(1,1)"
    print("PASS criterion 4: cell areas telescope, first cell 1/6, (1,1) empty")


def test_criterion_05_window_count_identity():
    start = time.perf_counter()
    checked = 0
    logged = []
    for q_max in (20, 40, 60):
        for p in (2, 3):
            for h in (1, 2):
                for delta in itertools.product(range(1, 5), repeat=h):
                    rep = identity_check(q_max, p, h, delta)
                    d = rep.difference
                    assert abs(d) <= 1, (
                        f"FAIL criterion 5: |diff|={abs(d)} at "
                        f"Q={q_max} p={p} delta={delta}")
                    if d != 0:
                        assert rep.boundary_tuples, (
                            f"FAIL criterion 5: unexplained diff at "
                            f"Q={q_max} p={p} delta={delta}")
                        logged.append((q_max, p, delta, rep.boundary_tuples))
                    checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"FAIL criterion 5: {elapsed:.2f}s >= 60s"
    print(f"PASS criterion 5: window-count identity, {checked} cases, "
          f"{len(logged)} one-off boundary walks logged ({elapsed:.2f}s)")
    for q_max, p, delta, tuples in logged:
        for alphas, ns, cnt in tuples:
            print(f"  boundary walk: Q={q_max} p={p} delta={delta} "
                  f"alphas={alphas} ns={ns} count={cnt}")


def test_criterion_06_single_gap_convergence():
    start = time.perf_counter()
    max_dev = {}
    for q_max in (10**3, 10**4):
        bound = 2 * math.log(q_max) ** 2 / q_max
        for p in (2, 3, 5):
            hist = tuple_counts(q_max, p, 1)
            devs = [abs(float(empirical_density(hist, (k,)))
                        - float(closed_form_density(p, k)))
                    for k in range(1, 7)]
            if q_max == 10**4:
                assert max(devs) <= bound, (
                    f"FAIL criterion 6: dev {max(devs):.2e} > {bound:.2e} at p={p}")
            max_dev[(q_max, p)] = max(devs)
    for p in (2, 3, 5):
        assert max_dev[(10**4, p)] <= max_dev[(10**3, p)], (
            f"FAIL criterion 6: deviation grew from Q=1e3 to 1e4 at p={p}")
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"FAIL criterion 6: {elapsed:.2f}s >= 30s"
    worst = max(max_dev[(10**4, p)] for p in (2, 3, 5))
    print(f"PASS criterion 6: Q=1e4 single-gap deviations <= {worst:.2e} "
          f"(bound 1.70e-02), shrinking from Q=1e3 ({elapsed:.2f}s)")


def test_criterion_07_pair_gap_convergence():
    start = time.perf_counter()
    q_max, p = 10**4, 3
    hist = tuple_counts(q_max, p, 2)
    extra = 2 * math.log(q_max) ** 2 / q_max
    worst = 0.0
    for delta in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        est = theoretical_density(p, 2, delta, n_cut=50)
        dev = abs(float(empirical_density(hist, delta)) - float(est.main))
        tol = float(est.tail_bound) + extra
        assert dev <= tol, (
            f"FAIL criterion 7: dev {dev:.2e} > {tol:.2e} at delta={delta}")
        worst = max(worst, dev)
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0, f"FAIL criterion 7: {elapsed:.2f}s >= 120s"
    print(f"PASS criterion 7: Q=1e4 p=3 pair gaps within tail+2log^2(Q)/Q, "
          f"worst dev {worst:.2e} ({elapsed:.2f}s)")


def test_criterion_08_lattice_counts_and_size():
    q_max, p = 1000, 3
    poly = scale_polygon(base_triangle(), q_max)
    region = PolygonRegion(poly)
    terms = asymptotic_main_terms(polygon_area(poly), p)
    for a in (1, 2):
        for b in (0, 1, 2):
            cls = CongruenceClass(p, a, b)
            brute = brute_count_congruent(region, cls)
            moebius = moebius_count_congruent(region, cls)
            assert brute == moebius, (
                f"FAIL criterion 8: brute {brute} != moebius {moebius} at ({a},{b})")
            rel = abs(brute - terms.per_class) / terms.per_class
            assert rel <= 0.02, (
                f"FAIL criterion 8: class ({a},{b}) off by {rel:.3f}")
    size = farey_size(10**4, 3)
    main = size_main_term(10**4, 3)
    rel = abs(size - main) / main
    assert rel <= 0.01, f"FAIL criterion 8: size off by {rel:.4f}"
    print(f"PASS criterion 8: class counts exact vs Moebius, within 2% of "
          f"main term; filtered size within {rel:.2e} of (3/4)3Q^2/pi^2")


def test_criterion_09_emptiness_guards():
    for n1 in range(10, 21):
        for n2 in range(2, 10):
            assert region_tuple((n1, n2)).is_empty, (
                f"FAIL criterion 9: ({n1},{n2}) not empty")
    for n1 in range(2, 21):
        assert not region_tuple((n1, 1)).is_empty, (
            f"FAIL criterion 9: ({n1},1) empty")
    # (1,1) is the degenerate case already pinned empty by criterion 4
    for q_max in (5, 10):
        for n in range(2 * q_max + 1, 2 * q_max + 21):
            cell = CellRegion(q_max, (n,))
            assert brute_count_coprime(cell) == 0
            assert all(cell.row_interval(y) is None
                       for y in range(1, q_max + 1)), (
                f"FAIL criterion 9: points at Q={q_max} n={n}")
    print("PASS criterion 9: guard sweeps empty/non-empty as predicted, "
          "no points beyond the extreme index")


def test_criterion_10_mass_conservation():
    for p in (2, 3, 5):
        total = sum(closed_form_density(p, k) for k in range(1, 21))
        total += Fraction(4, p * 21 * 22)
        assert total == 1, f"FAIL criterion 10 at p={p}: {total}"
    print("PASS criterion 10: gap densities sum to 1 with the exact tail term")
