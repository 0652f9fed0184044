from fractions import Fraction

import pytest

from fareygaps import (closed_form_density, compare, default_cutoff, delta_grid,
                       empirical_density, identity_check, theoretical_density,
                       tuple_counts)


def test_closed_form_oracles():
    assert closed_form_density(3, 1) == Fraction(7, 9)
    assert closed_form_density(2, 1) == Fraction(2, 3)
    assert closed_form_density(2, 3) == Fraction(1, 15)
    assert closed_form_density(5, 2) == Fraction(1, 15)
    with pytest.raises(ValueError):
        closed_form_density(3, 0)
    with pytest.raises(ValueError):
        closed_form_density(9, 1)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_family_sum_equals_closed_form(p):
    for k in range(1, 9):
        est = theoretical_density(p, 1, (k,))
        assert est.main == closed_form_density(p, k)
        assert est.tail_bound == 0  # single-gap families have no free slot


def test_density_examples():
    assert theoretical_density(3, 1, (1,)).main == Fraction(7, 9)
    assert theoretical_density(2, 1, (2,)).main == Fraction(1, 6)
    assert theoretical_density(3, 1, (5,)).main == Fraction(4, 315)


def test_tail_bound_shape():
    est = theoretical_density(3, 2, (1, 1), n_cut=50)
    # each of the 18 families (8 all-kept + 4 + 4 + 2 with a dropped spot)
    # carries exactly one free slot
    assert est.tail_bound == 18 * Fraction(2, 51 * 52)
    assert est.cutoff == 50


def test_truncation_is_monotone_and_bounded():
    lo = theoretical_density(3, 2, (1, 1), n_cut=50)
    hi = theoretical_density(3, 2, (1, 1), n_cut=90)
    assert hi.main >= lo.main  # more terms, larger main part
    assert hi.main <= lo.main + lo.tail_bound  # tail bound really covers them


def test_cutoff_validation():
    with pytest.raises(ValueError):
        theoretical_density(3, 2, (1, 1), n_cut=5)  # below guard threshold
    assert default_cutoff(1) == 50
    assert default_cutoff(6) == 50
    assert default_cutoff(7) == 54


def test_threads_do_not_change_the_result():
    a = theoretical_density(3, 2, (2, 1), threads=1)
    b = theoretical_density(3, 2, (2, 1), threads=4)
    assert a == b


@pytest.mark.parametrize("p", [2, 3, 5])
def test_mass_conservation(p):
    total = sum(closed_form_density(p, k) for k in range(1, 21))
    assert total + Fraction(4, p * 21 * 22) == 1


def test_identity_check_oracles():
    rep = identity_check(4, 3, 1, (2,))
    assert rep.window_count == 2
    assert rep.lattice_count == 2
    assert rep.difference == 0

    rep = identity_check(5, 2, 1, (5,))
    assert rep.window_count == 1 and rep.lattice_count == 1

    rep = identity_check(1, 3, 1, (1,))
    assert rep.window_count == 1 and rep.lattice_count == 1


def test_identity_boundary_logging():
    # the one-off walk through the final pair shows up at delta (1,1) and
    # is pinned to an index string containing the extreme value 2*Q
    rep = identity_check(20, 3, 2, (1, 1))
    assert rep.difference == 1
    assert rep.boundary_tuples
    assert all(2 * 20 in ns for _, ns, _ in rep.boundary_tuples)


def test_identity_budget():
    with pytest.raises(ValueError):
        identity_check(300, 3, 1, (1,))


def test_delta_grid():
    assert delta_grid(1, 3) == [(1,), (2,), (3,)]
    assert delta_grid(2, 2) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    with pytest.raises(ValueError):
        delta_grid(0, 3)


def test_compare_rows():
    rows = compare(200, 3, 1, delta_max=4)
    hist = tuple_counts(200, 3, 1)
    assert [r.delta for r in rows] == [(1,), (2,), (3,), (4,)]
    for r in rows:
        assert r.empirical == empirical_density(hist, r.delta)
        assert r.main == closed_form_density(3, r.delta[0])
        assert r.abs_difference == abs(float(r.empirical) - float(r.main))
        assert r.reference_scale > 0
        # at order 200 each single gap is already close to its limit
        assert r.abs_difference < 2e-3


def test_observed_reversal_symmetry_is_reported_not_assumed():
    # reversed tuples happen to share their limit here; compare() must
    # simply report both rows rather than collapsing them
    rows = compare(100, 3, 2, delta_max=2, n_cut=50)
    by_delta = {r.delta: r for r in rows}
    assert set(by_delta) == {(1, 1), (1, 2), (2, 1), (2, 2)}
    assert by_delta[(1, 2)].main == by_delta[(2, 1)].main
