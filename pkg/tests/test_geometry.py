import random
from fractions import Fraction

import pytest

from fareygaps import (EMPTY_POLYGON, HalfPlane, base_triangle, contains_point,
                       halfplane_clip, index_cell, make_polygon, perimeter,
                       polygon_area, predicted_empty, pullback, region_tuple,
                       scale_polygon, triangle_map)


def F(a, b=1):
    return Fraction(a, b)


def test_base_triangle():
    t = base_triangle()
    assert t.vertices == ((F(0), F(1)), (F(1), F(0)), (F(1), F(1)))
    assert polygon_area(t) == F(1, 2)


def test_make_polygon_canonicalises():
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    a = make_polygon(square)
    b = make_polygon(list(reversed(square)))  # clockwise input
    c = make_polygon([(0, 0), (F(1, 2), 0), (1, 0), (1, 1), (0, 1), (0, 0)])
    assert a == b == c  # orientation fixed, collinear and duplicate points gone
    assert a.vertices[0] == (F(0), F(0))
    assert polygon_area(a) == 1


def test_make_polygon_degenerate():
    assert make_polygon([(0, 0), (1, 1)]).is_empty
    assert make_polygon([(0, 0), (1, 1), (2, 2)]).is_empty
    assert polygon_area(EMPTY_POLYGON) == 0


def test_halfplane_clip():
    sq = make_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    left = halfplane_clip(sq, HalfPlane(1, 0, F(1, 2)))  # x <= 1/2
    assert polygon_area(left) == F(1, 2)
    none = halfplane_clip(sq, HalfPlane(1, 0, -1))  # x <= -1
    assert none.is_empty
    assert halfplane_clip(sq, HalfPlane(1, 0, 5)) == sq  # no-op
    assert halfplane_clip(EMPTY_POLYGON, HalfPlane(1, 0, 0)).is_empty
    with pytest.raises(ValueError):
        HalfPlane(0, 0, 1)


def test_cell_oracles():
    t1 = index_cell(1)
    assert t1.vertices == ((F(0), F(1)), (F(1, 3), F(2, 3)), (F(1), F(1)))
    assert polygon_area(t1) == F(1, 6)
    t2 = index_cell(2)
    assert t2.vertices == ((F(1, 3), F(2, 3)), (F(1, 2), F(1, 2)),
                           (F(1), F(2, 3)), (F(1), F(1)))
    assert polygon_area(t2) == F(1, 6)


@pytest.mark.parametrize("n", range(2, 13))
def test_cell_area_formula(n):
    assert polygon_area(index_cell(n)) == F(4, n * (n + 1) * (n + 2))


def test_cell_partition_identity():
    total = sum(polygon_area(index_cell(n)) for n in range(1, 31))
    assert total == F(1, 2) - F(2, 31 * 32)


def test_region_tuple_basics():
    assert region_tuple(()) == base_triangle()
    for k in (1, 2, 3, 7):
        assert polygon_area(region_tuple((k,))) == polygon_area(index_cell(k))
    assert region_tuple((1, 1)).is_empty
    assert polygon_area(region_tuple((1, 1))) == 0
    with pytest.raises(ValueError):
        region_tuple((0,))


def test_region_tuple_is_subset_of_first_cell():
    for ns in [(2, 1), (3, 2), (1, 3, 1), (2, 2, 2)]:
        reg = region_tuple(ns)
        cell = index_cell(ns[0])
        assert not reg.is_empty
        for v in reg.vertices:
            assert contains_point(cell, v)


def _interior_points(poly, count, seed):
    """Random interior points as positive rational convex combinations."""
    rng = random.Random(seed)
    verts = poly.vertices
    out = []
    for _ in range(count):
        weights = [F(rng.randint(1, 9)) for _ in verts]
        s = sum(weights)
        x = sum(w * v[0] for w, v in zip(weights, verts)) / s
        y = sum(w * v[1] for w, v in zip(weights, verts)) / s
        out.append((x, y))
    return out


@pytest.mark.parametrize("ns", [(1,), (2,), (3, 1), (2, 2), (1, 2, 2), (2, 3, 2)])
def test_orbit_follows_the_index_string(ns):
    reg = region_tuple(ns)
    assert not reg.is_empty
    for pt in _interior_points(reg, 40, seed=sum(ns)):
        cur = pt
        for expected in ns:
            assert contains_point(index_cell(expected), cur)
            n, cur = triangle_map(cur)
            assert n == expected


def test_pullback_inverts_the_map():
    target = make_polygon([(F(7, 10), F(3, 5)), (F(7, 10), F(7, 10)),
                           (F(3, 5), F(7, 10))])
    back = pullback(target, 2)
    # the linear branch maps each pulled-back vertex onto a target vertex
    for v in back.vertices:
        x, y = v
        assert (y, 2 * y - x) in target.vertices
    assert pullback(EMPTY_POLYGON, 3).is_empty


def test_pullback_preserves_area():
    for n in (1, 2, 5):
        assert polygon_area(pullback(index_cell(3), n)) == polygon_area(index_cell(3))


def test_contains_point():
    t = base_triangle()
    assert contains_point(t, (F(1, 2), F(1, 2)))  # boundary counts
    assert contains_point(t, (F(3, 4), F(3, 4)))
    assert not contains_point(t, (F(1, 4), F(1, 4)))
    assert not contains_point(EMPTY_POLYGON, (0, 0))


def test_scale_polygon():
    sq = make_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    big = scale_polygon(sq, 10)
    assert polygon_area(big) == 100
    with pytest.raises(ValueError):
        scale_polygon(sq, 0)


def test_triangle_map_needs_positive_y():
    with pytest.raises(ValueError):
        triangle_map((1, 0))


def test_guard_examples():
    assert predicted_empty((12, 5))
    assert region_tuple((12, 5)).is_empty
    assert not predicted_empty((12, 1))
    assert not region_tuple((12, 1)).is_empty
    # single-entry strings never trigger the guard
    for k in (1, 10, 100):
        assert not predicted_empty((k,))
    with pytest.raises(ValueError):
        predicted_empty(())


def test_guard_is_sound():
    # whenever the guard fires, actual clipping must confirm emptiness
    rng = random.Random(7)
    checked = 0
    for _ in range(400):
        k = rng.randint(1, 3)
        ns = tuple(rng.randint(1, 30) for _ in range(k))
        if predicted_empty(ns):
            assert region_tuple(ns).is_empty, ns
            checked += 1
    assert checked > 20  # the sweep must actually exercise the guard


def test_perimeter_decreases_along_cells():
    per = [perimeter(index_cell(n)) for n in range(2, 21)]
    assert all(p > 0 for p in per)
    assert all(a > b for a, b in zip(per, per[1:]))
    assert perimeter(EMPTY_POLYGON) == 0.0
