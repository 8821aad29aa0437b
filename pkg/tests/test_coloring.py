import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from clustercodes.coloring import (
    Coloring,
    ColoringSet,
    box_coloring_even,
    box_coloring_odd,
    certify,
    check_p1,
    check_p2,
    check_p3,
    default_window,
    determinant,
    even_box_matrix,
    lee_colorings,
    lee_radius1_colorings,
    radius1_matrix,
    residue_maps,
    solve_position,
    transformed_box_colorings,
)
from clustercodes.errors import NonIntegral, OutOfArray
from clustercodes.lee import lee_sphere_offsets
from clustercodes.shapes import ShapeSpec


def sphere_colors(cs, s, window):
    """Sorted colors of coloring s at every whole Lee-sphere placement in the window."""
    arr = cs.arrays(window)[s]
    R = cs.shape.R
    offs = np.array(sorted(lee_sphere_offsets(2, R)))
    centers = np.array(list(itertools.product(range(R, window[0] - R), range(R, window[1] - R))))
    pts = centers[:, None, :] + offs[None, :, :]
    return np.sort(arr[pts[..., 0], pts[..., 1]], axis=1)


def test_odd_box_first_coloring():
    cs = box_coloring_odd((3, 3))
    c = cs.colorings[0]
    for i1, i2 in itertools.product(range(9), repeat=2):
        assert c.color((i1, i2)) == 3 * i1 + (i2 % 3)


def test_odd_box_same_first_color_pairs():
    cs = box_coloring_odd((3, 3))
    c1, c2 = cs.colorings
    for i1, i2 in itertools.product(range(6), repeat=2):
        assert c1.color((i1, i2)) == c1.color((i1, i2 + 3))
        assert abs(c2.color((i1, i2 + 3)) - c2.color((i1, i2))) == 9


def test_odd_box_one_dimensional_is_identity():
    cs = box_coloring_odd((5,))
    assert [cs.colorings[0].color((i,)) for i in range(12)] == list(range(12))


def test_odd_box_rejects_even_volume():
    with pytest.raises(ValueError):
        box_coloring_odd((2, 3))


@pytest.mark.parametrize("b", [(3, 3), (1, 5), (3, 5), (5, 5), (3, 3, 3), (1, 3, 5), (5, 3, 1)])
def test_odd_box_properties(b):
    cs = box_coloring_odd(b)
    w = default_window(cs)
    p1 = check_p1(cs, w)
    assert p1.passed and max(p1.detail["span"]) == cs.volume - 1
    assert check_p2(cs, w).passed
    p3 = check_p3(cs, w)
    assert p3.passed and set(p3.detail["modulus"]) <= {cs.volume}


def test_even_box_matrix_examples():
    assert even_box_matrix((2, 2)) == [[1, 2], [-2, 1]]
    for b1, b2 in itertools.product(range(1, 5), repeat=2):
        A = even_box_matrix((b1, b2))
        assert A == [[1, b1], [-b2, 1]]
        assert determinant(A) == 1 + b1 * b2
    assert determinant(even_box_matrix((2, 2, 2))) == 81


def _even_boxes():
    out = []
    for D in (1, 2, 3):
        for b in itertools.product(range(1, 5), repeat=D):
            if D == 3 and sum(b) > 8:
                continue
            out.append(b)
    return out


@pytest.mark.parametrize("b", _even_boxes())
def test_even_box_properties(b):
    cs = box_coloring_even(b)
    side = sum(b) + 4
    w = (side,) * len(b)
    B = cs.volume
    p1 = check_p1(cs, w)
    assert p1.passed and max(p1.detail["span"]) <= B - 1
    p2 = check_p2(cs, w)
    assert p2.passed and abs(p2.detail["det"]) == (1 + B) ** (len(b) - 1)
    p3 = check_p3(cs, w)
    assert p3.passed and set(p3.detail["modulus"]) <= {B + 1}


def test_corrupted_coloring_fails_p1():
    bad = ColoringSet(
        "box_even",
        ShapeSpec.box(2, 2),
        4,
        (Coloring("linear", coeffs=(1, 1)), Coloring("linear", coeffs=(-2, 1))),
        (0, 1),
    )
    assert not check_p1(bad, (8, 8)).passed


def test_singular_matrix_fails_p2():
    bad = ColoringSet(
        "box_even",
        ShapeSpec.box(2, 2),
        4,
        (Coloring("linear", coeffs=(1, 2)), Coloring("linear", coeffs=(2, 4))),
        (0, 1),
    )
    rep = check_p2(bad, (8, 8))
    assert not rep.passed and rep.detail["det"] == 0


def test_lee_coloring_r2():
    cs = lee_colorings(2)
    assert cs.volume == 13
    assert cs.colorings[0].coeffs == (3, 2)
    assert cs.colorings[0].color((0, 0)) == 0
    assert determinant(cs.A) == 13


@pytest.mark.parametrize("R", [1, 2, 3])
def test_lee_spheres_get_consecutive_colors(R):
    cs = lee_colorings(R)
    bstar = 2 * R * R + 2 * R + 1
    w = (4 * R + 10, 4 * R + 10)
    for s in range(2):
        vals = sphere_colors(cs, s, w)
        assert (np.diff(vals, axis=1) == 1).all()
        assert (vals[:, -1] - vals[:, 0] == bstar - 1).all()
    p3 = check_p3(cs, w)
    assert p3.passed and p3.detail["observed_gcd"][0] % bstar == 0


def test_lee_coloring_r1_p1_span():
    rep = check_p1(lee_colorings(1), (9, 9))
    assert rep.passed and rep.detail["span"] == [4, 4]


def test_radius1_matrix_d3():
    assert radius1_matrix(3) == [[1, 2, 3], [3, 1, 2], [2, 3, 1]]
    assert determinant(radius1_matrix(3)) == 18
    cs = lee_radius1_colorings(3)
    assert check_p2(cs, (6, 6, 6)).passed


@pytest.mark.parametrize("D", [2, 3, 4])
def test_radius1_spheres_consecutive_and_flags(D):
    cs = lee_radius1_colorings(D, window=6 if D < 4 else 5)
    w = (5,) * D
    arrs = cs.arrays(w)
    offs = np.array(sorted(lee_sphere_offsets(D, 1)))
    centers = np.array(list(itertools.product(range(1, 4), repeat=D)))
    pts = centers[:, None, :] + offs[None, :, :]
    for arr in arrs:
        vals = np.sort(arr[tuple(pts.transpose(2, 0, 1))], axis=1)
        assert (np.diff(vals, axis=1) == 1).all()
    p3 = check_p3(cs, (6,) * D)
    assert cs.needs_corrector[0] is False
    assert list(cs.needs_corrector[1:]) == [not ok for ok in p3.detail["per_s"]]


def test_radius1_p3_fails_somewhere():
    # property p3 is not guaranteed for these colorings; at least one dimension shows it
    assert any(any(lee_radius1_colorings(D).needs_corrector) for D in (2, 3, 4))


def test_transform_colorings_cover_lee_spheres():
    cs = transformed_box_colorings(2, 1)
    assert cs.volume == 6
    w = default_window(cs)
    assert check_p1(cs, w).passed and check_p2(cs, w).passed


def test_solve_position_examples():
    assert solve_position([[1, 0], [0, 1]], (4, 7)) == (4, 7)
    A = [[1, 2], [-2, 1]]
    assert solve_position(A, (3 + 2, -6 + 1)) == (3, 1)
    with pytest.raises(NonIntegral):
        solve_position(A, (0, 1))
    with pytest.raises(OutOfArray):
        solve_position(A, (5, -5), dims=(2, 2))


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
def test_solve_position_inverts_linear_colorings(i, j, k):
    for A in (even_box_matrix((2, 3, 2)), radius1_matrix(3)):
        colors = tuple(sum(a * x for a, x in zip(row, (i, j, k))) for row in A)
        assert solve_position(A, colors) == (i, j, k)


def test_serialization_round_trip():
    for cs in (box_coloring_odd((3, 3)), box_coloring_even((2, 2)), lee_colorings(2), lee_radius1_colorings(3)):
        cs = certify(cs.normalized((10,) * cs.D))
        again = ColoringSet.from_lines(cs.to_lines())
        assert again == cs
        for a, b in zip(again.arrays((10,) * cs.D), cs.arrays((10,) * cs.D)):
            assert (a == b).all()


def test_normalized_minimum_is_zero():
    cs = lee_colorings(2).normalized((12, 12))
    for arr in cs.arrays((12, 12)):
        assert arr.min() == 0


def test_certificate_records_window():
    cs = certify(box_coloring_even((2, 2)))
    assert cs.certificate["p1"] == cs.certificate["p2"] == cs.certificate["p3"] == "pass"
    assert cs.certificate["window"] == "x".join(map(str, default_window(cs)))


def test_residue_maps_match_p3():
    cs = box_coloring_even((2, 2)).normalized((8, 8))
    maps = residue_maps(cs, cs.arrays((8, 8)))
    assert maps[0] is None and maps[1] is not None
    cs = lee_radius1_colorings(3, window=6).normalized((6, 6, 6))
    maps = residue_maps(cs, cs.arrays((6, 6, 6)))
    assert [m is None for m in maps[1:]] == list(cs.needs_corrector[1:])
