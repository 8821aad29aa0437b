import math

import numpy as np
import pytest

from clustercodes import gf2
from clustercodes.codec import (
    array_from_text,
    array_to_text,
    assemble,
    assembly_from_text,
    assembly_to_text,
    bounds_report,
    choose_colorings,
    cluster_syndrome,
    decode,
    encode,
    extract_info,
    load_assembly,
    lower_excess_arbitrary,
    read_array,
    save_assembly,
    syndrome,
    write_array,
)
from clustercodes.errors import FormatError, ShapeUnsupported, Undecodable
from clustercodes.oracle import enumerate_clusters, verify_decoder_equivalence, verify_distinct_syndromes, verify_roundtrip
from clustercodes.shapes import Cluster, ShapeSpec


@pytest.fixture(scope="module")
def box33():
    return assemble((10, 10), ShapeSpec.box(3, 3))


@pytest.fixture(scope="module")
def box22():
    return assemble((8, 8), ShapeSpec.box(2, 2))


@pytest.fixture(scope="module")
def lee21():
    return assemble((12, 12), ShapeSpec.lee_sphere(2, 1))


def test_route_odd_box(box33):
    assert box33.route == "box_odd"
    assert [c.role for c in box33.components] == ["corrector", "locator"]
    assert box33.components[0].b == 9 and box33.components[1].window == 9


def test_route_even_box(box22):
    assert box22.route == "box_even"
    assert box22.colorings.A == [[1, 2], [-2, 1]]
    assert box22.components[1].window == 5


def test_route_lee(lee21):
    assert lee21.route == "lee_tiling"
    assert lee21.colorings.volume == 5 and lee21.colorings.moduli == (5, 5)


def test_route_table():
    assert choose_colorings((6, 6, 6), ShapeSpec.lee_sphere(3, 1))[1] == "lee_radius1"
    assert choose_colorings((6, 6, 6), ShapeSpec.lee_sphere(3, 2))[1] == "transform"
    assert choose_colorings((8, 8), ShapeSpec.lee_sphere(2, 1), "transform")[1] == "transform"
    assert choose_colorings((9,), ShapeSpec.lee_sphere(1, 2))[1] == "box_odd"
    assert choose_colorings((9, 9), ShapeSpec.box(3, 3), "even")[1] == "box_even"


def test_unsupported_arrays():
    with pytest.raises(ShapeUnsupported):
        assemble((2,) * 5, ShapeSpec.box(1, 1, 1, 1, 1))
    with pytest.raises(ShapeUnsupported):
        assemble((2048, 1024), ShapeSpec.box(1, 1))
    with pytest.raises(ShapeUnsupported):
        assemble((4, 4), ShapeSpec.box(5, 1))
    with pytest.raises(ShapeUnsupported):
        assemble((4, 4), ShapeSpec.box(1, 1, 1))


def test_column_is_stack_of_component_columns(box33):
    a = box33
    for flat in (0, 17, 55, 99):
        want = 0
        for comp, arr, sh in zip(a.components, a.color_arrays, a.shifts):
            want |= comp.columns[int(arr[flat])] << sh
        assert a.columns[flat] == want


def test_redundancy_positions_invertible(box33, box22, lee21):
    for a in (box33, box22, lee21):
        cols = [a.columns[j] for j in a.redundancy_positions]
        assert len(cols) == a.r and gf2.rank(cols) == a.r
        assert a.r <= a.r_stack
        assert sorted(a.redundancy_positions + a.info_positions) == list(range(a.N))


def test_encode_zero_and_random(box33):
    a = box33
    assert not encode(a, np.zeros(a.k, dtype=np.uint8)).any()
    rng = np.random.default_rng(3)
    for _ in range(20):
        info = rng.integers(0, 2, a.k, dtype=np.uint8)
        c = encode(a, info)
        assert c.shape == a.dims
        assert syndrome(a, c).is_zero()
        assert (extract_info(a, c) == info).all()


def test_linearity_thousand_pairs(lee21):
    a = lee21
    rng = np.random.default_rng(11)
    words = [encode(a, rng.integers(0, 2, a.k, dtype=np.uint8)) for _ in range(50)]
    pairs = 0
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            assert syndrome(a, words[i] ^ words[j]).is_zero()
            pairs += 1
    assert pairs >= 1000


def test_syndrome_linearity(box22):
    a = box22
    c = encode(a, np.random.default_rng(0).integers(0, 2, a.k, dtype=np.uint8))
    w = c.copy()
    w[3, 4] ^= 1
    assert syndrome(a, w).stacked == a.column((3, 4))
    e = [(2, 2), (2, 3), (3, 3)]
    w = c.copy()
    for p in e:
        w[p] ^= 1
    assert syndrome(a, w).stacked == cluster_syndrome(a, e)
    s = syndrome(a, w)
    assert len(s.parts) == 2


def test_decode_no_error(box33):
    a = box33
    c = encode(a, np.ones(a.k, dtype=np.uint8))
    out, cl = decode(a, c)
    assert cl is None and (out == c).all()


def test_decode_does_not_modify_input(box33):
    a = box33
    c = encode(a, np.ones(a.k, dtype=np.uint8))
    w = c.copy()
    w[4, 4] ^= 1
    before = w.copy()
    out, cl = decode(a, w)
    assert (w == before).all() and (out == c).all() and cl == Cluster.of([(4, 4)])


def test_decode_oversized_cluster(box33):
    a = box33
    c = encode(a, np.zeros(a.k, dtype=np.uint8))
    w = c.copy()
    err = [(2, 2), (2, 5), (4, 2), (4, 5)]  # spans 3 x 4
    for p in err:
        w[p] ^= 1
    try:
        out, cl = decode(a, w)
    except Undecodable:
        return
    assert cl != Cluster.of(err)


SMALL = [
    ((20,), ShapeSpec.box(3)),
    ((6, 6), ShapeSpec.box_weight_limited((3, 3), 2)),
    ((5, 5, 5), ShapeSpec.box(3, 1, 1)),
    ((4, 4, 4), ShapeSpec.lee_sphere(3, 1)),
    ((9, 9), ShapeSpec.box(3, 3)),
    ((6, 7), ShapeSpec.box(2, 3)),
    ((5, 5, 4), ShapeSpec.box(2, 1, 2)),
    ((9, 9), ShapeSpec.lee_sphere(2, 1)),
    ((9, 9), ShapeSpec.arbitrary_cluster(2, 2)),
    ((10, 10), ShapeSpec.lee_sphere_weight_limited(2, 2, 2)),
    ((12,), ShapeSpec.lee_sphere(1, 1)),
]


@pytest.mark.parametrize("dims,shape", SMALL, ids=[f"{s.to_string()}-{'x'.join(map(str, d))}" for d, s in SMALL])
def test_exhaustive_small_assemblies(dims, shape):
    a = assemble(dims, shape)
    clusters = list(enumerate_clusters(shape, dims))
    d = verify_distinct_syndromes(a, clusters)
    rt = verify_roundtrip(a, clusters)
    assert d.passed and rt.passed and d.passed == rt.passed
    assert verify_decoder_equivalence(a, clusters).passed
    b = bounds_report(a)
    assert b.reiger_ok and b.excess_ok


def test_transform_route_round_trip():
    shape = ShapeSpec.lee_sphere(2, 1)
    a = assemble((8, 8), shape, route="transform")
    assert a.route == "transform"
    clusters = list(enumerate_clusters(shape, (8, 8)))
    assert verify_roundtrip(a, clusters).passed


def test_even_route_for_odd_box():
    shape = ShapeSpec.box(1, 3)
    a = assemble((7, 7), shape, route="even")
    assert a.route == "box_even"
    assert verify_roundtrip(a, list(enumerate_clusters(shape, (7, 7)))).passed


def test_bounds_box33(box33):
    b = bounds_report(box33)
    assert b.reiger_floor == 18 and b.excess_floor == 8
    assert b.log2N == 7 and b.ceiling == 7 + 9 + 2 and b.slack == 2
    assert b.r == box33.r and b.r_components == box33.r_stack
    assert any("Reiger floor 2B = 18" in line for line in b.lines())


def test_bounds_lee(lee21):
    b = bounds_report(lee21)
    assert b.ceiling == 8 + 5 + math.ceil(2 * math.log2(3)) + 2
    assert b.ceiling_ok


def test_lower_excess_for_arbitrary_clusters():
    assert lower_excess_arbitrary(3) == pytest.approx(3 * math.log2(3.981037), abs=1e-9)
    a = assemble((9, 9), ShapeSpec.arbitrary_cluster(2, 3))
    b = bounds_report(a)
    assert round(b.lower_excess, 6) == round(3 * math.log2(3.981037), 6)
    assert any(line.startswith("lower excess") for line in b.lines())


def test_assembly_file_round_trip(box22, tmp_path):
    path = tmp_path / "box22.code"
    save_assembly(box22, path)
    again = load_assembly(path)
    assert again.columns == box22.columns and again.redundancy_positions == box22.redundancy_positions
    assert assembly_to_text(again) == assembly_to_text(box22)


def test_assembly_file_tamper_detected(box22):
    text = assembly_to_text(box22)
    lines = text.splitlines()
    k = lines.index("[H]") + 1
    lines[k] = format(int(lines[k], 16) ^ 1, "x").zfill(len(lines[k]))
    with pytest.raises(FormatError):
        assembly_from_text("\n".join(lines))
    with pytest.raises(FormatError):
        assembly_from_text("not an assembly")


def test_array_file_format(tmp_path):
    w = np.arange(12).reshape(3, 4) % 3 == 0
    text = array_to_text(w)
    assert text.splitlines() == ["dims: 3 4", "1001", "0010", "0100"]
    assert (array_from_text(text) == w).all()
    write_array(w, tmp_path / "a.arr")
    assert (read_array(tmp_path / "a.arr") == w).all()


@pytest.mark.parametrize("bad", ["dims: 2 2\n10\n1", "dims: 2 2\n1021", "2 2\n1010", "dims: x\n1"])
def test_array_file_errors(bad):
    with pytest.raises(FormatError):
        array_from_text(bad)
