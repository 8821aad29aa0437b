import subprocess
import sys

import pytest

from clustercodes import codec
from clustercodes.cli import DEFAULT_SEED, main


def run(argv, capsys):
    code = main([str(x) for x in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def box_files(tmp_path_factory):
    d = tmp_path_factory.mktemp("box")
    assert main(["construct", "--dims", "10,10", "--shape", "box:3x3", "--out", str(d / "box.code")]) == 0
    assert main(["encode", "--assembly", str(d / "box.code"), "--out", str(d / "c.arr")]) == 0
    return d


def test_search_code_b2(tmp_path, capsys):
    code, out, _ = run(["search-code", "--b", 2, "--m-min", 3, "--m-max", 3, "--out", tmp_path / "b2.spec"], capsys)
    assert code == 0 and "n=7 r=4" in out
    text = (tmp_path / "b2.spec").read_text()
    assert "n=7" in text and "r=4" in text


def test_search_code_even_b_is_usage_error(tmp_path, capsys):
    code, _, err = run(["search-code", "--b", 4, "--out", tmp_path / "x"], capsys)
    assert code == 1 and "square-free" in err


def test_search_code_not_found(tmp_path, capsys):
    code, _, _ = run(["search-code", "--b", 3, "--m-min", 3, "--m-max", 3, "--out", tmp_path / "x"], capsys)
    assert code == 2


def test_search_code_limited_weight(tmp_path, capsys):
    code, out, _ = run(["search-code", "--b", 5, "--weight-limit", 2, "--out", tmp_path / "lw.spec"], capsys)
    assert code == 0 and "corrector_weight_limited(5,2)" in out
    assert "kind=corrector_weight_limited" in (tmp_path / "lw.spec").read_text()


def test_bad_flags(capsys):
    assert run(["construct", "--dims", "10,x", "--shape", "box:3x3", "--out", "x"], capsys)[0] == 1
    assert run(["construct", "--dims", "10,10", "--shape", "tri:3", "--out", "x"], capsys)[0] == 1
    assert run(["frobnicate"], capsys)[0] == 1
    assert run(["verify"], capsys)[0] == 1


def test_construct_reports(tmp_path, capsys):
    code, out, _ = run(["construct", "--dims", "8,8", "--shape", "box:2x2", "--out", tmp_path / "b.code"], capsys)
    assert code == 0 and "route: box_even" in out
    code, out, _ = run(["construct", "--dims", "12,12", "--shape", "lee:1", "--out", tmp_path / "l.code"], capsys)
    assert code == 0 and "route: lee_tiling" in out and "Lee sphere tiling" in out


def test_construct_unsupported(tmp_path, capsys):
    code, _, _ = run(["construct", "--dims", "3,3,3,3,3", "--shape", "box:1x1x1x1x1", "--out", tmp_path / "x"], capsys)
    assert code == 3


def test_encode_decode_unmodified(box_files, tmp_path, capsys):
    code, out, _ = run(["decode", "--assembly", box_files / "box.code", "--in", box_files / "c.arr",
                        "--out", tmp_path / "d.arr"], capsys)
    assert code == 0 and out.strip() == "no error"
    assert (tmp_path / "d.arr").read_text() == (box_files / "c.arr").read_text()


def test_inject_then_decode(box_files, tmp_path, capsys):
    code, out, _ = run(["inject", "--assembly", box_files / "box.code", "--in", box_files / "c.arr",
                        "--out", tmp_path / "e.arr", "--seed", 7], capsys)
    assert code == 0
    injected = out.split(":", 1)[1].strip()
    code, out, _ = run(["decode", "--assembly", box_files / "box.code", "--in", tmp_path / "e.arr",
                        "--out", tmp_path / "d.arr", "--report", tmp_path / "rep.txt"], capsys)
    assert code == 0
    assert (tmp_path / "d.arr").read_text() == (box_files / "c.arr").read_text()
    assert out.split(":", 1)[1].strip() == injected
    assert (tmp_path / "rep.txt").read_text().strip() == out.strip()


def test_inject_is_reproducible(box_files, tmp_path, capsys):
    outs = []
    for k in range(2):
        run(["inject", "--assembly", box_files / "box.code", "--in", box_files / "c.arr", "--out", tmp_path / f"e{k}.arr"], capsys)
        outs.append((tmp_path / f"e{k}.arr").read_text())
    assert outs[0] == outs[1]
    run(["inject", "--assembly", box_files / "box.code", "--in", box_files / "c.arr",
         "--out", tmp_path / "e2.arr", "--seed", DEFAULT_SEED], capsys)
    assert (tmp_path / "e2.arr").read_text() == outs[0]


def test_inject_given_positions(box_files, tmp_path, capsys):
    code, out, _ = run(["inject", "--assembly", box_files / "box.code", "--in", box_files / "c.arr",
                        "--out", tmp_path / "e.arr", "--positions", "1,1;2,3"], capsys)
    assert code == 0 and "(1,1) (2,3)" in out
    code, _, _ = run(["inject", "--assembly", box_files / "box.code", "--in", box_files / "c.arr",
                      "--out", tmp_path / "e.arr", "--positions", "1,1;5,5"], capsys)
    assert code == 1


def test_forced_violation(box_files, tmp_path, capsys):
    run(["inject", "--assembly", box_files / "box.code", "--in", box_files / "c.arr",
         "--out", tmp_path / "f.arr", "--force"], capsys)
    code, out, _ = run(["decode", "--assembly", box_files / "box.code", "--in", tmp_path / "f.arr",
                        "--out", tmp_path / "d.arr"], capsys)
    if code == 0:
        assert (tmp_path / "d.arr").read_text() != (box_files / "c.arr").read_text()
    else:
        assert code == 4 and out.startswith("undecodable")


def test_bad_array_file(box_files, tmp_path, capsys):
    (tmp_path / "bad.arr").write_text("dims: 10 10\n0101\n")
    code, _, _ = run(["decode", "--assembly", box_files / "box.code", "--in", tmp_path / "bad.arr",
                      "--out", tmp_path / "d.arr"], capsys)
    assert code == 1


def test_encode_info_file(box_files, tmp_path, capsys):
    a = codec.load_assembly(box_files / "box.code")
    (tmp_path / "info.arr").write_text(f"dims: {a.k}\n" + "1" * a.k + "\n")
    code, _, _ = run(["encode", "--assembly", box_files / "box.code", "--info", tmp_path / "info.arr",
                      "--out", tmp_path / "c.arr"], capsys)
    assert code == 0
    word = codec.read_array(tmp_path / "c.arr")
    assert codec.syndrome(a, word).is_zero() and codec.extract_info(a, word).all()
    (tmp_path / "short.arr").write_text("dims: 3\n101\n")
    code, _, _ = run(["encode", "--assembly", box_files / "box.code", "--info", tmp_path / "short.arr",
                      "--out", tmp_path / "c.arr"], capsys)
    assert code == 1


def test_verify_exhaustive(box_files, capsys):
    code, out, _ = run(["verify", "--assembly", box_files / "box.code", "--exhaustive"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("CHECK ") and " pass " in line for line in lines)
    assert any("distinct-syndromes pass cases=26383" in line for line in lines)


def test_verify_lee_transform(capsys):
    code, out, _ = run(["verify", "--lee-transform", 2, 2], capsys)
    assert code == 0 and "extents 3x5" in out


def test_verify_colorings(tmp_path, capsys):
    run(["construct", "--dims", "12,12", "--shape", "lee:2", "--colorings-out", tmp_path / "lee_r2.col",
         "--colorings-only"], capsys)
    code, out, _ = run(["verify", "--colorings", tmp_path / "lee_r2.col"], capsys)
    assert code == 0 and "moduli 13 13" in out
    assert all(f"CHECK {p} pass" in out for p in ("p1", "p2", "p3"))


def test_verify_colorings_check_failure(tmp_path, capsys):
    run(["construct", "--dims", "8,8", "--shape", "box:2x2", "--colorings-out", tmp_path / "c.col",
         "--colorings-only"], capsys)
    text = (tmp_path / "c.col").read_text().replace("coeffs=1,2", "coeffs=1,1")
    (tmp_path / "bad.col").write_text(text)
    code, out, _ = run(["verify", "--colorings", tmp_path / "bad.col"], capsys)
    assert code == 5 and "CHECK p1 fail" in out


def test_bounds(box_files, tmp_path, capsys):
    code, out, _ = run(["bounds", "--assembly", box_files / "box.code"], capsys)
    assert code == 0 and "Reiger floor 2B = 18" in out
    run(["construct", "--dims", "12,12", "--shape", "arb:3", "--out", tmp_path / "arb.code"], capsys)
    code, out, _ = run(["bounds", "--assembly", tmp_path / "arb.code"], capsys)
    assert "lower excess for arbitrary clusters = 5.979433" in out


def test_jobs_env(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("CLUSTER_CODES_JOBS", "nope")
    code, _, err = run(["search-code", "--b", 2, "--m-min", 3, "--m-max", 3, "--out", tmp_path / "x"], capsys)
    assert code == 1 and "CLUSTER_CODES_JOBS" in err
    monkeypatch.setenv("CLUSTER_CODES_JOBS", "2")
    code, _, _ = run(["search-code", "--b", 3, "--m-min", 4, "--m-max", 6, "--out", tmp_path / "x"], capsys)
    assert code == 0


def test_outputs_are_byte_identical(tmp_path, capsys):
    for k in range(2):
        run(["construct", "--dims", "6,6", "--shape", "box:1x3", "--out", tmp_path / f"a{k}.code"], capsys)
    assert (tmp_path / "a0.code").read_bytes() == (tmp_path / "a1.code").read_bytes()


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "clustercodes.cli", "verify", "--lee-transform", "2", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "CHECK lee-transform-box-D2-R1 pass" in res.stdout
