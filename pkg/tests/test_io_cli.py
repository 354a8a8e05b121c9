import json

import numpy as np
import pytest

from ghzsym import cli
from ghzsym.exceptions import FormatError, NotPositiveError
from ghzsym.geometry import Y_MAX, Y_MIN, classify_points
from ghzsym.io import csv_text, dumps, fmt, parse_density, read_density, write_density
from ghzsym.oracle import hyperdeterminant, sample_batch
from ghzsym.statespace import SloccClass, basis_ket, pure_to_density, werner
from ghzsym.twirl import coords_of_pure

S3 = np.sqrt(3)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def state_file(tmp_path):
    def make(rho, name="rho.json"):
        path = tmp_path / name
        write_density(path, rho)
        return str(path)

    return make


def test_fmt_round_trips_doubles(rng):
    for v in rng.standard_normal(200) * 10.0 ** rng.integers(-20, 20, 200):
        assert float(fmt(v)) == v
    assert fmt(0.1) == "0.10000000000000001"
    with pytest.raises(ValueError):
        fmt(float("nan"))


def test_density_json_round_trip(tmp_path, rng):
    from .oracles import random_density

    rho = random_density(rng)
    path = tmp_path / "r.json"
    write_density(path, rho)
    assert np.array_equal(read_density(path), rho)
    data = json.loads(path.read_text())
    assert data["dim"] == 8 and len(data["re"]) == 8


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"dim": 8, "re": [[0.0] * 8] * 8},
        {"dim": 4, "re": [[0.0] * 4] * 4, "im": [[0.0] * 4] * 4},
        {"dim": 8, "re": [[0.0] * 7] * 8, "im": [[0.0] * 8] * 8},
        {"dim": 8, "re": [["a"] * 8] * 8, "im": [[0.0] * 8] * 8},
    ],
)
def test_parse_density_rejects(data):
    with pytest.raises(FormatError):
        parse_density(data)


def test_read_density_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(FormatError):
        read_density(bad)
    with pytest.raises(FormatError):
        read_density(tmp_path / "missing.json")
    d = np.zeros(8)
    d[0], d[7] = 1.001, -0.001
    write_density(tmp_path / "neg.json", np.diag(d))
    with pytest.raises(NotPositiveError):
        read_density(tmp_path / "neg.json")


def test_csv_text():
    text = csv_text(("y", "x"), [(0.0, 0.125), (1 / 3, "w")])
    assert text == "y,x\n0,0.125\n0.33333333333333331,w\n"


def test_dumps_is_valid_json():
    obj = {"a": 1 / 3, "b": [1, 2.5], "c": {"d": True, "e": None}, "f": "s", "g": {}}
    back = json.loads(dumps(obj))
    assert back["a"] == 1 / 3 and back["c"] == {"d": True, "e": None} and back["g"] == {}


def test_classify_werner(capsys, state_file):
    code, out, _ = run(capsys, "classify", "--input", state_file(werner(0.7)))
    assert code == 0
    res = json.loads(out)
    assert res["slocc_lower_bound"] == "GHZ"
    assert res["ghz_symmetric"] is True and res["bound"] == "exact"
    assert (res["x"], res["y"]) == pytest.approx((0.35, S3 * 0.7 / 4), abs=1e-15)
    assert set(res["distances"]) == {"sep", "bisep", "w", "edge"}


def test_classify_product_state(capsys, state_file):
    code, out, _ = run(capsys, "classify", "--input", state_file(pure_to_density(basis_ket("000"))))
    res = json.loads(out)
    assert code == 0
    assert res["slocc_lower_bound"] == "Separable"
    assert res["ghz_symmetric"] is False and res["bound"] == "lower bound"
    assert (res["x"], res["y"]) == pytest.approx((0.0, S3 / 4), abs=1e-15)


def _ghz_state_witnessed_as_w():
    psi = sample_batch(SloccClass.GHZ, 5000, np.random.default_rng(123))
    x, y = coords_of_pure(psi)
    hits = np.flatnonzero((classify_points(x, y) == int(SloccClass.W)) & (np.abs(hyperdeterminant(psi)) > 1e-6))
    assert hits.size
    return psi[hits[0]]


def test_classify_one_sided_witness(capsys, state_file):
    psi = _ghz_state_witnessed_as_w()
    code, out, _ = run(capsys, "classify", "--input", state_file(pure_to_density(psi)))
    res = json.loads(out)
    assert code == 0
    # the state is GHZ-class but the witness can only certify "at least W"
    assert res["slocc_lower_bound"] == "W"
    assert res["ghz_symmetric"] is False and res["bound"] == "lower bound"


def test_classify_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dim": 8}')
    code, _, err = run(capsys, "classify", "--input", str(path))
    assert code == 2 and "malformed" in err


def test_classify_invalid_state(capsys, state_file):
    d = np.zeros(8)
    d[0], d[7] = 1.001, -0.001
    code, _, err = run(capsys, "classify", "--input", state_file(np.diag(d)))
    assert code == 3 and "eigenvalue" in err


def test_twirl_maximally_mixed(capsys, state_file, tmp_path):
    src = state_file(np.eye(8) / 8)
    dst = tmp_path / "out.json"
    assert run(capsys, "twirl", "--input", src, "--output", str(dst))[0] == 0
    assert np.array_equal(read_density(dst), np.eye(8) / 8)


def test_twirl_product_state(capsys, state_file, tmp_path):
    dst = tmp_path / "out.json"
    run(capsys, "twirl", "--input", state_file(pure_to_density(basis_ket("000"))), "--output", str(dst))
    expected = np.zeros((8, 8))
    expected[0, 0] = expected[7, 7] = 0.5
    assert np.allclose(read_density(dst), expected, atol=1e-16)


def test_twirl_needs_output(capsys, state_file):
    assert run(capsys, "twirl", "--input", state_file(werner(0.3)))[0] == 2


def test_classify_after_twirl(capsys, state_file, tmp_path, rng):
    from .oracles import random_density

    src = state_file(random_density(rng))
    dst = tmp_path / "t.json"
    _, before, _ = run(capsys, "classify", "--input", src)
    run(capsys, "twirl", "--input", src, "--output", str(dst))
    _, after, _ = run(capsys, "classify", "--input", str(dst))
    b, a = json.loads(before), json.loads(after)
    assert b["ghz_symmetric"] is False and a["ghz_symmetric"] is True
    assert (a["x"], a["y"]) == pytest.approx((b["x"], b["y"]), abs=1e-15)
    assert a["slocc_lower_bound"] == b["slocc_lower_bound"]


def _csv(text):
    lines = text.splitlines()
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


def test_boundary_w(capsys):
    code, out, _ = run(capsys, "boundary", "--class", "w", "--samples", "3")
    header, rows = _csv(out)
    assert code == 0 and header == ["v", "y", "x"]
    vals = np.array(rows, dtype=float)
    expected = [[0, S3 / 4, 0], [0.5, 0.4257958, 0.034375], [1, S3 / 6, 3 / 8]]
    assert np.allclose(vals, expected, atol=5e-7)


def test_boundary_sep_and_edge(capsys):
    _, out, _ = run(capsys, "boundary", "--class", "sep", "--samples", "2")
    header, rows = _csv(out)
    assert header == ["y", "x"]
    assert np.allclose(np.array(rows, dtype=float), [[0, 0.125], [S3 / 4, 0]], atol=1e-15)
    _, out, _ = run(capsys, "boundary", "--class", "edge", "--samples", "2")
    assert np.allclose(np.array(_csv(out)[1], dtype=float), [[Y_MIN, 0], [Y_MAX, 0.5]], atol=1e-15)


def test_boundary_rows_uniform_in_y(capsys):
    for kind in ("sep-pure", "bisep"):
        _, out, _ = run(capsys, "boundary", "--class", kind, "--samples", "11")
        y = np.array(_csv(out)[1], dtype=float)[:, 0]
        assert len(y) == 11 and np.allclose(np.diff(y, 2), 0, atol=1e-15)
        assert y[-1] == pytest.approx(Y_MAX)


def test_boundary_bad_flags(capsys):
    assert run(capsys, "boundary", "--class", "w", "--samples", "1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["boundary", "--class", "ghz"])
    assert exc.value.code == 2


def test_map(capsys):
    code, out, _ = run(capsys, "map", "--xres", "40", "--yres", "30")
    header, rows = _csv(out)
    assert code == 0 and header == ["x", "y", "class"] and len(rows) == 1200
    assert {r[2] for r in rows} == {"outside", "sep", "bisep", "w", "ghz"}
    pts = np.array([r[:2] for r in rows], dtype=float)
    labels = [r[2] for r in rows]
    for (px, py), want in (((0.0, 0.0), "sep"), ((0.45, 0.42), "ghz"), ((0.45, 0.0), "outside")):
        assert cli.MAP_LABELS[int(classify_points(px, py))] == want
        k = int(np.argmin(np.hypot(pts[:, 0] - px, pts[:, 1] - py)))
        assert labels[k] == want
    assert run(capsys, "map", "--xres", "40", "--yres", "30")[1] == out


def test_map_bad_resolution(capsys):
    assert run(capsys, "map", "--xres", "1")[0] == 2


def test_thresholds(capsys):
    code, out, _ = run(capsys, "thresholds")
    res = json.loads(out)
    assert code == 0
    assert res["p_sep"] == 0.2
    assert '"p_bisep": 0.428571428571' in out
    assert res["p_w"] == pytest.approx(0.6955427, abs=5e-7)
    assert set(res) == {"p_sep", "p_bisep", "p_w", "v_w"}


def test_verify_containment(capsys):
    code, out, _ = run(capsys, "verify", "--class", "w", "--samples", "10000", "--seed", "42")
    res = json.loads(out)
    assert code == 0 and res["fraction"] == 1.0 and res["passed"] is True
    assert run(capsys, "verify", "--class", "w", "--samples", "10000", "--seed", "42")[1] == out


def test_verify_ghz_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--class", "ghz", "--samples", "100", "--seed", "42")
    assert code == 2 and "GHZ" in err


def test_verify_boundary_sep(capsys):
    code, out, _ = run(capsys, "verify", "--class", "sep", "--samples", "10", "--seed", "42", "--mode", "boundary")
    res = json.loads(out)
    assert code == 0 and len(res["points"]) == 10
    assert all(abs(p["x_found"] - p["x_boundary"]) <= 1e-6 for p in res["points"])


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2
