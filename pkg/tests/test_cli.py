import io
import subprocess
import sys

import pytest

from circlemaps.blaschke import BlaschkeProduct, RationalCircleMap
from circlemaps.cli import RunConfig, main, run
from circlemaps.errors import FormatError
from circlemaps.formats import dumps_curve, loads_curve, read_table, write_map
from circlemaps.fourier import sample_map
from circlemaps.geometry import folding_map


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def _fields(text):
    return dict(line.split(": ", 1) for line in text.splitlines())


@pytest.fixture
def identity_map(tmp_path):
    path = tmp_path / "id.json"
    write_map(RationalCircleMap.from_zeros([0]), path)
    return path


def test_check_homeo_identity(identity_map, capsys):
    code, out, _ = _run(["check-homeo", "--input", str(identity_map)], capsys)
    assert code == 0
    f = _fields(out)
    assert f["verdict"] == "Homeo"
    assert float(f["margin_lower_bound"]) == pytest.approx(1.0)


def test_check_homeo_not_homeo(tmp_path, capsys):
    path = tmp_path / "m.json"
    write_map(RationalCircleMap.first_kind(BlaschkeProduct(0.0, [0.5, 0.5])), path)
    code, out, _ = _run(["check-homeo", "--input", str(path), "--format", "delimited"], capsys)
    assert code == 0
    header, rows = read_table(out)
    assert rows[0][header.index("verdict")] == "NotHomeo"


def test_strict_inconclusive(tmp_path, capsys):
    path = tmp_path / "edge.json"
    write_map(RationalCircleMap.first_kind(BlaschkeProduct(0.0, [0.999])), path)
    code, out, err = _run(["check-homeo", "--input", str(path), "--grid", "4096"], capsys)
    if _fields(out)["verdict"] == "Inconclusive":
        assert code == 0 and "warning" in err
        code, _, _ = _run(["check-homeo", "--input", str(path), "--strict"], capsys)
        assert code == 3
    else:
        pytest.skip("map certified at this resolution")


@pytest.mark.parametrize("content", ["{broken", '{"numerator": {"zeros": [[2, 0]]}}'])
def test_parse_errors_exit_2(tmp_path, capsys, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    code, out, err = _run(["check-homeo", "--input", str(path)], capsys)
    assert code == 2 and out == "" and err.startswith("error:")


def test_missing_file_and_missing_input(tmp_path, capsys):
    assert _run(["check-homeo", "--input", str(tmp_path / "nope.json")], capsys)[0] == 2
    assert _run(["check-homeo"], capsys)[0] == 2
    assert _run(["check-homeo", "--input", "x.json", "--grid", "-4"], capsys)[0] == 2


def test_run_config_validation():
    with pytest.raises(FormatError):
        RunConfig(command="nope")
    with pytest.raises(FormatError):
        RunConfig(command="starlike")
    with pytest.raises(FormatError):
        RunConfig(command="verify-paper", output_format="xml")


def test_fourier_from_map_and_curve(tmp_path, capsys):
    path = tmp_path / "m.json"
    write_map(RationalCircleMap.from_zeros([0.3]), path)
    code, out, _ = _run(["fourier", "--input", str(path), "--window", "4"], capsys)
    assert code == 0
    header, rows = read_table(out)
    assert header == ["n", "re", "im", "abs"] and len(rows) == 9
    assert float(rows[4 + 1][1]) == pytest.approx(1 - 0.09, abs=1e-14)

    curve = tmp_path / "fold.csv"
    curve.write_text(dumps_curve(sample_map(folding_map, 256)))
    code, out, _ = _run(["fourier", "--input", str(curve), "--window", "3"], capsys)
    rows = {int(r[0]): float(r[3]) for r in read_table(out)[1]}
    assert rows[2] == pytest.approx(1) and rows[-2] == pytest.approx(0.5) and rows[-1] < 1e-14


def test_homotopy_rows(capsys, tmp_path):
    path = tmp_path / "m.json"
    write_map(RationalCircleMap.from_zeros([0.4, -0.2], [0.1]), path)
    code, out, _ = _run(["homotopy", "--input", str(path), "--steps", "5"], capsys)
    assert code == 0
    header, rows = read_table(out)
    assert len(rows) == 5
    assert [float(r[0]) for r in rows] == [0, 0.25, 0.5, 0.75, 1]
    assert float(rows[0][header.index("rotation_deviation")]) <= 1e-12
    assert all(r[1] == "Homeo" for r in rows)


def test_starlike_seed_and_curve_out(tmp_path, capsys):
    curve = tmp_path / "c.csv"
    code, out, _ = _run(["starlike", "--seed", "7", "--curve-out", str(curve)], capsys)
    assert code == 0
    f = _fields(out)
    assert f["starlike"] == "true" and f["injective"] == "true"
    assert float(f["first_coefficient_sum"]) > 0
    s = loads_curve(curve.read_text())
    code, out2, _ = _run(["starlike", "--input", str(curve)], capsys)
    assert code == 0 and _fields(out2)["starlike"] == "true"
    center = f"{f['center_re']},{f['center_im']}"
    code, out3, _ = _run(["starlike", "--input", str(curve), "--center", center], capsys)
    assert _fields(out3)["orientation"] == "1"
    assert s.N == 1024


def test_starlike_rejects_bad_center(capsys):
    with pytest.raises(SystemExit):
        main(["starlike", "--seed", "1", "--center", "1;2"])


def test_sweep_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sweep-degree2", "--steps", "7", "--grid", "1024", "--out", str(a)]) == 0
    assert main(["sweep-degree2", "--steps", "7", "--grid", "1024", "--out", str(b), "--workers", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    header, rows = read_table(a.read_text())
    assert len(rows) == 49
    assert all(r[header.index("agree")] in ("true", "") for r in rows)


def test_verify_paper_single_check(capsys):
    code, out, _ = _run(["verify-paper", "--check", "4"], capsys)
    assert code == 0
    assert out.startswith("PASS") and out.count("\n") == 1


def test_run_writes_to_stream(identity_map):
    buf = io.StringIO()
    assert run(RunConfig(command="check-homeo", input_path=identity_map), buf) == 0
    assert "verdict: Homeo" in buf.getvalue()


def test_module_entry_point(identity_map):
    proc = subprocess.run(
        [sys.executable, "-m", "circlemaps", "check-homeo", "--input", str(identity_map)],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and "Homeo" in proc.stdout
