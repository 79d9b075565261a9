import json
import math

import pytest

from diracosc.cli import main, svg_linechart, _parse_sweep_csv

BARE_SPIN = ["--symmetry", "spin", "--M", "1", "--a", "1", "--b", "0", "--B", "0", "--flux", "0"]


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_bare_ground_state(capsys):
    code, out, _ = run(capsys, ["solve", *BARE_SPIN, "--n", "0", "--m", "0"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "symmetry,n,m,M,a,b,B,flux,e,c,E,residual,p_tilde,alpha,norm_const"
    assert len(lines) == 2
    cells = lines[1].split(",")
    assert cells[0] == "spin"
    assert abs(float(cells[10]) - 2.50975533) < 1e-6
    assert float(cells[11]) < 1e-10


def test_solve_verify_columns(capsys):
    for sym, B, flux in (("pseudospin", "2", "1"), ("spin", "0.5", "0.6")):
        code, out, _ = run(
            capsys,
            ["solve", "--symmetry", sym, "--M", "1", "--a", "1", "--b", "1",
             "--B", B, "--flux", flux, "--n", "0", "--m", "0", "--verify"],
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].endswith(",oracle_E,oracle_diff")
        for line in lines[1:]:
            assert float(line.split(",")[-1]) <= 1e-6, (sym, line)


def test_solve_no_state_exit_1(capsys):
    # pseudospin with a = 1, B = 0 is not confining below the mass shell
    code, out, _ = run(
        capsys,
        ["solve", "--symmetry", "pseudospin", "--M", "1", "--a", "1", "--b", "0",
         "--B", "0", "--flux", "0", "--n", "0", "--m", "0", "--emin", "-5", "--emax", "0.9",
         "--scan", "5000", "--tol", "1e-10"],
    )
    assert code == 1
    assert len(out.strip().splitlines()) == 1  # header only


def test_solve_invalid_parameter_exit_2(capsys):
    code, _, err = run(capsys, ["solve", *BARE_SPIN[:4], "--a", "-1", *BARE_SPIN[6:], "--n", "0", "--m", "0"])
    assert code == 2
    assert "--a" in err


def test_solve_missing_flag_exit_2(capsys):
    code, _, err = run(capsys, ["solve", "--symmetry", "spin", "--a", "1", "--b", "0",
                                "--B", "0", "--flux", "0", "--n", "0", "--m", "0"])
    assert code == 2
    assert "--M" in err


def test_unknown_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--bogus", "1"])
    assert exc.value.code == 2


def test_config_file_precedence(tmp_path, capsys):
    cfg = {"symmetry": "spin", "M": 1.0, "a": 1.0, "b": 0.0, "B": 0.0, "flux": 0.0,
           "n": 0, "m": 0, "emax": 10.0}
    path = tmp_path / "run.json"
    path.write_text(json.dumps(cfg))
    code, out, _ = run(capsys, ["solve", "--config", str(path)])
    assert code == 0
    E_file = float(out.strip().splitlines()[1].split(",")[10])

    # flag overrides the file: n = 1 instead of 0
    code, out, _ = run(capsys, ["solve", "--config", str(path), "--n", "1"])
    assert code == 0
    E_flag = float(out.strip().splitlines()[1].split(",")[10])
    assert E_flag > E_file + 1.0


def test_sweep_csv_shape(tmp_path, capsys):
    out_csv = tmp_path / "sweep.csv"
    code, _, _ = run(capsys, [
        "sweep", "--symmetry", "pseudospin", "--M", "1", "--a", "1", "--b", "1",
        "--flux", "1", "--vary", "B", "--from", "0.5", "--to", "5", "--steps", "10",
        "--states", "0:0,1:0,0:1", "--out", str(out_csv),
    ])
    assert code == 0
    lines = out_csv.read_text().strip().splitlines()
    assert len(lines) == 11  # header + 10 rows
    assert lines[0] == "B,E_0_0,E_1_0,E_0_1"
    assert all(len(ln.split(",")) == 4 for ln in lines)


def test_sweep_malformed_states_exit_2(tmp_path, capsys):
    code, _, err = run(capsys, [
        "sweep", "--symmetry", "spin", "--M", "1", "--a", "1", "--b", "0", "--flux", "0",
        "--vary", "B", "--from", "0", "--to", "1", "--steps", "3",
        "--states", "0:0,nonsense", "--out", str(tmp_path / "x.csv"),
    ])
    assert code == 2
    assert "--states" in err


def test_sweep_svg_deterministic_roundtrip(tmp_path, capsys):
    args = [
        "sweep", "--symmetry", "pseudospin", "--M", "1", "--a", "1", "--b", "1",
        "--flux", "1", "--vary", "B", "--from", "0.5", "--to", "3", "--steps", "6",
        "--states", "0:0,1:0",
    ]
    csv1, svg1 = tmp_path / "a.csv", tmp_path / "a.svg"
    csv2, svg2 = tmp_path / "b.csv", tmp_path / "b.svg"
    assert run(capsys, args + ["--out", str(csv1), "--plot", str(svg1)])[0] == 0
    assert run(capsys, args + ["--out", str(csv2), "--plot", str(svg2)])[0] == 0
    assert csv1.read_bytes() == csv2.read_bytes()
    assert svg1.read_bytes() == svg2.read_bytes()

    # re-plotting from the emitted CSV reproduces the SVG byte stream
    values, columns, labels = _parse_sweep_csv(str(csv1))
    assert svg_linechart("B", values, columns, labels) == svg1.read_text()
    assert "<svg" in svg1.read_text() and "polyline" in svg1.read_text()
    assert "n=0, m=0" in svg1.read_text()


def test_svg_breaks_polyline_on_empty_cells():
    values = [0.0, 1.0, 2.0, 3.0]
    columns = [[1.0, None, 2.0, 2.5]]
    svg = svg_linechart("B", values, columns, ["n=0, m=0"])
    # the isolated leading point becomes a marker; the two points after the
    # gap form the only polyline
    assert svg.count("<circle") == 1
    assert svg.count("<polyline") == 1
    assert "NaN" not in svg


def test_wavefunction_csv(tmp_path, capsys):
    out = tmp_path / "wf.csv"
    code, _, _ = run(capsys, [
        "wavefunction", *BARE_SPIN, "--n", "0", "--m", "0",
        "--rmax", "5", "--samples", "1000", "--out", str(out),
    ])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("#") and "normalization" in lines[0]
    assert lines[2] == "r,g,g_squared"
    rows = [ln.split(",") for ln in lines[3:]]
    assert len(rows) == 1000
    g = [float(r[1]) for r in rows]
    assert all(v >= 0.0 for v in g)  # n = 0 with positive phase convention

    # trapezoid normalization check on the emitted samples
    r = [float(row[0]) for row in rows]
    g2 = [float(row[2]) for row in rows]
    dr = r[1] - r[0]
    total = sum(0.5 * (a + b) * dr for a, b in zip(g2, g2[1:]))
    assert abs(total - 1.0) < 1e-3


def test_wavefunction_nodes_in_csv(tmp_path, capsys):
    out = tmp_path / "wf2.csv"
    code, _, _ = run(capsys, [
        "wavefunction", *BARE_SPIN, "--n", "2", "--m", "0",
        "--rmax", "5", "--samples", "1200", "--out", str(out),
    ])
    assert code == 0
    rows = out.read_text().strip().splitlines()[3:]
    g = [float(ln.split(",")[1]) for ln in rows]
    cut = 1e-12 * max(abs(v) for v in g)
    signs = [1 if v > 0 else -1 for v in g if abs(v) > cut]
    changes = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    assert changes == 2


def test_wavefunction_no_state_exit_1(tmp_path, capsys):
    code, _, _ = run(capsys, [
        "wavefunction", *BARE_SPIN, "--n", "0", "--m", "0",
        "--emin", "1.05", "--emax", "1.5",
        "--rmax", "5", "--samples", "100", "--out", str(tmp_path / "none.csv"),
    ])
    assert code == 1


def test_nu_trace_output(capsys):
    code, out, _ = run(capsys, [
        "nu-trace", "--symmetry", "pseudospin", "--M", "1", "--a", "1", "--b", "1",
        "--B", "2", "--flux", str(math.pi), "--m", "1", "--E", "2",
    ])
    assert code == 0
    assert "pi(s) = 2 - 1.73205080757 s" in out
    assert "tau(s) = 5 - 3.46410161514 s" in out
    assert "lambda = -2.83012701892" in out
    assert out.count("[k") == 4  # all four candidates listed
    assert "5.66025403784" in out  # F_0(2) = 5 sqrt(3) - 3


def test_nu_trace_marks_eigenstate(capsys):
    # probe exactly at the n = 1 level of the bare spin oscillator
    from diracosc.model import FieldConfiguration, StateIndex, SymmetryLimit
    from diracosc.spectrum import SearchWindow, find_states

    cfg = FieldConfiguration(M=1, a=1, b=0, B=0, phi_AB=0)
    E1 = find_states(cfg, SymmetryLimit.SPIN, StateIndex(1, 0), SearchWindow(1.0001, 10.0))[0].E
    code, out, _ = run(capsys, [
        "nu-trace", *BARE_SPIN, "--m", "0", "--E", f"{E1:.15g}",
    ])
    assert code == 0
    marked = [ln for ln in out.splitlines() if "<-- eigenstate" in ln]
    assert len(marked) == 1
    assert marked[0].strip().startswith("1")


def test_nu_trace_inadmissible_exit_2(capsys):
    code, _, err = run(capsys, [
        "nu-trace", "--symmetry", "pseudospin", "--M", "1", "--a", "1", "--b", "1",
        "--B", "0", "--flux", "0", "--m", "0", "--E", "0.2",
    ])
    assert code == 2
    assert "p2" in err
