"""Command-line interface: argument handling, output formats, exit codes."""

import json

import numpy as np
import pytest

import qelectra.cli as cli
from qelectra.fcidump import read_fcidump


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_table_single_point(capsys):
    code, out, err = run_cli(capsys, "--molecule", "h2")
    assert code == 0
    assert err == ""
    head = out.splitlines()[0]
    assert "molecule: H2" in head
    assert "basis: sto-3g" in head
    assert "mapping: parity" in head
    assert "active space: (2e, 2o)" in head
    assert "qubits: 4" in head
    assert "seed: 0" in head
    hf_line = [ln for ln in out.splitlines() if ln.startswith("hf")]
    assert len(hf_line) == 1
    assert "-1.1169989969" in hf_line[0]
    assert "yes" in hf_line[0]


def test_json_document_shape(capsys):
    code, out, _ = run_cli(capsys, "--molecule", "h2",
                           "--method", "hf,fci", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["tool"]["name"] == "qelectra"
    assert doc["molecule"] == "H2"
    assert doc["formula"] == "H2"
    assert doc["basis"] == "sto-3g"
    assert doc["mapping"] == "parity"
    assert doc["active_space"] == {"n_electrons": 2, "n_orbitals": 2}
    assert doc["n_qubits"] == 4
    assert doc["seed"] == 0
    assert doc["shots"] is None
    assert doc["optimizer"] is None
    assert doc["notes"] == []
    assert set(doc["methods"]) == {"hf", "fci"}
    assert doc["methods"]["hf"]["energy_hartree"] == pytest.approx(
        -1.1169989968520082, abs=1e-10)
    assert doc["methods"]["fci"]["energy_hartree"] == pytest.approx(
        -1.1373060359051401, abs=1e-9)
    assert doc["methods"]["fci"]["converged"] is True
    # canonical serialization: re-dumping reproduces the exact bytes
    assert out.strip() == json.dumps(doc, indent=2, sort_keys=True)


def test_csv_rows(capsys):
    code, out, _ = run_cli(capsys, "--molecule", "h2",
                           "--method", "hf,fci", "--output", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "method,energy_hartree,iterations,evaluations,converged"
    assert len(lines) == 3
    method, energy, iters, evals, converged = lines[1].split(",")
    assert method == "hf"
    assert float(energy) == pytest.approx(-1.1169989968520082, abs=1e-10)
    assert int(iters) >= 1
    assert converged == "true"
    assert lines[2].startswith("fci,")
    assert lines[2].endswith(",0,0,true")


def test_json_output_is_byte_stable(capsys):
    args = ("--molecule", "h2", "--method", "hf,vqe,fci",
            "--output", "json", "--seed", "3")
    code_a, out_a, _ = run_cli(capsys, *args)
    code_b, out_b, _ = run_cli(capsys, *args)
    assert code_a == code_b == 0
    assert out_a == out_b
    doc = json.loads(out_a)
    assert doc["optimizer"] == "spsa"
    assert doc["seed"] == 3
    assert doc["methods"]["vqe"]["energy_hartree"] == pytest.approx(
        doc["methods"]["fci"]["energy_hartree"], abs=1e-3)


def test_unconverged_vqe_sets_exit_code(capsys, monkeypatch):
    monkeypatch.setitem(cli.VQE_DEFAULT_ITERATIONS, "spsa", 1)
    code, out, _ = run_cli(capsys, "--molecule", "h2", "--method", "vqe",
                           "--output", "json")
    assert code == 2
    doc = json.loads(out)
    assert doc["methods"]["vqe"]["converged"] is False


def test_gd_optimizer_converges_tightly(capsys):
    code, out, _ = run_cli(capsys, "--molecule", "h2",
                           "--method", "vqe,fci", "--optimizer", "gd",
                           "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["optimizer"] == "gd"
    assert doc["methods"]["vqe"]["energy_hartree"] == pytest.approx(
        doc["methods"]["fci"]["energy_hartree"], abs=1e-6)


@pytest.mark.parametrize("argv,fragment", [
    (("--molecule", "benzene"), "not a shipped molecule"),
    (("--molecule", "h2", "--method", "dft"), "out of scope"),
    (("--molecule", "h2", "--method", "ccsd"), "unknown method"),
    (("--molecule", "h2", "--method", " , "), "at least one"),
    (("--molecule", "h2", "--mapping", "steane"), "unknown mapping"),
    (("--molecule", "h2", "--active-space", "8"), "NE,NO"),
    (("--molecule", "h2", "--active-space", "a,b"), "two integers"),
    (("--molecule", "h2", "--active-space", "0,2"), "positive"),
    (("--molecule", "h2", "--shots", "0"), "positive"),
    (("--molecule", "h2", "--shots", "lots"), "exact"),
    (("--molecule", "h2", "--scan", "1.2,1.6"), "START,STOP,STEPS"),
    (("--molecule", "h2", "--scan", "1.2,1.6,zero"), "integer"),
    (("--molecule", "h2", "--scan", "0.0,1.6,3"), "positive"),
    (("--molecule", "h2", "--scan", "1.2,1.6,0"), "at least one step"),
    (("--molecule", "h2o", "--scan", "1.2,1.6,3"), "diatomic"),
    (("--molecule", "h2", "--scan", "1.2,1.6,3", "--fcidump", "x.fcidump"),
     "single-run"),
    (("--molecule", "ch4", "--method", "fci", "--active-space", "8,8"),
     "--active-space"),
])
def test_input_errors_exit_one(capsys, argv, fragment):
    code, out, err = run_cli(capsys, *argv)
    assert code == 1
    assert "error:" in err
    assert fragment in err


def test_unknown_flag_exits_one(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["--molecule", "h2", "--frobnicate"])
    assert info.value.code == 1
    assert "usage" in capsys.readouterr().err


def test_missing_molecule_flag_exits_one(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main([])
    assert info.value.code == 1


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["--version"])
    assert info.value.code == 0
    assert "qelectra" in capsys.readouterr().out


def test_scan_csv_grid(capsys, monkeypatch):
    monkeypatch.setenv("QELECTRA_THREADS", "2")
    code, out, _ = run_cli(capsys, "--molecule", "h2",
                           "--scan", "1.2,1.6,3", "--method", "hf,fci",
                           "--output", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "r_bohr,method,energy"
    assert len(lines) == 1 + 3 * 2
    grid = [float(ln.split(",")[0]) for ln in lines[1:]]
    assert grid == sorted(grid)
    assert set(grid) == {1.2, 1.4, 1.6}
    for ln in lines[1:]:
        r, method, energy = ln.split(",")
        assert method in ("hf", "fci")
        assert -1.2 < float(energy) < -0.9


def test_scan_json_shape(capsys):
    code, out, _ = run_cli(capsys, "--molecule", "h2",
                           "--scan", "1.2,1.6,3", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["scan"] == {"start_bohr": 1.2, "stop_bohr": 1.6, "steps": 3}
    assert len(doc["points"]) == 3
    first = doc["points"][0]
    assert first["r_bohr"] == 1.2
    assert first["converged"] is True
    assert "hf" in first["methods"]


def test_scan_table_columns(capsys):
    code, out, _ = run_cli(capsys, "--molecule", "h2",
                           "--scan", "1.3,1.5,2")
    assert code == 0
    header = out.splitlines()[0]
    assert "r (Bohr)" in header
    assert "hf (Ha)" in header
    assert "1.300000" in out
    assert "1.500000" in out


def test_fcidump_export(capsys, tmp_path):
    path = tmp_path / "lih_window.fcidump"
    code, _, _ = run_cli(capsys, "--molecule", "lih", "--fcidump", str(path))
    assert code == 0
    h, eri, core, norb, n_elec, ms2 = read_fcidump(str(path))
    assert norb == 5
    assert n_elec == 2
    assert ms2 == 0
    assert h.shape == (5, 5)
    # frozen lithium 1s pulls the core constant well below the bare
    # nuclear repulsion
    assert core < 0.0


def test_reference_table_rendering(capsys):
    code, out, _ = run_cli(capsys, "--molecule", "lih", "--reference-table")
    assert code == 0
    assert "published reference (Ha)" in out
    assert "-7.9817676644" in out
    dft_rows = [ln for ln in out.splitlines() if ln.startswith("dft")]
    assert len(dft_rows) == 1
    assert "-8.0681922929" in dft_rows[0]
    assert "display-only" in out


def test_reference_table_without_data(capsys):
    code, out, _ = run_cli(capsys, "--molecule", "h2", "--reference-table")
    assert code == 0
    assert "no published reference values for H2" in out
    assert "published reference (Ha)" not in out


def test_reference_table_json(capsys):
    code, out, _ = run_cli(capsys, "--molecule", "lih", "--output", "json",
                           "--reference-table")
    assert code == 0
    doc = json.loads(out)
    assert doc["reference"]["hf"] == pytest.approx(-7.981767664359352)
    assert any("display-only" in note for note in doc["notes"])


def test_reference_table_ignored_for_csv(capsys):
    code, out, err = run_cli(capsys, "--molecule", "lih", "--output", "csv",
                             "--reference-table")
    assert code == 0
    assert "ignored for csv" in err
    assert "reference" not in out


def test_active_space_override(capsys):
    code, out, _ = run_cli(capsys, "--molecule", "lih", "--method", "hf,fci",
                           "--active-space", "2,2", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["active_space"] == {"n_electrons": 2, "n_orbitals": 2}
    assert doc["n_qubits"] == 4
    assert doc["methods"]["fci"]["energy_hartree"] < \
        doc["methods"]["hf"]["energy_hartree"]


def test_shot_based_run_is_labeled(capsys):
    code, out, _ = run_cli(capsys, "--molecule", "h2", "--method", "vqe",
                           "--shots", "64", "--output", "json")
    assert code in (0, 2)
    doc = json.loads(out)
    assert doc["shots"] == 64
    assert any("sampled estimates" in note for note in doc["notes"])


def test_xyz_file_argument(capsys, tmp_path):
    xyz = tmp_path / "stretched.xyz"
    xyz.write_text("2\nhydrogen at 0.80 Angstrom\n"
                   "H 0.0 0.0 0.0\nH 0.0 0.0 0.80\n")
    code, out, _ = run_cli(capsys, "--molecule", str(xyz),
                           "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["formula"] == "H2"
    assert doc["methods"]["hf"]["energy_hartree"] < -1.0
