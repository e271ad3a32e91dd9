import subprocess
import sys

import pytest

from hallalg.cli import main


A1_CONFIG = "name = a1\nvertices = 1\np = 2\n"
A2_CONFIG = "name = a2\nvertices = 2\np = 2\narrows:\n  1 -> 2\n"


@pytest.fixture
def a1_cfg(tmp_path):
    path = tmp_path / "a1.quiver"
    path.write_text(A1_CONFIG)
    return str(path)


@pytest.fixture
def a2_cfg(tmp_path):
    path = tmp_path / "a2.quiver"
    path.write_text(A2_CONFIG)
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_objects_heart(capsys, a1_cfg, a2_cfg):
    code, out, _ = run_cli(capsys, "objects", "--quiver", a1_cfg, "--max-dim", "2")
    assert code == 0
    labels = [line.split("\t")[0] for line in out.strip().splitlines()]
    assert labels == ["0", "S1", "S1^2"]

    code, out, _ = run_cli(capsys, "objects", "--quiver", a2_cfg, "--max-dim", "2")
    assert code == 0
    assert len(out.strip().splitlines()) == 7
    assert "X12\t|Aut| = 1" in out


def test_objects_graded(capsys, a1_cfg):
    code, out, _ = run_cli(capsys, "objects", "--quiver", a1_cfg,
                           "--degrees", "0..1", "--max-dim", "1")
    assert code == 0
    labels = [line.split("\t")[0] for line in out.strip().splitlines()]
    assert sorted(labels) == sorted(["0", "S1[0]", "S1[1]", "S1[1]+S1[0]"])


def test_multiply_modes_agree(capsys, a1_cfg):
    code, classical, _ = run_cli(capsys, "multiply", "S1", "S1",
                                 "--quiver", a1_cfg, "--mode", "classical")
    assert code == 0
    assert classical.strip() == "S1 S1 S1^2 3/1"

    code, derived, _ = run_cli(capsys, "multiply", "S1", "S1[1]",
                               "--quiver", a1_cfg, "--mode", "derived")
    assert code == 0
    code, oracle, _ = run_cli(capsys, "multiply", "S1", "S1[1]",
                              "--quiver", a1_cfg, "--mode", "oracle")
    assert code == 0
    assert derived == oracle
    assert "S1[1]+S1[0] 1/2" in derived

    # heart inputs agree across all three modes up to the degree tag
    code, derived0, _ = run_cli(capsys, "multiply", "S1", "S1",
                                "--quiver", a1_cfg, "--mode", "derived")
    code, oracle0, _ = run_cli(capsys, "multiply", "S1", "S1",
                               "--quiver", a1_cfg, "--mode", "oracle")
    assert derived0 == oracle0 == "S1[0] S1[0] S1^2[0] 3/1\n"


def test_multiply_q_flag(capsys, a1_cfg):
    code, out, _ = run_cli(capsys, "multiply", "S1", "S1",
                           "--quiver", a1_cfg, "--q", "3")
    assert code == 0
    assert out.strip() == "S1 S1 S1^2 4/1"


def test_exit_code_label_error(capsys, a1_cfg):
    code, _, err = run_cli(capsys, "multiply", "S9", "S1", "--quiver", a1_cfg)
    assert code == 2
    assert "S9" in err


def test_exit_code_config_error(capsys, tmp_path):
    bad = tmp_path / "bad.quiver"
    bad.write_text("vertices = 2\narrows:\n  1 -> 9\n")
    code, _, err = run_cli(capsys, "objects", "--quiver", str(bad))
    assert code == 2
    assert "out of range" in err
    code, _, err = run_cli(capsys, "objects", "--quiver", str(tmp_path / "no.quiver"))
    assert code == 2


def test_exit_code_resource_bound(capsys, a1_cfg):
    code, _, err = run_cli(capsys, "multiply", "S1^9", "S1^9",
                           "--quiver", a1_cfg)
    assert code == 3
    assert "bound" in err


def test_exit_code_infinite_type(capsys, tmp_path):
    kron = tmp_path / "kronecker.quiver"
    kron.write_text("vertices = 2\narrows:\n  1 -> 2\n  1 -> 2\n")
    code, _, err = run_cli(capsys, "objects", "--quiver", str(kron))
    assert code == 2
    assert "finite representation type" in err


def test_verify_suites_pass(capsys, a1_cfg, a2_cfg):
    code, out, _ = run_cli(capsys, "verify", "assoc", "--quiver", a2_cfg,
                           "--max-dim", "3")
    assert code == 0
    assert "PASS" in out
    code, out, _ = run_cli(capsys, "verify", "unit", "--quiver", a1_cfg,
                           "--max-dim", "2", "--degrees", "0..1")
    assert code == 0
    code, out, _ = run_cli(capsys, "verify", "homotopy", "--quiver", a1_cfg,
                           "--seed", "42")
    assert code == 0
    code, out, _ = run_cli(capsys, "verify", "oracle-eq", "--quiver", a1_cfg,
                           "--max-dim", "1", "--degrees", "0..1")
    assert code == 0
    assert "oracle equivalence" in out


def test_verify_degree_parse_error(capsys, a1_cfg):
    code, _, err = run_cli(capsys, "verify", "assoc", "--quiver", a1_cfg,
                           "--degrees", "zero..one")
    assert code == 2


def test_table_write_and_cache(capsys, tmp_path, a1_cfg):
    out_path = tmp_path / "table.txt"
    code, _, _ = run_cli(capsys, "table", "--quiver", a1_cfg,
                         "--max-dim", "2", "--out", str(out_path))
    assert code == 0
    first = out_path.read_bytes()
    assert b"S1 S1 S1^2 3/1" in first
    # rerun with the cache present: byte-identical output
    code, _, _ = run_cli(capsys, "table", "--quiver", a1_cfg,
                         "--max-dim", "2", "--out", str(out_path))
    assert code == 0
    assert out_path.read_bytes() == first


def test_table_empty_bounds(capsys, tmp_path, a1_cfg):
    out_path = tmp_path / "empty.txt"
    code, _, _ = run_cli(capsys, "table", "--quiver", a1_cfg,
                         "--max-dim", "-1", "--out", str(out_path))
    assert code == 0
    text = out_path.read_text()
    header, _, records = text.partition("---\n")
    assert "quiver = a1" in header
    assert records.strip() == ""


def test_verify_failure_exit_code(capsys, a1_cfg, monkeypatch):
    from hallalg import cli
    from hallalg.verify import Report

    failing = Report("assoc")
    failing.fail("synthetic counterexample at (a, b, c)")
    monkeypatch.setattr(cli, "run_suite", lambda *a, **k: failing)
    code, out, _ = run_cli(capsys, "verify", "assoc", "--quiver", a1_cfg)
    assert code == 1
    assert "synthetic counterexample" in out


def test_max_enum_flag(capsys, a1_cfg):
    # the four-term census for S^2 against S^2[1] needs 2^4 candidates
    code, _, err = run_cli(capsys, "multiply", "S1^2", "S1^2[1]",
                           "--quiver", a1_cfg, "--mode", "derived",
                           "--max-enum", "4")
    assert code == 3
    assert "bound" in err or "candidates" in err


def test_unknown_suite_rejected(a1_cfg):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "bogus", "--quiver", a1_cfg])
    assert exc.value.code == 2


def test_console_entry_point(a1_cfg):
    proc = subprocess.run(
        [sys.executable, "-m", "hallalg.cli", "multiply", "S1", "S1",
         "--quiver", a1_cfg],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "S1 S1 S1^2 3/1" in proc.stdout
