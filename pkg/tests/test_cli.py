import json
import subprocess
import sys

import pytest

from partreg.cli import main
from partreg.linalg import Matrix
from partreg.regularity import ColumnsPropertyCertificate, verify_certificate
from partreg.systems import schur


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_cp_schur(capsys):
    code, out, _ = run_cli(capsys, "check-cp", "schur")
    assert code == 0
    payload = json.loads(out)
    assert payload["columns_property"] is True
    cert = ColumnsPropertyCertificate.from_json_dict(payload["certificate"])
    assert verify_certificate(schur(), cert)


def test_check_cp_vdw(capsys):
    code, out, _ = run_cli(capsys, "check-cp", "vdw:4")
    assert code == 0 and json.loads(out)["columns_property"]


def test_check_cp_matrix_file_absent(tmp_path, capsys):
    path = tmp_path / "ones-1x2.json"
    path.write_text(Matrix.from_rows([[1, 1]]).to_json())
    code, out, _ = run_cli(capsys, "check-cp", "--matrix", str(path))
    assert code == 1
    assert json.loads(out)["certificate"] is None


def test_check_cp_infinite_system_is_an_error(capsys):
    code, _, err = run_cli(capsys, "check-cp", "sec2")
    assert code == 2 and "infinite" in err


def test_check_cp_capacity_error(capsys):
    code, _, err = run_cli(capsys, "check-cp", "folkman:5")
    assert code == 2 and "cap" in err


def test_zero_subset_schur(capsys):
    code, out, _ = run_cli(capsys, "zero-subset", "schur")
    assert code == 0
    assert json.loads(out)["subset"] == [0, 2]


def test_zero_subset_augmented_none(capsys):
    code, out, _ = run_cli(capsys, "zero-subset", "sec2-augmented", "--cols", "16")
    assert code == 1
    assert json.loads(out)["subset"] is None


def test_zero_subset_remark_none(capsys):
    code, out, _ = run_cli(capsys, "zero-subset", "remark", "--cols", "16")
    assert code == 1
    assert json.loads(out)["subset"] is None


def test_color_digit(capsys):
    code, out, _ = run_cli(capsys, "color", "digit:q=5", "12", "50", "125")
    assert code == 0
    assert out.splitlines() == ["2", "2", "1"]


def test_color_tau(capsys):
    code, out, _ = run_cli(capsys, "color", "tau", "1", "5", "1/3")
    assert out.splitlines() == ["0", "2", "1"]


def test_color_psi(capsys):
    code, out, _ = run_cli(capsys, "color", "psi", "1", "2", "3/2")
    assert out.splitlines() == ["0", "1", "1"]


def test_color_domain_error(capsys):
    code, _, err = run_cli(capsys, "color", "tau", "-1")
    assert code == 2 and "positive" in err


def test_search_command(capsys):
    code, out, _ = run_cli(capsys, "search", "schur", "--coloring", "parity",
                           "-N", "10")
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "solution"
    assert payload["assignment"] == {"x": 2, "y": 2, "z": 4}
    assert "ms" not in payload


def test_search_timing_flag(capsys):
    code, out, _ = run_cli(capsys, "--timing", "search", "schur",
                           "--coloring", "parity", "-N", "10")
    assert "ms" in json.loads(out)


def test_forcing_command(capsys):
    code, out, _ = run_cli(capsys, "forcing", "schur", "-k", "2", "--cap", "10")
    payload = json.loads(out)
    assert payload["forced_at"] == 5 and payload["avoiding"] is None


def test_demo_command(capsys):
    code, out, _ = run_cli(capsys, "demo", "truncation", "-M", "0", "-k", "1",
                           "--cap", "5")
    payload = json.loads(out)
    assert payload["forced_at"] == 3 and payload["equations"] == 1


def test_blocking_command(capsys):
    code, out, _ = run_cli(capsys, "blocking", "tau-gap", "-H", "16")
    payload = json.loads(out)
    assert payload["counterexample"] is None and payload["checked"] > 0


def test_unknown_system_exits_2(capsys):
    code, _, err = run_cli(capsys, "check-cp", "mystery")
    assert code == 2 and "unknown system" in err


def test_out_file(tmp_path, capsys):
    dest = tmp_path / "result.json"
    code, out, _ = run_cli(capsys, "--out", str(dest), "check-cp", "schur")
    assert dest.read_text() == out


def test_pretty_appends_human_lines(capsys):
    _, out, _ = run_cli(capsys, "--pretty", "zero-subset", "schur")
    assert "zero-sum columns: {0,2}" in out


CASES = [
    ["check-cp", "schur"],
    ["check-cp", "vdw:4"],
    ["zero-subset", "schur"],
    ["zero-subset", "sec2-augmented", "--cols", "24"],
    ["color", "digit:q=5", "12", "50", "125"],
    ["search", "schur", "--coloring", "parity", "-N", "10"],
    ["forcing", "schur", "-k", "2", "--cap", "10"],
    ["demo", "truncation", "-M", "0", "-k", "1", "--cap", "5"],
    ["blocking", "tau-gap", "-H", "16"],
    ["blocking", "carry-blocking", "-B", "5"],
]


@pytest.mark.parametrize("argv", CASES, ids=lambda a: " ".join(a))
def test_cli_byte_determinism(argv):
    """Re-running a command with an identical config is byte-identical."""
    runs = [subprocess.run([sys.executable, "-m", "partreg.cli", *argv],
                           capture_output=True, timeout=120) for _ in range(2)]
    assert runs[0].returncode == runs[1].returncode
    assert runs[0].stdout == runs[1].stdout
    assert runs[0].stdout
