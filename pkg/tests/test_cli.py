import json
import logging

import pytest

from core_entropy.core.config import settings
from core_entropy.main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main
from core_entropy.services.entropy_service import LOG2


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_kneading_of_angle(capsys):
    code, data = run_json(capsys, ["kneading", "--angle", "1/6"])
    assert code == EXIT_OK
    assert data["sequence"] == "1(10)"
    assert (data["preperiod"], data["period"]) == (1, 2)
    assert data["recurrent_angle"] is False
    assert data["config"]["command"] == "kneading"
    assert data["config"]["angle"] == "1/6"


def test_address_of_sequence(capsys):
    code, data = run_json(capsys, ["address", "--seq", "(1101*)"])
    assert code == EXIT_OK
    assert data["address"] == "1-3-5"
    assert (data["upper"], data["lower"]) == ("(11010)", "(11011)")
    assert data["bifurcation_period"] is None


def test_exact_entropy_of_angle(capsys):
    code, data = run_json(capsys, ["entropy", "--angle", "1/2"])
    assert code == EXIT_OK
    assert data["sequence"] == "1(0)"
    assert data["value"] == pytest.approx(LOG2, abs=1e-12)
    assert data["kind"] == "exact-spectral"
    assert data["recurrence"]["reason"] == "preperiodic"


def test_sequence_wins_over_angle(capsys):
    code, data = run_json(capsys, ["entropy", "--angle", "1/2", "--seq", "(1*)"])
    assert code == EXIT_OK
    assert data["sequence"] == "(1*)"
    assert data["value"] == 0.0


def test_estimate_flag(capsys):
    code, data = run_json(capsys, ["entropy", "--seq", "1(10)", "--estimate"])
    assert code == EXIT_OK
    assert data["kind"] == "growth-estimate"


@pytest.mark.parametrize(
    "argv",
    [
        ["entropy", "--seq", "1(2)"],
        ["entropy", "--seq", "(01)"],
        ["entropy", "--seq", "(*)"],
        ["entropy", "--angle", "0/1"],
        ["kneading"],
        ["census", "--seq", "1(0)", "--n-max", "0"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    assert main(argv) == EXIT_USAGE
    assert capsys.readouterr().out == ""


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as info:
        main(["tiling"])
    assert info.value.code == 2


def test_census_csv(capsys):
    code = main(["census", "--seq", "1(0)", "--n-max", "6", "--format", "csv"])
    lines = capsys.readouterr().out.splitlines()
    assert code == EXIT_OK
    assert lines[0].startswith("# config: ")
    assert json.loads(lines[0][len("# config: "):])["format"] == "csv"
    assert lines[1] == "depth,count"
    assert lines[2:] == ["1,0", "2,1", "3,2", "4,4", "5,8", "6,16"]


def test_renorm_reports_identity(capsys):
    code, data = run_json(capsys, ["renorm", "--seq", "(101*)"])
    assert code == EXIT_OK
    assert [c["p"] for c in data["certificates"]] == [2]
    certificate = data["certificates"][0]
    assert certificate["certified"] is True
    assert certificate["identity"]["passed"] is True
    assert data["maximal_base_chain"] == [2]


def test_uncertified_period_has_no_identity(capsys):
    code, data = run_json(capsys, ["renorm", "--seq", "11(10)"])
    assert code == EXIT_OK
    assert data["certificates"][0]["certified"] is False
    assert data["certificates"][0]["identity"] is None


def test_feigenbaum_rows(capsys):
    code, data = run_json(capsys, ["feigenbaum", "--n-max", "3"])
    assert code == EXIT_OK
    assert [row["n"] for row in data["rows"]] == [1, 2, 3]
    assert all(row["ratio"] > 1 for row in data["rows"])


def test_feigenbaum_level_defaults_to_settings(capsys, monkeypatch):
    monkeypatch.setattr(settings, "FEIGENBAUM_LEVEL", 2)
    code, data = run_json(capsys, ["feigenbaum"])
    assert code == EXIT_OK
    assert [row["n"] for row in data["rows"]] == [1, 2]
    assert data["config"]["n_max"] is None


def test_quiet_flag_keeps_info_logs_out(capsys, monkeypatch):
    monkeypatch.setattr(settings, "DEBUG", False)
    code, data = run_json(capsys, ["kneading", "--angle", "1/3", "-q"])
    assert code == EXIT_OK
    assert data["sequence"] == "(1*)"
    assert "verbose" not in data["config"]
    assert logging.getLogger().level == logging.WARNING


def test_scan_with_fit(capsys):
    code, data = run_json(capsys, ["scan", "--angle", "1/2", "--m-min", "4", "--m-max", "9"])
    assert code == EXIT_OK
    assert len(data["records"]) == 24
    assert data["fit"]["n_records"] == 24


def test_scan_without_enough_scales(capsys):
    code, data = run_json(capsys, ["scan", "--angle", "1/2", "--m-min", "4", "--m-max", "5"])
    assert code == EXIT_FAILURE
    assert data["fit"] is None
    assert len(data["records"]) == 8


def test_monotonicity_sweep(capsys):
    argv = ["monotonicity", "--seq", "(1*)", "--seq", "1(0)", "--max-terms", "6", "--n-max", "20"]
    code, data = run_json(capsys, argv)
    assert code == EXIT_OK
    assert data["passed"] is True
    assert data["pairs_checked"] >= 4
    assert data["config"]["sequences"] == ["(1*)", "1(0)"]


def test_monotonicity_needs_a_corpus(capsys):
    assert main(["monotonicity"]) == EXIT_USAGE


def test_output_file(capsys, tmp_path):
    path = tmp_path / "kneading.json"
    assert main(["kneading", "--angle", "1/3", "-o", str(path)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["sequence"] == "(1*)"
    assert "output" not in data["config"]
