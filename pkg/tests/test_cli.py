"""CLI behavior: output formats, determinism, exit codes."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout

from grapheq.cli import main


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = main(list(argv))
        except SystemExit as exc:  # argparse usage errors
            code = exc.code
    return code, out.getvalue(), err.getvalue()


def test_nash_csv_counts():
    code, out, _ = run_cli("nash", "--game", "NC00_C5", "--v0", "2/3", "--v1", "1", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    header, rows = lines[0], lines[1:]
    assert header.split(",")[:5] == ["f0", "f1", "f2", "f3", "f4"]
    assert "u0 [x6]" in header and "SW [x30]" in header
    assert len(rows) == 40
    orbit_ids = {row.split(",")[-1] for row in rows}
    assert len(orbit_ids) == 6


def test_quantum_json_fields():
    code, out, _ = run_cli("quantum", "--game", "NC01_C5")
    assert code == 0
    doc = json.loads(out)
    assert doc["p"] == "2/3"
    assert doc["bound"] == "v0/v1 >= 1/3"
    assert doc["perfectWin"] is True
    assert doc["beliefInvariant"] is True
    assert len(doc["questions"]) == 6
    marg = doc["questions"][0]["marginals"]["0"]
    assert marg == {"0": "1/2", "1": "1/2"}


def test_same_command_is_byte_identical():
    first = run_cli("nash", "--game", "NC01_C5", "--v0", "2/3", "--v1", "1", "--format", "json")
    second = run_cli("nash", "--game", "NC01_C5", "--v0", "2/3", "--v1", "1", "--format", "json")
    assert first == second


def test_json_report_rationals_are_exact():
    code, out, _ = run_cli("nash", "--game", "NC00_C5", "--v0", "2/3", "--v1", "1", "--format", "json")
    doc = json.loads(out)
    assert doc["profileCount"] == 40
    entry = doc["entries"][0]
    assert all("/" in u or u.isdigit() or u == "0" for u in entry["utilities"])
    assert doc["params"] == {"v0": "2/3", "v1": "1", "ng": "0"}


def test_kfold_json_shape():
    code, out, _ = run_cli("kfold", "--game", "NC00_C5", "--k", "2", "--v0", "2/3", "--v1", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc == {
        "csw": "23/36",
        "decayFactor": "5/6",
        "k": 2,
        "method": "decomposition",
        "qsw": "5/6",
        "ratio": "23/30",
    }


def test_kfold_bruteforce_agrees():
    _, dec, _ = run_cli("kfold", "--game", "NC00_C5", "--k", "2", "--v0", "2/3", "--v1", "1")
    _, bf, _ = run_cli(
        "kfold", "--game", "NC00_C5", "--k", "2", "--v0", "2/3", "--v1", "1", "--method", "bruteforce"
    )
    assert json.loads(dec)["csw"] == json.loads(bf)["csw"]


def test_players_needed_json():
    code, out, _ = run_cli(
        "players-needed", "--game", "NC00_C5", "--v0", "2/3", "--v1", "1", "--eps", "1/100"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["k"] == 26 and doc["playerCount"] == 130
    assert doc["decayFactor"] == "5/6"


def test_csw_command():
    code, out, _ = run_cli("csw", "--game", "NC000_C5", "--v0", "2/3", "--v1", "1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["csw"] == "28/39" and doc["cswRounded"] == "0.72"


def test_regimes_command():
    code, out, _ = run_cli("regimes", "--game", "NC00_C5", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["breakpoints"] == ["1/3", "1/2"]
    counts = [(seg["profileCount"], seg["orbitCount"]) for seg in doc["segments"]]
    assert counts == [(20, 4), (25, 4), (40, 6)]


def test_penalty_command():
    code, out, _ = run_cli(
        "penalty", "--game", "NC01_C5", "--v0", "2/3", "--v1", "1", "--ng", "4", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["profileCount"] == 2
    assert doc["quantumSW"] == "5/6"
    assert doc["socialWelfares"] == ["1/9", "5/18"]


def test_usage_error_exit_2():
    code, _, _ = run_cli("no-such-command")
    assert code == 2
    code, _, _ = run_cli("nash")  # missing --game
    assert code == 2


def test_validation_error_exit_3(tmp_path):
    code, _, err = run_cli("nash", "--game", str(tmp_path / "missing.json"), "--v0", "1/2", "--v1", "1")
    assert code == 3 and "error" in err
    # malformed parameters are validation errors too
    code, _, _ = run_cli("nash", "--game", "NC00_C5", "--v0", "2", "--v1", "1")
    assert code == 3
    code, _, _ = run_cli("nash", "--game", "NC00_C5", "--v0", "1/0", "--v1", "1")
    assert code == 3


def test_game_file_round_trip_through_cli(tmp_path):
    from grapheq import PayoffParams, builtin_game, game_to_document
    from fractions import Fraction

    doc = game_to_document(builtin_game("NC00_C5"), PayoffParams(Fraction(2, 3), Fraction(1)))
    path = tmp_path / "nc00.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, _ = run_cli("nash", "--game", str(path), "--format", "csv")
    assert code == 0
    assert len(out.strip().splitlines()) == 41  # header + 40 rows


def test_verify_subset_passes():
    code, out, _ = run_cli("verify", "--checks", "nash-counts,win-oracle")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("PASS nash-counts")
    assert lines[1].startswith("PASS win-oracle")


def test_verify_corrupted_game_file_exits_1(tmp_path):
    from grapheq import PayoffParams, builtin_game, game_to_document
    from fractions import Fraction

    doc = game_to_document(builtin_game("NC00_C5"), PayoffParams(Fraction(2, 3), Fraction(1)))
    doc["questions"][0]["w"] = "1/7"  # weights no longer sum to 1
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, _ = run_cli("verify", "--game", str(path), "--checks", "nash-counts")
    assert code == 1
    first = out.strip().splitlines()[0]
    assert first.startswith("FAIL game-file")
