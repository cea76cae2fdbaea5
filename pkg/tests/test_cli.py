import json
import re

import pytest

from exlen.errors import ExitCode
from exlen.main import main, parse_config


def run(capsys, *argv):
    code = main([str(arg) for arg in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    for variable in ("EXLEN_MAX_INDECS", "EXLEN_MULT_CAP", "EXLEN_SD_BOUND", "EXLEN_JOBS", "EXLEN_LOG_LEVEL"):
        monkeypatch.delenv(variable, raising=False)
    # keep load_dotenv from picking up a developer's .env
    monkeypatch.chdir(tmp_path)


def test_validate_ok(capsys, corpus_dir):
    code, out, _ = run(capsys, "validate", corpus_dir / "mod_ka2.json")
    assert code == ExitCode.OK
    assert out == "OK mod_kA2: 3 indecomposables, 1 conflations\n"


def test_validate_reports_violations(capsys, corpus_dir):
    code, out, _ = run(capsys, "validate", corpus_dir / "broken_stability.json")
    assert code == ExitCode.VALIDATION
    assert out.startswith("FAIL validation")
    assert "stability equality at conflations[" in out


def test_validation_failure_stops_other_commands(capsys, corpus_dir):
    code, _, err = run(capsys, "tors", corpus_dir / "broken_stability.json")
    assert code == ExitCode.VALIDATION
    assert "stability equality" in err


def test_missing_input_is_a_usage_error(capsys, tmp_path):
    code, _, err = run(capsys, "validate", tmp_path / "nope.json")
    assert code == ExitCode.USAGE
    assert "does not exist" in err


def test_unknown_command_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == ExitCode.USAGE


def test_bad_environment_override(capsys, monkeypatch, corpus_dir):
    monkeypatch.setenv("EXLEN_MAX_INDECS", "lots")
    code, _, err = run(capsys, "tors", corpus_dir / "mod_ka2.json")
    assert code == ExitCode.USAGE
    assert "EXLEN_MAX_INDECS" in err


def test_environment_override_applies(monkeypatch, corpus_dir):
    monkeypatch.setenv("EXLEN_SD_BOUND", "6")
    config, verbose = parse_config(["check", str(corpus_dir / "mod_ka2.json"), "-vv"])
    assert config.sd_bound == 6
    assert config.max_indecs == 22
    assert verbose == 2


def test_enumeration_bound_is_a_contract_failure(capsys, corpus_dir):
    code, _, err = run(capsys, "tors", corpus_dir / "a327.json", "--max-indecs", "4")
    assert code == ExitCode.CONTRACT
    assert "refusing to enumerate" in err


def test_tors_count_and_listing(capsys, corpus_dir):
    assert run(capsys, "tors", corpus_dir / "a327.json", "--count")[1] == "14\n"
    code, out, _ = run(capsys, "tors", corpus_dir / "mod_ka2.json")
    assert code == ExitCode.OK
    assert out.splitlines() == ["{}", "{S1}", "{S2}", "{S1,P1}", "{S1,S2,P1}"]


def test_tors_pairs(capsys, corpus_dir):
    code, out, _ = run(capsys, "tors", corpus_dir / "mod_ka2.json", "--pairs")
    assert code == ExitCode.OK
    assert out.splitlines()[1] == "{S1}\t{S2,P1}"


def test_json_output(capsys, corpus_dir):
    code, out, _ = run(capsys, "tors", corpus_dir / "mod_ka2.json", "--json")
    payload = json.loads(out)
    assert payload["command"] == "tors"
    assert payload["data"]["count"] == 5
    assert "text" not in payload


def test_output_file(capsys, corpus_dir, tmp_path):
    target = tmp_path / "tors.txt"
    code, out, _ = run(capsys, "tors", corpus_dir / "mod_ka2.json", "--count", "-o", target)
    assert out == ""
    assert target.read_text() == "5\n"


def test_hasse_with_dot(capsys, corpus_dir, tmp_path):
    dot = tmp_path / "ka2.dot"
    code, out, _ = run(capsys, "hasse", corpus_dir / "mod_ka2.json", "--dot", dot)
    assert code == ExitCode.OK
    assert "{S1,P1} -> {S1}\tP1" in out.splitlines()
    text = dot.read_text()
    assert text.startswith("digraph mod_kA2 {")
    assert "rankdir=TB" in text
    assert re.search(r'"\{S1,P1\}" -> "\{S1\}"\s*\[label="?P1"?\];', text)
    assert text.count("->") == 5


def test_strata_and_simples(capsys, corpus_dir):
    code, out, _ = run(capsys, "strata", corpus_dir / "ka2_weighted.json")
    assert code == ExitCode.OK
    assert "theta1\t{S1}" in out
    assert "length wide\tno" in out
    assert run(capsys, "simples", corpus_dir / "mod_ka2.json")[1] == "{S1,S2}\n"
    assert run(capsys, "simples", corpus_dir / "mod_ka2.json", "--sub", "S1")[1] == "{S1}\n"


def test_semibricks_count(capsys, corpus_dir):
    assert run(capsys, "semibricks", corpus_dir / "a327.json", "--count")[1] == "14\n"


def test_check_prints_brick_table(capsys, corpus_dir):
    code, out, _ = run(capsys, "check", corpus_dir / "mod_ka2.json")
    assert code == ExitCode.OK
    assert "brick\tjirr\tmirr" in out
    assert "P1\t{S1,P1}\t{S1}" in out


def test_check_flags_nonstandard_presentations(capsys, corpus_dir):
    code, out, _ = run(capsys, "check", corpus_dir / "nonstandard.json")
    assert code == ExitCode.CONTRACT
    assert "FAIL standard" in out


def test_intervals(capsys, corpus_dir):
    code, out, _ = run(capsys, "intervals", corpus_dir / "mod_ka2.json")
    assert code == ExitCode.OK
    assert "{S1}\t{S1,P1}\t2\t{P1}\tP1" in out.splitlines()


def test_tautilt_table(capsys, corpus_dir):
    code, out, _ = run(capsys, "tautilt", corpus_dir / "dual_numbers.json", "--table")
    assert code == ExitCode.OK
    assert out.splitlines()[0] == "tors\ttorf\tP(T)\tI(F)\tsupport\tcosupport"
    assert "{S,P}\t{}\t{P}\t{}\tyes\tyes" in out.splitlines()


def test_report_on_a_broken_round_trip(capsys, corpus_dir):
    code, out, _ = run(capsys, "report", corpus_dir / "missing_conflation.json")
    assert code == ExitCode.CONTRACT
    assert "torsion pair round trip" in out


def test_selftest_replays_the_bundled_corpus(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == ExitCode.OK, out
    assert out.splitlines()[-1] == "10/10 corpora match"


def test_selftest_reports_mismatches(capsys, corpus_dir, tmp_path):
    (tmp_path / "expected").mkdir()
    (tmp_path / "mod_ka2.json").write_text((corpus_dir / "mod_ka2.json").read_text())
    (tmp_path / "expected" / "mod_ka2.json").write_text(json.dumps(
        {"corpus": "mod_ka2.json", "exit_code": 0, "facts": {"tors_count": 6}, "rules": []}
    ))
    code, out, _ = run(capsys, "selftest", "--corpus-dir", tmp_path)
    assert code == ExitCode.SELFTEST
    assert "MISMATCH mod_ka2: fact tors_count is 5, expected 6" in out


def test_selftest_without_expectations(capsys, tmp_path):
    code, _, _ = run(capsys, "selftest", "--corpus-dir", tmp_path)
    assert code == ExitCode.SELFTEST
