"""End-to-end runs of the command-line front end."""

import json

import pytest

from rowsync.cli import RunConfig, build_parser, config_from_args, main, run

CERNY3_TEXT = "3 2\n1 2 0\n1 1 2\n"


@pytest.fixture
def cerny3_path(tmp_path):
    path = tmp_path / "c3.txt"
    path.write_text(CERNY3_TEXT)
    return str(path)


def run_main(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_gen_cerny_frozen_text(capsys):
    code, out = run_main(["gen", "cerny", "--n", "3"], capsys)
    assert code == 0
    assert out == CERNY3_TEXT


def test_gen_check_round_trip(tmp_path, capsys):
    path = str(tmp_path / "c4.txt")
    assert main(["gen", "cerny", "--n", "4", "-o", path]) == 0
    assert capsys.readouterr().out == ""
    code, out = run_main(["check", path], capsys)
    assert code == 0
    assert "synchronizing: yes" in out
    assert "baaabaaab (length 9)" in out
    assert "within bound" in out


def test_check_json_document(cerny3_path, capsys):
    code, out = run_main(["check", cerny3_path, "--json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"schema_version", "command", "config", "report"}
    assert doc["schema_version"] == 1
    assert doc["command"] == "check"
    assert doc["config"]["limit"] == 24
    assert "output" not in doc["config"]
    report = doc["report"]
    assert report["synchronizing"] and report["strongly_connected"]
    assert report["shortest_length"] == 4 and report["shortest_word"] == "baab"
    assert report["bound"] == 4 and report["within_bound"] is True
    assert report["greedy_length"] >= 4 and report["cubic_reference"] == 4


def test_check_not_synchronizing(tmp_path, capsys):
    path = tmp_path / "flip.txt"
    path.write_text("2 1\n1 0\n")
    code, out = run_main(["check", str(path), "--json"], capsys)
    assert code == 0
    report = json.loads(out)["report"]
    assert report["synchronizing"] is False
    assert report["shortest_word"] is None and report["greedy_word"] is None


def test_check_respects_limit(cerny3_path, capsys):
    code, out = run_main(["check", cerny3_path, "--limit", "2"], capsys)
    assert code == 0
    assert "exact search skipped" in out
    assert "greedy reset word length" in out


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["gen", "cerny"])
    assert exc.value.code == 1


def test_missing_file_exits_one(capsys):
    assert main(["check", "/nonexistent/automaton.txt"]) == 1
    assert "error" in capsys.readouterr().err


def test_malformed_file_exits_one(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("2 2\n0 1\n")
    assert main(["check", str(path)]) == 1
    err = capsys.readouterr().err
    assert "line" in err


def test_invalid_word_exits_one(cerny3_path, capsys):
    assert main(["matrix", cerny3_path, "--word", "xyz"]) == 1
    assert main(["trace", cerny3_path, "--word", "abc,"]) == 1


def test_matrix_of_word(cerny3_path, capsys):
    code, out = run_main(["matrix", cerny3_path, "--word", "ab", "--json"], capsys)
    assert code == 0
    report = json.loads(out)["report"]
    assert report["targets"] == [1, 2, 1]
    assert report["rank"] == 2
    assert report["nonzero_columns"] == [1, 2]
    assert report["is_permutation"] is False
    assert report["grid"] == ["0 1 0", "0 0 1", "0 1 0"]


def test_matrix_default_word_is_identity(cerny3_path, capsys):
    code, out = run_main(["matrix", cerny3_path, "--json"], capsys)
    report = json.loads(out)["report"]
    assert report["word"] == "" and report["targets"] == [0, 1, 2]
    assert report["rank"] == 3 and report["is_permutation"] is True


def test_matrix_dot(cerny3_path, capsys):
    code, out = run_main(["matrix", cerny3_path, "--dot"], capsys)
    assert code == 0
    assert out.startswith("digraph")
    assert 'label="a,b"' in out


def test_trace_defaults_to_shortest_word(cerny3_path, capsys):
    code, out = run_main(["trace", cerny3_path, "--json"], capsys)
    assert code == 0
    report = json.loads(out)["report"]
    assert report["word"] == "baab"
    assert [r["r_size"] for r in report["records"]] == [2, 2, 2, 1]
    assert [r["dimension"] for r in report["records"]] == [1, 2, 3, 4]


def test_trace_human_table(cerny3_path, capsys):
    code, out = run_main(["trace", cerny3_path], capsys)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 5
    assert "dim" in lines[0]
    assert lines[-1].split()[:2] == ["4", "baab"]


def test_trace_non_synchronizing_exits_one(tmp_path, capsys):
    path = tmp_path / "flip.txt"
    path.write_text("2 1\n1 0\n")
    assert main(["trace", str(path)]) == 1
    assert "not synchronizing" in capsys.readouterr().err


def test_probe_report(cerny3_path, capsys):
    code, out = run_main(["probe", cerny3_path, "--json"], capsys)
    assert code == 0
    report = json.loads(out)["report"]
    assert report["q"] == 1
    assert report["matching"]["success"] is True
    assert report["independence_rank"] == 4
    assert report["corollary1_counterexamples"] == 1
    assert report["bound_verdict"]["status"] == "within-bound"


def test_probe_human_summary(cerny3_path, capsys):
    code, out = run_main(["probe", cerny3_path], capsys)
    assert code == 0
    assert "sink 1" in out
    assert "matching: full" in out
    assert "family rank 4 of 4 (independent)" in out
    assert "1 counterexamples" in out


def test_probe_q_mismatch_exits_one(cerny3_path, capsys):
    assert main(["probe", cerny3_path, "--q", "0"]) == 1
    assert "synchronizes to state 1" in capsys.readouterr().err


def test_probe_json_byte_identical(cerny3_path, tmp_path):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    assert main(["probe", cerny3_path, "--json", "-o", str(first)]) == 0
    assert main(["probe", cerny3_path, "--json", "-o", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_enum_two_states_one_letter(capsys):
    code, out = run_main(["enum", "--n", "2", "--k", "1", "--json"], capsys)
    assert code == 0
    report = json.loads(out)["report"]
    assert report["total_tables"] == 4
    assert report["synchronizing"] == 2
    assert report["length_histogram"] == {"1": 2}
    assert report["max_length"] == 1 and report["max_length_count"] == 2
    assert report["exceeds_bound"] == 0 and report["verdict"] == "within-bound"


def test_enum_filter_sync(capsys):
    code, out = run_main(["enum", "--n", "2", "--k", "2", "--filter", "sync", "--json"], capsys)
    assert code == 0
    report = json.loads(out)["report"]
    assert report["total_tables"] == 16
    assert report["examined"] == report["synchronizing"] == 12
    assert report["length_histogram"] == {"1": 12}


def test_enum_parallel_matches_serial(capsys):
    code, serial = run_main(["enum", "--n", "3", "--k", "2", "--json"], capsys)
    assert code == 0
    code, parallel = run_main(["enum", "--n", "3", "--k", "2", "--jobs", "3", "--json"], capsys)
    assert code == 0
    assert json.loads(serial)["report"] == json.loads(parallel)["report"]
    report = json.loads(serial)["report"]
    assert report["synchronizing"] == 549
    assert report["length_histogram"] == {"1": 153, "2": 324, "3": 48, "4": 24}


def test_enum_budget_exits_one(capsys):
    assert main(["enum", "--n", "4", "--k", "3"]) == 1
    assert "budget" in capsys.readouterr().err


def test_gen_random_reproducible(capsys):
    code, first = run_main(["gen", "random", "--n", "5", "--k", "3", "--seed", "7"], capsys)
    assert code == 0
    code, again = run_main(["gen", "random", "--n", "5", "--k", "3", "--seed", "7"], capsys)
    assert first == again
    code, other = run_main(["gen", "random", "--n", "5", "--k", "3", "--seed", "8"], capsys)
    assert first != other
    code, dot = run_main(["gen", "random", "--n", "3", "--k", "2", "--dot"], capsys)
    assert dot.startswith("digraph")


def test_config_round_trip():
    parser = build_parser()
    args = parser.parse_args(["probe", "x.txt", "--word", "ab", "--q", "1", "--json"])
    config = config_from_args(args)
    assert config == RunConfig(command="probe", path="x.txt", word="ab", q=1, json_output=True)
    assert "json_output" not in config.public_fields()


def test_run_with_config_object(cerny3_path):
    result = run(RunConfig(command="check", path=cerny3_path))
    assert result.exit_code == 0
    assert result.document["report"]["shortest_length"] == 4


def test_lemmas_clean_run(capsys):
    code, out = run_main(["lemmas", "--seed", "0", "--json"], capsys)
    assert code == 0
    suites = json.loads(out)["report"]["suites"]
    assert len(suites) == 4
    assert all(s["violations"] == [] for s in suites)
    assert {s["name"] for s in suites} == {
        "rank-monotonicity", "sum-conditions", "basis-dimension", "sink-equation"}
