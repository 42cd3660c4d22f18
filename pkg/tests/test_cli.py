import json
import sys
import types
from io import StringIO

import pytest

from sumprod import cli
from sumprod.config import get_settings
from sumprod.models.query import QueryRecord


def run(*argv):
    stdout, stderr = StringIO(), StringIO()
    code = cli.run(list(argv), stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["classify", "35"], "n=35: covered, form 2^(2m+1)(2k-1)+27, m=1 k=1\n"),
        (["classify", "12"], "n=12: covered, form 16k-4, k=1\n"),
        (["classify", "27"], "n=27: not covered\n"),
        (["sylvester", "1", "2", "3", "6", "1", "1", "1"], "f=5 g=7 h=3\n"),
        (["sylvester", "1/2", "1/2", "4", "5", "1", "1", "1"], "f=49/8 g=49/8 h=49/4\n"),
        (["sylvester", "-1/2", "1", "1", "3/2", "1", "1", "1"], "f=9/4 g=9/4 h=9/4\n"),
        (["ratio", "1", "2", "4"], "x/y, y/z, z/x = (1/2, 1/2, 4); n=5\n"),
    ],
)
def test_text_output(argv, expected):
    code, out, err = run(*argv)
    assert code == 0
    assert out == expected
    assert err == ""


def test_theorem_json():
    code, out, _ = run("theorem", "1", "1", "4", "--json")
    assert code == 0
    record = json.loads(out)
    assert record["command"] == "theorem"
    assert record["params"] == {"a": 1, "b": 1, "c": 4}
    assert record["status"] == 0
    assert record["error"] is None
    verdict = record["result"]
    assert verdict["matched"] == ["T1"]
    assert verdict["n"] == 64
    assert verdict["n_form"]["form"] == "64k"
    assert verdict["status"] == "proved_no_solutions"


def test_json_output_parses_back_into_a_record():
    _, out, _ = run("corollary", "1", "5", "--json")
    record = QueryRecord.model_validate_json(out)
    assert record.result["status"] == "unknown"
    assert record.result["matched"] == []


def test_theorem_text_mentions_verdict():
    code, out, _ = run("theorem", "1", "1", "3")
    assert code == 0
    assert "n=27" in out
    assert "status unknown" in out


def test_search_cubic_lists_solution():
    code, out, _ = run("search-cubic", "27", "--bound", "10")
    assert code == 0
    assert "(9, 9, 1)" in out


def test_search_system_json_uses_exact_rationals():
    code, out, _ = run("search-system", "1", "1", "5", "--height", "4", "--json")
    assert code == 0
    report = json.loads(out)["result"]
    assert report["equation"] == "system"
    assert ["1/2", "1/2", 4] in report["solutions"]
    assert "elapsed_seconds" not in report


def test_search_guy_text():
    code, out, _ = run("search-guy", "36", "--bound", "5")
    assert code == 0
    assert "(1, 2, 3) primitive" in out


def test_reduce_commands():
    code, out, _ = run("reduce-system", "1/2", "1/2", "4", "1", "1", "5", "--json")
    assert code == 0
    solution = json.loads(out)["result"]
    assert (solution["x"], solution["y"], solution["z"], solution["n"]) == (25, 25, 2, 125)

    code, out, _ = run("reduce-guy", "1", "2", "3")
    assert code == 0
    assert out.startswith("n=36: (10, 14, 1)")


def test_ratio_json_feeds_reduce_system():
    code, out, _ = run("ratio", "1", "2", "4", "--json")
    assert code == 0
    record = json.loads(out)
    assert record["params"] == {"x": 1, "y": 2, "z": 4}
    ratio = record["result"]
    assert ratio == {"x": "1/2", "y": "1/2", "z": 4, "n": 5}

    code, out, _ = run("reduce-system", ratio["x"], ratio["y"], str(ratio["z"]), "1", "1", str(ratio["n"]))
    assert code == 0
    assert out.startswith("n=125: (25, 25, 2)")


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "abc"],
        ["classify"],
        ["frobnicate", "1"],
        ["sylvester", "1", "2", "3", "6", "1", "1", "0.5"],
        ["sylvester", "1", "2", "3", "6", "1", "1", "-0.5"],
        ["search-cubic", "27"],
        [],
    ],
)
def test_malformed_arguments_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert out == ""
    assert err


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["classify", "0"], "positive"),
        (["reduce-guy", "1", "1", "1"], "x = y = z"),
        (["reduce-guy", "1", "1", "3"], "not a multiple"),
        (["reduce-system", "1", "1", "1", "1", "1", "3"], "x = y = z"),
        (["sylvester", "1", "1", "1", "1", "1", "1", "1"], "expected 0"),
        (["ratio", "1", "2", "3"], "not an integer"),
    ],
)
def test_domain_errors_exit_3(argv, fragment):
    code, out, err = run(*argv)
    assert code == 3
    assert out == ""
    assert fragment in err


def test_table_csv():
    code, out, _ = run("table", "--max", "16", "--csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,covered,form,k,m"
    assert len(lines) == 17
    assert lines[1] == "1,false,,,"
    assert lines[7] == "7,true,8k-1,1,"
    assert lines[16] == "16,true,32k-16,1,"


def test_table_default_text_is_csv():
    assert run("table", "--max", "40")[1] == run("table", "--max", "40", "--csv")[1]


def test_table_json():
    code, out, _ = run("table", "--max", "35", "--json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 35
    assert rows[34] == {"n": 35, "covered": True, "form": "2^(2m+1)(2k-1)+27", "k": 1, "m": 1}


def test_table_is_identical_across_worker_counts():
    single = run("--workers", "1", "table", "--max", "500")[1]
    assert run("--workers", "8", "table", "--max", "500")[1] == single


def test_global_flags_reach_settings():
    code, _, _ = run("--workers", "3", "--factor-limit", "1000", "classify", "7")
    assert code == 0
    settings = get_settings()
    assert settings.workers == 3
    assert settings.factor_limit == 1000


def test_monitor_flag_reaches_the_exporter(monkeypatch):
    calls = []
    exporter = types.SimpleNamespace(configure_azure_monitor=lambda **kwargs: calls.append(kwargs))
    monkeypatch.setitem(sys.modules, "azure.monitor.opentelemetry", exporter)
    code, out, _ = run("--monitor-connection-string", "InstrumentationKey=abc", "classify", "7")
    assert code == 0
    assert out == "n=7: covered, form 8k-1, k=1\n"
    assert calls == [{"connection_string": "InstrumentationKey=abc"}]
    assert get_settings().monitor_connection_string == "InstrumentationKey=abc"


def test_invalid_settings_exit_2():
    code, _, err = run("--workers", "0", "classify", "7")
    assert code == 2
    assert "invalid settings" in err


def test_batch(tmp_path):
    batch = tmp_path / "queries.txt"
    batch.write_text(
        "# covered classes\n"
        "classify 35\n"
        "\n"
        "theorem 1 1 4\n"
        "classify zero\n"
        "reduce-guy 1 1 1\n"
        "search-guy 36 --bound 5\n",
        encoding="utf-8",
    )
    code, out, _ = run("--batch", str(batch))
    records = [json.loads(line) for line in out.splitlines()]
    assert [r["command"] for r in records] == ["classify", "theorem", "classify", "reduce-guy", "search-guy"]
    assert [r["status"] for r in records] == [0, 0, 2, 3, 0]
    assert records[0]["result"] == {"form": "2^(2m+1)(2k-1)+27", "k": 1, "m": 1}
    assert records[1]["result"]["matched"] == ["T1"]
    assert records[2]["error"]
    assert [1, 2, 3] in records[4]["result"]["solutions"]
    assert code == 3


def test_batch_help_line_fails_alone(tmp_path, capsys):
    batch = tmp_path / "queries.txt"
    batch.write_text("classify --help\nclassify 7\n", encoding="utf-8")
    code, out, _ = run("--batch", str(batch))
    records = [json.loads(line) for line in out.splitlines()]
    assert [r["status"] for r in records] == [2, 0]
    assert records[0]["command"] == "classify"
    assert "--help" in records[0]["error"]
    assert records[1]["result"]["form"] == "8k-1"
    assert code == 2
    assert capsys.readouterr().out == ""


def test_batch_records_subcommand_after_global_flags(tmp_path):
    batch = tmp_path / "queries.txt"
    batch.write_text("--workers 2 classify 7\n--workers 2 classify x\n--workers 2\n", encoding="utf-8")
    _, out, _ = run("--batch", str(batch))
    records = [json.loads(line) for line in out.splitlines()]
    assert [(r["command"], r["status"]) for r in records] == [("classify", 0), ("classify", 2), ("", 2)]


def test_batch_rejects_subcommand(tmp_path):
    batch = tmp_path / "queries.txt"
    batch.write_text("classify 7\n", encoding="utf-8")
    code, _, err = run("--batch", str(batch), "classify", "7")
    assert code == 2
    assert "--batch" in err


def test_batch_missing_file(tmp_path):
    code, _, err = run("--batch", str(tmp_path / "missing.txt"))
    assert code == 2
    assert "cannot read" in err


def test_selftest_subset():
    code, out, _ = run("selftest", "--only", "reduction_chain", "parity_identity")
    assert code == 0
    assert "PASS reduction_chain" in out
    assert out.rstrip().endswith("selftest quick: passed")
