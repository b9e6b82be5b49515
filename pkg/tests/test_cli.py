import csv
import io
import json
from fractions import Fraction

import pytest

from strong_birthday.cli import main
from strong_birthday.exact import format_decimal, parse_rational


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestProb:
    def test_all_methods_match(self, capsys):
        code, out, _ = run(capsys, "prob", "--m", "3", "--n", "2", "--k", "0", "--method", "all")
        assert code == 0
        lines = out.splitlines()
        assert [ln.split()[0] for ln in lines[1:4]] == ["formula", "dp", "stirling"]
        assert all(ln.split()[-1] == "1/3" for ln in lines[1:4])
        assert lines[-1] == "MATCH"

    def test_classic_birthday_twenty_digits(self, capsys):
        code, out, _ = run(capsys, "prob", "--m", "365", "--n", "23", "--k", "23",
                           "--method", "formula")
        assert code == 0
        assert "0.49270276567601459277" in out

    def test_triple_share_impossible(self, capsys):
        code, out, _ = run(capsys, "prob", "--m", "7", "--n", "2", "--r", "3",
                           "--method", "stirling", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["results"][0]["exact"] == "0/1"

    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "prob", "--m", "365", "--n", "3064", "--r", "2",
                           "--method", "stirling", "--format", "json")
        assert code == 0
        entry = json.loads(out)["results"][0]
        assert format_decimal(parse_rational(entry["exact"]), 20) == entry["decimal"]

    def test_scaled_mode(self, capsys):
        code, out, err = run(capsys, "prob", "--m", "365", "--n", "3064", "--method", "all",
                             "--mode", "scaled", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert [e["method"] for e in payload["results"]] == ["formula", "stirling"]
        assert payload["results"][1]["mode"] == "scaled"
        assert payload["verdict"] == "MATCH"
        assert "dp skipped" in err

    def test_k_nonzero_all(self, capsys):
        code, out, _ = run(capsys, "prob", "--m", "4", "--n", "6", "--k", "2")
        assert code == 0
        assert out.count("45/128") == 2 and out.rstrip().endswith("MATCH")

    def test_emit_layers(self, capsys):
        code, _, err = run(capsys, "prob", "--m", "3", "--n", "2", "--method", "dp",
                           "--emit-layers")
        assert code == 0
        rows = list(csv.reader(io.StringIO(err)))
        assert rows == [["n", "total"], ["0", "1"], ["1", "3"], ["2", "9"]]

    @pytest.mark.parametrize("argv", [
        ["--m", "3", "--n", "2", "--k", "0", "--method", "stirling"],
        ["--m", "3", "--n", "2", "--k", "0", "--r", "2"],
        ["--m", "3", "--n", "2", "--r", "3", "--method", "formula"],
        ["--m", "3", "--n", "2", "--method", "dp", "--mode", "scaled"],
        ["--m", "0", "--n", "2"],
        ["--m", "3", "--n", "2", "--r", "1"],
    ])
    def test_usage_errors(self, capsys, argv):
        with pytest.raises(SystemExit) as exc:
            main(["prob", *argv])
        assert exc.value.code == 2


class TestMinN:
    def test_365(self, capsys):
        code, out, _ = run(capsys, "min-n", "--m", "365", "--p", "0.5")
        assert code == 0
        assert out.splitlines()[0] == "3064"
        assert "certification:" in out

    def test_366_high_threshold(self, capsys):
        code, out, _ = run(capsys, "min-n", "--m", "366", "--p", "0.999", "--format", "json")
        assert code == 0
        rec = json.loads(out)
        assert rec["n_min"] == 5686
        assert parse_rational(rec["prob_at_exact"]) >= Fraction(999, 1000)
        assert parse_rational(rec["prob_below_exact"]) < Fraction(999, 1000)

    def test_single_day(self, capsys):
        code, out, _ = run(capsys, "min-n", "--m", "1", "--p", "0.5")
        assert code == 0 and out.splitlines()[0] == "2"

    @pytest.mark.parametrize("p", ["1", "1.0", "0", "abc"])
    def test_bad_threshold(self, p):
        with pytest.raises(SystemExit) as exc:
            main(["min-n", "--m", "10", "--p", p])
        assert exc.value.code == 2

    def test_scan_cap_abort(self, capsys):
        code, _, err = run(capsys, "min-n", "--m", "10", "--p", "0.5", "--scan-cap", "30")
        assert code == 3
        assert "aborted" in err


class TestTable:
    def test_json_cell(self, capsys):
        code, out, _ = run(capsys, "table", "--m-list", "10", "--p-list", "0.5",
                           "--format", "json", "--jobs", "1")
        assert code == 0
        (rec,) = json.loads(out)
        assert rec["m"] == 10 and rec["p"] == "1/2" and rec["n_min"] == 41
        assert format_decimal(parse_rational(rec["prob_at_exact"]), 20) == rec["prob_at"]

    def test_csv_header(self, capsys):
        code, out, _ = run(capsys, "table", "--m-list", "2", "--p-list", "0.5",
                           "--format", "csv", "--jobs", "1")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert list(rows[0]) == ["m", "p", "r", "n_min", "prob_at", "certification"]
        assert rows[0]["n_min"] == "2"

    def test_markdown_and_check_subset(self, capsys):
        code, out, err = run(capsys, "table", "--m-list", "10,50", "--p-list", "0.5", "0.999",
                             "--check", "--jobs", "1")
        assert code == 0
        assert out.startswith("| m | p | r | n_min |")
        assert len(out.strip().splitlines()) == 2 + 4
        assert "check: 4/4 cells match" in err

    def test_check_without_published_cells(self, capsys):
        code, _, err = run(capsys, "table", "--m-list", "11", "--p-list", "0.5", "--check",
                           "--jobs", "1")
        assert code == 1
        assert "no cell" in err

    def test_output_file(self, capsys, tmp_path):
        dest = tmp_path / "t.csv"
        code, out, _ = run(capsys, "table", "--m-list", "3", "--p-list", "1/2",
                           "--format", "csv", "--output", str(dest), "--jobs", "1")
        assert code == 0 and out == ""
        assert dest.read_text().startswith("m,p,r,n_min,prob_at,certification\n")

    def test_missing_lists(self):
        with pytest.raises(SystemExit) as exc:
            main(["table", "--m-list", "10"])
        assert exc.value.code == 2


class TestStirling:
    @pytest.mark.parametrize("argv, expected", [
        (["--n", "4", "--k", "2"], "7"),
        (["--n", "7", "--k", "2", "--r", "3"], "35"),
        (["--n", "7", "--k", "2", "--r", "3", "--labeled"], "70"),
        (["--n", "7", "--k", "3", "--r", "2"], "105"),
    ])
    def test_values(self, capsys, argv, expected):
        code, out, _ = run(capsys, "stirling", *argv)
        assert code == 0 and out.strip() == expected

    def test_bad_r(self):
        with pytest.raises(SystemExit) as exc:
            main(["stirling", "--n", "4", "--k", "2", "--r", "0"])
        assert exc.value.code == 2


class TestVerify:
    def test_small_run_includes_known_cell(self, capsys):
        code, out, _ = run(capsys, "verify", "--max-m", "3", "--max-n", "4")
        assert code == 0
        assert "m=3 n=4 P=7/27 MATCH" in out
        assert "ALL SUITES PASS" in out

    def test_seeded_monte_carlo_repeatable(self, capsys):
        argv = ["verify", "--max-m", "2", "--max-n", "3", "--seed", "42", "--mc-trials", "100000"]
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        mc = [ln for ln in first.splitlines() if ln.startswith("monte-carlo: m=")]
        assert len(mc) == 3
        assert mc == [ln for ln in second.splitlines() if ln.startswith("monte-carlo: m=")]

    def test_default_run_passes(self, capsys):
        code, out, _ = run(capsys, "verify")
        assert code == 0
        assert "[PASS] oracle-equivalence" in out
