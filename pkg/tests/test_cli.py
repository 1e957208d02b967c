import io
import json
from fractions import Fraction as F

import pytest

from relpoly.cli import integer, rational, run, sample_csv, sample_rows
from relpoly.analysis import count_inflections, parse_spec


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


class TestFlags:
    def test_rational_forms(self):
        assert rational("1/8") == F(1, 8)
        assert rational("0.125") == F(1, 8)
        assert rational("0.1") == F(1, 10)

    def test_integer_forms(self):
        assert integer("100,000,000") == 10 ** 8
        assert integer("1_000") == 1000

    def test_bad_numbers_are_usage_errors(self, capsys):
        assert call("complete", "--n", "x")[0] == 2
        assert "--n" in capsys.readouterr().err
        assert call("theorem-params", "--a", "1/0", "--b", "1/16", "--eps", "1")[0] == 2


class TestComplete:
    def test_text(self):
        assert call("complete", "--n", "3") == (0, "1 - 3q^2 + 2q^3\n")

    def test_spanning(self):
        code, text = call("complete", "--n", "4", "--basis", "spanning")
        assert code == 0 and "N = [0, 0, 0, 16, 15, 6, 1]" in text

    def test_json(self):
        code, text = call("complete", "--n", "2", "--out", "json")
        assert json.loads(text)["poly"] == {"coeffs": [["1", "1"], ["-1", "1"]]}

    def test_range(self):
        assert call("complete", "--n", "0")[0] == 2


class TestSpecCommands:
    def test_product(self):
        assert call("product", "--spec", "K3*K2") == (0, "1 - q - 3q^2 + 5q^3 - 2q^4\n")

    def test_product_too_large(self):
        assert call("product", "--spec", "K14^100000000")[0] == 1

    def test_parse_error_has_position(self, capsys):
        assert call("inflect", "--spec", "K1^2")[0] == 2
        err = capsys.readouterr().err
        assert "--spec" in err and "position" in err

    def test_inflect_known_witness(self):
        code, text = call("inflect", "--spec", "K2^5*K3^4*K4^3*K5^92")
        assert code == 0 and "inflections: 3" in text

    def test_inflect_json(self):
        code, text = call("inflect", "--spec", "K4", "--json")
        doc = json.loads(text)
        assert code == 0 and doc["sign_changes"] == 1 and len(doc["isolating_intervals"]) == 1


class TestSample:
    def test_k3(self):
        rows = sample_rows(parse_spec("K3"), 2, 3)
        assert [F(q) for q, _ in rows] == [0, F(1, 2), 1]
        assert [float(v) for _, v in rows] == [-6, 0, 6]

    def test_linear(self):
        assert all(v == "0.0" for _, v in sample_rows(parse_spec("K2"), 2, 5))

    def test_csv_layout(self):
        text = sample_csv(parse_spec("K3"), 0, 2)
        lines = text.split("\n")
        assert lines[0].startswith("# spec=K3 deriv=0 points=2")
        assert lines[1] == "q,value"
        assert "\r" not in text and text.endswith("\n")

    def test_output_file(self, tmp_path):
        target = tmp_path / "s.csv"
        code, _ = call("sample", "--spec", "K4", "--points", "5", "--output", str(target))
        assert code == 0 and target.read_text().count("\n") == 7

    def test_stable(self):
        assert call("sample", "--spec", "K3^2", "--points", "9") == call("sample", "--spec", "K3^2", "--points", "9")

    def test_too_few_points(self):
        assert call("sample", "--spec", "K3", "--points", "1")[0] == 2

    @pytest.mark.parametrize("text,points", [("K3^2*K5", 101), ("K2^2*K4^2*K14^750", 201)])
    def test_agrees_with_inflect(self, text, points):
        spec = parse_spec(text)
        rows = sample_rows(spec, 2, points, digits=30)
        signs = [(v > 0) - (v < 0) for v in (float(v) for _, v in rows)]
        signs = [s for s in signs if s]
        flips = sum(a != b for a, b in zip(signs, signs[1:]))
        assert flips <= count_inflections(spec, cross_check=False).sign_changes


class TestOtherCommands:
    def test_verify(self):
        assert call("verify", "--suite", "endpoints", "--n-max", "5")[0] == 0

    def test_verify_json(self):
        code, text = call("verify", "--suite", "sandwich", "--n-max", "4", "--json")
        assert code == 0 and "sandwich" in text

    def test_search(self):
        code, text = call("search", "--target", "1")
        assert code == 0 and json.loads(text)["success"]

    def test_search_without_fallback_can_fail(self):
        assert call("search", "--target", "4", "--budget", "3", "--no-fallback")[0] == 1

    def test_theorem_params(self):
        code, text = call("theorem-params", "--a", "1/32", "--b", "1/16", "--eps", "1/100")
        doc = json.loads(text)
        assert code == 0 and (doc["N"], doc["k"], doc["i"]) == (17, 1, 56)

    def test_theorem_params_range(self):
        assert call("theorem-params", "--a", "1/16", "--b", "1/32", "--eps", "1")[0] == 2

    def test_mc(self, tmp_path):
        g = tmp_path / "k4.txt"
        g.write_text("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
        code, text = call("mc", "--graph", str(g), "--q", "0.5", "--trials", "100,000", "--seed", "7")
        doc = json.loads(text)
        assert code == 0 and doc["exact"] == "19/32" and abs(doc["z_score"]) < 4

    def test_mc_missing_file(self, tmp_path):
        assert call("mc", "--graph", str(tmp_path / "nope"), "--q", "1/2", "--trials", "10", "--seed", "1")[0] == 2

    def test_cache(self, tmp_path):
        path = tmp_path / "c.json"
        code, text = call("cache", "--path", str(path), "show")
        assert code == 0 and json.loads(text)["exists"] is False
        path.write_text("{bad")
        assert call("cache", "--path", str(path), "show")[0] == 1
        code, text = call("cache", "--path", str(path), "clear")
        assert code == 0 and json.loads(text)["cleared"] and not path.exists()

    def test_no_command(self):
        assert call()[0] == 2
