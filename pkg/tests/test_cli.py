"""End-to-end command line behaviour: reports, files, exit codes."""

import json

import pytest

from loopsing.cli import main, parse_config
from loopsing.errors import InputError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture
def tree_config(tmp_path):
    path = tmp_path / "tree.cfg"
    path.write_text("kappa = [4, 3, 4, 4]\npowers = [6, 9, 3, 7]\n")
    return str(path)


@pytest.fixture
def loop_config(tmp_path):
    path = tmp_path / "loop.cfg"
    path.write_text("kappa = [2, 3, 1, 5, 1, 1]\npowers = [3, 2, 4, 3, 2, 4]\n")
    return str(path)


@pytest.fixture
def cusp_config(tmp_path):
    path = tmp_path / "cusp.cfg"
    path.write_text("# even leaf at 2\nkappa = [1, 1, 1]\npowers = [3, 4, 8]\n")
    return str(path)


class TestConfigParsing:
    def test_graph_form(self):
        config = parse_config("kappa = [1, 1]\npowers = [2, 4]\n")
        assert config.kappa == (1, 1) and config.powers == (2, 4)

    def test_polynomial_form(self):
        config = parse_config("polynomial = x1^2 + x2^2\n")
        assert config.polynomial == "x1^2 + x2^2"

    def test_mixed_forms_rejected(self):
        with pytest.raises(InputError):
            parse_config("kappa = [1]\npowers = [2]\npolynomial = x1^2\n")

    def test_unknown_key_rejected(self):
        with pytest.raises(InputError):
            parse_config("stuff = 1\n")


class TestAnalyze:
    def test_tree_report(self, capsys, tree_config):
        code, report = run(capsys, "analyze", tree_config)
        assert code == 0
        assert report["schema"] == 1
        assert report["failing_sets"] == [[1, 3]]
        assert report["predicts_nondegenerate"] is False
        assert report["weights"] == [9, 5, 18, 9, 63]
        assert report["graph"]["loop"] == [4]

    def test_polynomial_input_infers_weights(self, capsys, tmp_path):
        path = tmp_path / "poly.cfg"
        path.write_text(
            "polynomial = x4^7 + x1^6*x4 + x3^3*x4 + x2^9*x3 + x1^3*x3^2\n"
        )
        code, report = run(capsys, "analyze", str(path))
        assert code == 0
        assert report["weights"] == [9, 5, 18, 9, 63]
        assert report["predicts_nondegenerate"] is True

    def test_dot_output(self, capsys, tree_config, tmp_path):
        dot = tmp_path / "graph.dot"
        code, _ = run(capsys, "analyze", tree_config, "--dot", str(dot))
        assert code == 0
        text = dot.read_text()
        assert text.startswith("digraph") and "1 -> 4" in text


class TestComplete:
    def test_loop_completion_report(self, capsys, loop_config):
        code, report = run(capsys, "complete", loop_config)
        assert code == 0
        assert report["milnor"] == 576
        assert report["epsilons"] == ["1", "1", "1", "1"]
        assert [m["indices"] for m in report["admissible_collection"]] == [
            [3, 5], [3, 6], [5, 6], [3, 5, 6]
        ]

    def test_impossible_completion_exits_one(self, capsys, tmp_path):
        path = tmp_path / "blocked.cfg"
        # weights (3, 2, 2, 9): the pair {2, 3} needs 2 b2 + 2 b3 = 9
        path.write_text("kappa = [1, 1, 1]\npowers = [3, 3, 3]\n")
        code, report = run(capsys, "complete", str(path))
        assert code == 1
        assert report["error"]["type"] == "CompletionError"
        assert "no multipower" in report["error"]["message"]

    def test_report_is_reproducible_byte_for_byte(self, capsys, loop_config):
        main(["complete", loop_config, "--seed", "7"])
        out_a = capsys.readouterr().out
        main(["complete", loop_config, "--seed", "7"])
        out_b = capsys.readouterr().out
        assert out_a == out_b


class TestMilnor:
    def test_raw_polynomial_file(self, capsys, tmp_path):
        path = tmp_path / "poly.txt"
        path.write_text("x4^7 + x1^6*x4 + x3^3*x4 + x2^9*x3 + x1^3*x3^2\n")
        code, report = run(capsys, "milnor", str(path))
        assert code == 0
        assert report["milnor"] == 1044

    def test_degenerate_is_reported_infinite(self, capsys, tmp_path):
        path = tmp_path / "poly.txt"
        path.write_text("x4^7 + x1^6*x4 + x3^3*x4 + x2^9*x3\n")
        code, report = run(capsys, "milnor", str(path))
        assert code == 0
        assert report["milnor"] == "infinite"

    def test_basis_dump(self, capsys, tmp_path):
        path = tmp_path / "poly.txt"
        path.write_text("x1^3 + x2^2\n")
        code, report = run(capsys, "milnor", str(path), "--basis")
        assert code == 0
        assert report["milnor"] == 2
        assert report["basis"] == ["1", "x1"]

    def test_config_input_builds_the_choice_polynomial(self, capsys, cusp_config):
        code, report = run(capsys, "milnor", cusp_config)
        assert code == 0
        assert report["milnor"] == "infinite"  # the bare skeleton is degenerate


class TestResolve:
    def test_worked_resolution_report(self, capsys, cusp_config):
        code, report = run(capsys, "resolve", cusp_config, "--flip", "2")
        assert code == 0
        stage = report["stages"][0]
        assert report["resolved"] == "x1*x3^8 + x2^2*x3^4 + x1^3 + x1*x2^2 + x2*x4^2"
        assert report["resolved_reduced_weights"] == ["1/3", "1/3", "1/12", "1/3"]
        assert stage["chart2_smooth"] is True
        assert stage["bookkeeping"] == {
            "milnor_bar": 88, "invariant_dimension": 66, "fixed_locus_milnor": 22
        }
        assert stage["resolved_kappa"] == [1, 1, 1, 2]

    def test_two_flip_chain(self, capsys, tmp_path):
        path = tmp_path / "two.cfg"
        path.write_text("kappa = [1, 1, 1]\npowers = [3, 4, 4]\n")
        code, report = run(
            capsys, "resolve", str(path), "--flip", "2", "--flip", "3"
        )
        assert code == 0
        assert len(report["stages"]) == 2

    def test_missing_flip_is_an_input_error(self, capsys, cusp_config):
        code, report = run(capsys, "resolve", cusp_config)
        assert code == 2
        assert report["error"]["type"] == "InputError"

    def test_dot_writes_the_glued_graph(self, capsys, cusp_config, tmp_path):
        dot = tmp_path / "bar.dot"
        code, _ = run(capsys, "resolve", cusp_config, "--flip", "2", "--dot", str(dot))
        assert code == 0
        assert "4 -> 2" in dot.read_text()


class TestOrbifoldIso:
    def test_worked_isomorphism_report(self, capsys, cusp_config):
        code, report = run(capsys, "orbifold-iso", cusp_config, "--flip", "2")
        assert code == 0
        iso = report["isomorphism"]
        assert iso["passed"] is True
        assert iso["b1_count"] == 66 and iso["b2_count"] == 22
        assert iso["generator_square"] == "-2*x2^2*x3^4 - 2*x1*x2^2"
        assert report["bookkeeping"]["milnor_bar"] == 88

    def test_exactly_one_flip_required(self, capsys, cusp_config):
        code, report = run(
            capsys, "orbifold-iso", cusp_config, "--flip", "2", "--flip", "3"
        )
        assert code == 2


class TestErrorPaths:
    def test_missing_file_is_an_input_error(self, capsys):
        code, report = run(capsys, "analyze", "/nonexistent.cfg")
        assert code == 2
        assert report["error"]["type"] == "InputError"

    def test_bad_polynomial_text(self, capsys, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("polynomial = x1 $$ x2\n")
        code, report = run(capsys, "analyze", str(path))
        assert code == 2

    def test_json_flag_duplicates_the_report(self, capsys, cusp_config, tmp_path):
        target = tmp_path / "report.json"
        code, report = run(
            capsys, "analyze", cusp_config, "--json", str(target)
        )
        assert code == 0
        assert json.loads(target.read_text()) == report
