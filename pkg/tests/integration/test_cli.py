"""
Integration tests for the subop command line
"""
import json

import pytest

from app.cli.commands import main
from app.services import construction_service
from app.services.relation import SubtypingRelation
from tests.conftest import CHAIN_PROGRAM, ONE_CLASS_PROGRAM


@pytest.fixture
def one_class_file(write_program):
    return write_program(ONE_CLASS_PROGRAM)


class TestBuild:
    """Tests for the build command"""

    def test_json_to_stdout(self, one_class_file, capsys):
        assert main(["build", "-i", str(one_class_file), "-n", "1", "--format", "json"]) == 0
        document = json.loads(capsys.readouterr().out)
        assert len(document["types"]) == 8
        assert document["hasse_edges"] == [[0, 2], [1, 5], [1, 6], [1, 7], [3, 0], [4, 0], [5, 3], [5, 4], [6, 4], [7, 3]]

    def test_dot_to_file(self, one_class_file, tmp_path, capsys):
        out = tmp_path / "out" / "rel.dot"
        assert main(["build", "-i", str(one_class_file), "-n", "2", "-o", str(out)]) == 0
        assert capsys.readouterr().out == ""
        dot = out.read_text()
        assert dot.startswith("digraph subtyping {")
        assert sum(1 for line in dot.splitlines() if "[label=" in line) == 23

    def test_stage(self, one_class_file, capsys):
        assert main(["build", "-i", str(one_class_file), "-n", "1", "--stage", "copy", "--format", "json"]) == 0
        names = [t["name"] for t in json.loads(capsys.readouterr().out)["types"]]
        assert names == ["C<?>", "N", "O", "C<? <: C<?>>", "C<N>"]

    def test_stage_needs_an_iteration(self, one_class_file):
        assert main(["build", "-i", str(one_class_file), "-n", "0", "--stage", "flat"]) == 2

    def test_numeric_labels(self, one_class_file, capsys):
        assert main(["build", "-i", str(one_class_file), "-n", "1", "--numeric-labels"]) == 0
        assert capsys.readouterr().out.startswith("// 0: C<?>\n")

    def test_budget_exceeded(self, one_class_file, capsys):
        assert main(["build", "-i", str(one_class_file), "-n", "3", "--budget", "30"]) == 3
        assert "budget 30" in capsys.readouterr().err

    def test_parse_error(self, write_program, capsys):
        path = write_program("class A extends Object {}\nclass B extends A }")
        assert main(["build", "-i", str(path)]) == 2
        assert "2:19" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["build", "-i", str(tmp_path / "missing.sub")]) == 2

    def test_negative_iterations(self, one_class_file):
        assert main(["build", "-i", str(one_class_file), "-n", "-1"]) == 2

    def test_unknown_format(self, one_class_file):
        assert main(["build", "-i", str(one_class_file), "--format", "svg"]) == 2


class TestCheck:
    """Tests for the check command"""

    @pytest.mark.parametrize("left,right,status,answer", [
        ("C<N>", "C<? <: C<?>>", 0, "true"),
        ("C<O>", "C<C<?>>", 1, "false"),
        ("C<? extends Object>", "C<?>", 0, "true"),
    ])
    def test_verdicts(self, one_class_file, capsys, left, right, status, answer):
        assert main(["check", "-i", str(one_class_file), left, right]) == status
        assert capsys.readouterr().out.strip() == answer

    def test_named_classes(self, write_program, capsys):
        path = write_program(CHAIN_PROGRAM)
        assert main(["check", "-i", str(path), "C<B>", "C<? <: A>"]) == 0

    def test_unknown_class(self, one_class_file):
        assert main(["check", "-i", str(one_class_file), "D<?>", "O"]) == 2

    def test_deeply_nested_type(self, one_class_file, capsys):
        deep = "C<" * 600 + "N" + ">" * 600
        assert main(["check", "-i", str(one_class_file), deep, "C<?>"]) == 2
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "nested deeper" in captured.err


class TestStats:
    """Tests for the stats command"""

    def test_table(self, one_class_file, capsys):
        assert main(["stats", "-i", str(one_class_file), "-n", "3"]) == 0
        lines = capsys.readouterr().out.splitlines()
        sizes = [int(line.split()[1]) for line in lines[1:]]
        assert sizes == [3, 8, 23, 68]

    def test_json(self, write_program, capsys):
        path = write_program(CHAIN_PROGRAM)
        assert main(["stats", "-i", str(path), "-n", "2", "--json"]) == 0
        rows = json.loads(capsys.readouterr().out)
        assert [row["carrier_size"] for row in rows] == [5, 16, 49]
        assert [row["new_types"] for row in rows] == [5, 11, 33]

    def test_metrics(self, one_class_file, capsys):
        assert main(["stats", "-i", str(one_class_file), "-n", "1", "--metrics"]) == 0
        out = capsys.readouterr().out
        assert "subop_morphism_applications_total" in out
        assert "subop_carrier_size 8.0" in out


class TestVerify:
    """Tests for the verify command"""

    def test_agreement(self, one_class_file, capsys):
        assert main(["verify", "-i", str(one_class_file), "-n", "2"]) == 0
        assert capsys.readouterr().out.startswith("ok:")

    def test_empty_program(self, write_program, capsys):
        assert main(["verify", "-i", str(write_program("")), "-n", "3"]) == 0

    def test_reports_first_mismatch(self, one_class_file, capsys, monkeypatch, ty):
        real_steps = construction_service.iterate_steps
        dropped = (ty("C<C<?>>"), ty("C<? <: C<?>>"))

        def faulty_steps(table, n, budget=None):
            for r in real_steps(table, n, budget):
                if r.iteration == 1:
                    r = SubtypingRelation(r.carrier, r.edges - {dropped}, r.iteration)
                yield r

        monkeypatch.setattr(construction_service, "iterate_steps", faulty_steps)
        assert main(["verify", "-i", str(one_class_file), "-n", "2"]) == 1
        out = capsys.readouterr().out
        assert out.startswith("mismatch: iteration 1:")
        assert "C<C<?>> <: C<? <: C<?>>" in out
        assert "construction=false oracle=true" in out


class TestDemo:
    """Tests for the built-in examples"""

    def test_stdout(self, capsys):
        assert main(["demo", "1"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("digraph example1 {")
        document = json.loads(out[out.index("}\n{") + 2:])
        assert len(document["types"]) == 23

    def test_figures_written(self, tmp_path):
        assert main(["demo", "2", "-o", str(tmp_path)]) == 0
        names = sorted(p.name for p in tmp_path.iterdir())
        expected = [
            f"example2{suffix}.{ext}"
            for suffix in ("", "-contravariant", "-covariant", "-invariant", "-rank0", "-subclassing")
            for ext in ("dot", "json")
        ]
        assert names == sorted(expected)
        assert len(json.loads((tmp_path / "example2.json").read_text())["types"]) == 20

    def test_deterministic(self, tmp_path):
        first, second = tmp_path / "first", tmp_path / "second"
        assert main(["demo", "1", "-o", str(first)]) == 0
        assert main(["demo", "1", "-o", str(second)]) == 0
        for path in first.iterdir():
            assert path.read_bytes() == (second / path.name).read_bytes()

    def test_unknown_example(self):
        assert main(["demo", "3"]) == 2


class TestGlobalOptions:
    """Tests for options shared by every command"""

    def test_no_command(self):
        assert main([]) == 2

    def test_internal_error_is_not_a_negative_answer(self, one_class_file, monkeypatch, capsys):
        def broken(self, table, left, right):
            raise RuntimeError("boom")

        monkeypatch.setattr(construction_service.ConstructionService, "check", broken)
        assert main(["check", "-i", str(one_class_file), "N", "O"]) == 4
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "internal error: boom" in captured.err

    def test_version(self, capsys):
        assert main(["--version"]) == 0
        assert "subop" in capsys.readouterr().out

    def test_json_logs_on_stderr(self, one_class_file, capsys):
        assert main(["--log-level", "INFO", "--log-format", "json", "stats", "-i", str(one_class_file), "-n", "1"]) == 0
        captured = capsys.readouterr()
        records = [json.loads(line) for line in captured.err.splitlines() if line.startswith("{")]
        assert any(record.get("carrier_size") == 8 for record in records)
