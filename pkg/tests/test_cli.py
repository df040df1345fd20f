import json

import pytest
from click.testing import CliRunner

from rado.cli import main
from rado.lattice import Coloring, parse_coloring, serialize_coloring
from rado.search import SearchProblem, verify_witness
from rado.systems import (
    ColumnsPartition,
    ScalarSystem,
    VectorSystem,
    serialize_system,
    verify_partition,
)

MOTIVATING = VectorSystem.from_rows([[[1, 1, -1, 0]], [[-1, 1, 0, -1], [0, -1, 1, -1]]])
SCHUR = VectorSystem.from_rows([[[1, 1, -1]]])


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def system_files(tmp_path):
    motivating = tmp_path / "motivating.json"
    motivating.write_text(serialize_system(MOTIVATING))
    schur = tmp_path / "schur.json"
    schur.write_text(serialize_system(SCHUR))
    return {"motivating": str(motivating), "schur": str(schur), "dir": tmp_path}


class TestCheckColumns:
    def test_schur_json(self, runner, system_files):
        result = runner.invoke(
            main, ["check-columns", "-f", system_files["schur"], "--json"]
        )
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert doc["all_satisfy"] is True
        report = doc["coordinates"][0]
        assert report["satisfies"] and report["rank"] == 1
        # the emitted witness parses back into a verifiable partition
        partition = ColumnsPartition(tuple(tuple(b) for b in report["witness"]))
        assert verify_partition(ScalarSystem.from_rows([[1, 1, -1]]), partition)

    def test_negative_exit_code(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"d": 1, "k": 2, "systems": [{"rows": [[1, 1]]}]}')
        result = runner.invoke(main, ["check-columns", "-f", str(bad)])
        assert result.exit_code == 1

    def test_over_limit_is_input_error(self, runner, system_files):
        result = runner.invoke(
            main, ["check-columns", "-f", system_files["schur"], "--limit", "2"]
        )
        assert result.exit_code == 2

    def test_malformed_file_is_input_error(self, runner, tmp_path):
        broken = tmp_path / "broken.json"
        broken.write_text("{not json")
        result = runner.invoke(main, ["check-columns", "-f", str(broken)])
        assert result.exit_code == 2


class TestEnumerateAndCount:
    def test_enumerate_json(self, runner, system_files):
        result = runner.invoke(
            main, ["enumerate", "-f", system_files["schur"], "-n", "3", "--json"]
        )
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert doc["total"] == 3
        assert [[1], [1], [2]] in doc["solutions"]

    def test_count_with_degenerate(self, runner, system_files, tmp_path):
        diag = tmp_path / "diag.json"
        diag.write_text(
            serialize_system(
                VectorSystem.diagonal(ScalarSystem.from_rows([[1, 1, -1]]), 2)
            )
        )
        result = runner.invoke(
            main, ["count", "-f", str(diag), "-n", "5", "--degenerate", "--json"]
        )
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert doc["total"] == 100  # ten scalar sum triples in [1,5], squared
        assert doc["degenerate"] == 12

    def test_count_monochromatic(self, runner, system_files, tmp_path):
        coloring = tmp_path / "c.json"
        coloring.write_text(serialize_coloring(Coloring.constant(3, 1, r=2)))
        result = runner.invoke(
            main,
            [
                "count",
                "-f",
                system_files["schur"],
                "-n",
                "3",
                "--coloring",
                str(coloring),
                "--json",
            ],
        )
        doc = json.loads(result.output)
        assert doc["monochromatic"] == [3, 0]


class TestDegenerate:
    def test_degenerate_exit_zero(self, runner):
        result = runner.invoke(
            main, ["degenerate", "--points", "1,2;2,4;3,6", "--json"]
        )
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert doc == {"degenerate": True, "direction": [1, 2], "multipliers": [1, 2, 3]}

    def test_non_degenerate_exit_one(self, runner):
        result = runner.invoke(main, ["degenerate", "--points", "1,1;3,5"])
        assert result.exit_code == 1


class TestSearchVerifyRadoNumber:
    def test_flagship_flow(self, runner, system_files):
        witness_path = str(system_files["dir"] / "w8.json")
        result = runner.invoke(
            main,
            [
                "search",
                "-f",
                system_files["motivating"],
                "-n",
                "8",
                "--colors",
                "2",
                "--mask",
                "0,1,2",
                "--emit-witness",
                witness_path,
                "--json",
            ],
        )
        assert result.exit_code == 1  # avoidable is the domain negative
        doc = json.loads(result.output)
        assert doc["status"] == "avoidable"
        emitted = parse_coloring(json.dumps(doc["witness"]))
        problem = SearchProblem(MOTIVATING, colors=2, mask=(0, 1, 2))
        assert verify_witness(problem, emitted).passed

        verify_result = runner.invoke(
            main,
            [
                "verify",
                "-f",
                system_files["motivating"],
                "--witness",
                witness_path,
                "--mask",
                "0,1,2",
            ],
        )
        assert verify_result.exit_code == 0

        unavoidable = runner.invoke(
            main,
            [
                "search",
                "-f",
                system_files["motivating"],
                "-n",
                "9",
                "--mask",
                "0,1,2",
                "--json",
            ],
        )
        assert unavoidable.exit_code == 0
        assert json.loads(unavoidable.output)["status"] == "unavoidable"

    def test_rado_number_prints_value(self, runner, system_files):
        result = runner.invoke(
            main,
            [
                "rado-number",
                "-f",
                system_files["motivating"],
                "--colors",
                "2",
                "--mask",
                "0,1,2",
                "--max-n",
                "12",
            ],
        )
        assert result.exit_code == 0
        assert result.output.strip() == "9"

    def test_rado_number_exceeded(self, runner, system_files):
        result = runner.invoke(
            main,
            ["rado-number", "-f", system_files["schur"], "--max-n", "3", "--json"],
        )
        assert result.exit_code == 1
        doc = json.loads(result.output)
        assert doc["found"] is False
        assert doc["witness"]["n"] == 3

    def test_verify_rejects_bad_witness(self, runner, system_files, tmp_path):
        bad = tmp_path / "bad_witness.json"
        bad.write_text(serialize_coloring(Coloring.constant(5, 1, r=2)))
        result = runner.invoke(
            main,
            ["verify", "-f", system_files["schur"], "--witness", str(bad), "--json"],
        )
        assert result.exit_code == 1
        doc = json.loads(result.output)
        assert doc["passed"] is False
        assert doc["violated_constraint"] is not None


class TestExportDimacs:
    def test_stdout_and_json(self, runner, system_files):
        plain = runner.invoke(
            main, ["export-dimacs", "-f", system_files["schur"], "-n", "5"]
        )
        assert plain.exit_code == 0
        assert "p cnf 5" in plain.output
        as_json = runner.invoke(
            main, ["export-dimacs", "-f", system_files["schur"], "-n", "5", "--json"]
        )
        doc = json.loads(as_json.output)
        assert doc["num_vars"] == 5
        assert doc["cnf"] == plain.output

    def test_output_file(self, runner, system_files):
        target = str(system_files["dir"] / "out.cnf")
        result = runner.invoke(
            main,
            ["export-dimacs", "-f", system_files["schur"], "-n", "4", "-o", target],
        )
        assert result.exit_code == 0
        assert "p cnf" in open(target).read()


class TestMpcCommands:
    def test_gen(self, runner):
        result = runner.invoke(
            main,
            ["mpc", "gen", "--m", "2", "--p", "1", "--c", "1", "--gens", "5,1", "--json"],
        )
        assert result.exit_code == 0
        assert json.loads(result.output)["set"] == [1, 4, 5, 6]

    def test_gen_invalid_is_input_error(self, runner):
        result = runner.invoke(
            main, ["mpc", "gen", "--m", "2", "--p", "1", "--c", "1", "--gens", "1,5"]
        )
        assert result.exit_code == 2

    def test_find_mono(self, runner, tmp_path):
        coloring = tmp_path / "c.json"
        coloring.write_text(serialize_coloring(Coloring.constant(10, 1, r=1)))
        result = runner.invoke(
            main,
            [
                "mpc",
                "find-mono",
                "--coloring",
                str(coloring),
                "--m",
                "2",
                "--p",
                "1",
                "--c",
                "1",
                "--json",
            ],
        )
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert doc["found"] and len(doc["generators"]) == 2

    def test_find_mono_none(self, runner, tmp_path):
        coloring = tmp_path / "c.json"
        coloring.write_text(serialize_coloring(Coloring(4, 1, 2, (0, 0, 1, 1))))
        result = runner.invoke(
            main,
            [
                "mpc",
                "find-mono",
                "--coloring",
                str(coloring),
                "--m",
                "2",
                "--p",
                "1",
                "--c",
                "1",
            ],
        )
        assert result.exit_code == 1

    def test_embed(self, runner):
        result = runner.invoke(
            main,
            [
                "mpc",
                "embed",
                "--m",
                "1",
                "--p",
                "1",
                "--c",
                "2",
                "--low",
                "1",
                "--high",
                "2",
                "--gens",
                "3",
                "--json",
            ],
        )
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert doc["generators"] == [6]
        assert doc["contained"] is True
        assert set(doc["inner_set"]) <= set(doc["outer_set"])

    def test_contains(self, runner, system_files):
        result = runner.invoke(
            main,
            [
                "mpc",
                "contains",
                "-f",
                system_files["schur"],
                "--m",
                "2",
                "--p",
                "1",
                "--c",
                "1",
                "--gens",
                "5,1",
                "--json",
            ],
        )
        assert result.exit_code == 0
        doc = json.loads(result.output)
        x, y, z = doc["solution"]
        assert x + y == z


class TestObserve:
    def test_passing_report(self, runner):
        result = runner.invoke(
            main,
            ["observe", "--indices", "1,2,4,8,16", "--k", "3", "--l", "2", "--d", "2"],
        )
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert doc["all_pass"] is True
        assert len(doc["left_points"]) == 3
        assert len(doc["right_points"]) == 2
        left_sum = [sum(p[i] for p in doc["left_points"]) for i in range(2)]
        right_sum = [sum(q[i] for q in doc["right_points"]) for i in range(2)]
        assert left_sum == right_sum

    def test_bad_indices_is_input_error(self, runner):
        result = runner.invoke(
            main,
            ["observe", "--indices", "4,2,1,8", "--k", "2", "--l", "2", "--d", "2"],
        )
        assert result.exit_code == 2


class TestUsage:
    def test_unknown_subcommand(self, runner):
        result = runner.invoke(main, ["frobnicate"])
        assert result.exit_code == 2

    def test_missing_required_flag(self, runner):
        result = runner.invoke(main, ["enumerate", "-n", "3"])
        assert result.exit_code == 2

    def test_determinism_across_runs(self, runner, system_files):
        args = [
            "search",
            "-f",
            system_files["motivating"],
            "-n",
            "8",
            "--mask",
            "0,1,2",
            "--json",
        ]
        first = runner.invoke(main, args)
        second = runner.invoke(main, args)
        assert first.output == second.output
        assert first.exit_code == second.exit_code


class TestThreads:
    def test_env_variable_and_flag(self, runner, system_files, monkeypatch):
        base = [
            "rado-number",
            "-f",
            system_files["schur"],
            "--max-n",
            "6",
            "--json",
        ]
        single = runner.invoke(main, base)
        monkeypatch.setenv("RADO_THREADS", "2")
        via_env = runner.invoke(main, base)
        via_flag = runner.invoke(main, base + ["--threads", "1"])
        for result in (via_env, via_flag):
            assert result.exit_code == single.exit_code
            assert json.loads(result.output)["value"] == json.loads(single.output)["value"]
