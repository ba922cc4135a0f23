from pathlib import Path

import pytest

from cli import create_parser, validate_args
from config import EXIT_ABORT, EXIT_INPUT_ERROR, EXIT_SOLVER_CAPACITY, EXIT_SUCCESS
from graph_core import Graph
from instance_model import (
    GstpInstance,
    StpgInstance,
    parse_gstp,
    parse_stpg,
    render_gstp,
    render_stpg,
)
from main import main
from reduction import parse_map
from strategies import triangle_example, two_vertex_example
from theorem_report import TheoremReport


def _write(path: Path, text: str) -> str:
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_transform_writes_stp_and_map(tmp_path: Path) -> None:
    source = _write(tmp_path / "pair.gstp", render_gstp(two_vertex_example()))
    out = tmp_path / "pair.stp"
    assert main(["transform", "-i", source, "-o", str(out)]) == EXIT_SUCCESS

    reduced = parse_stpg(out.read_text(encoding="utf-8"))
    assert reduced.graph.vertex_count == 4
    assert reduced.graph.edge_count == 3
    assert len(reduced.terminals) == 2
    mapping = parse_map((tmp_path / "pair.map").read_text(encoding="utf-8"))
    assert mapping.m_value == 5
    assert mapping.dummy_of_group == (2, 3)


def test_transform_honours_explicit_map_path(tmp_path: Path) -> None:
    source = _write(tmp_path / "tri.gstp", render_gstp(triangle_example()))
    out, side = tmp_path / "tri.stp", tmp_path / "sidecar.txt"
    assert main(["transform", "-i", source, "-o", str(out), "--map", str(side)]) == EXIT_SUCCESS
    assert side.read_text(encoding="utf-8") == "M 7\nDUMMY 1 4\nDUMMY 2 5\n"


def test_transform_invalid_file_creates_no_output(tmp_path: Path) -> None:
    source = _write(tmp_path / "bad.gstp", render_gstp(triangle_example()).replace("E 1 2 1", "E 1 2 0"))
    out = tmp_path / "bad.stp"
    assert main(["transform", "-i", source, "-o", str(out)]) == EXIT_INPUT_ERROR
    assert not out.exists()
    assert not (tmp_path / "bad.map").exists()


def test_missing_input_is_an_input_error(tmp_path: Path, capsys) -> None:
    code = main(["solve", "-i", str(tmp_path / "absent.gstp")])
    assert code == EXIT_INPUT_ERROR
    assert "not found" in capsys.readouterr().err


def test_solve_gstp_triangle(tmp_path: Path, capsys) -> None:
    source = _write(tmp_path / "tri.gstp", render_gstp(triangle_example()))
    assert main(["solve", "-i", source, "--mode", "exact"]) == EXIT_SUCCESS
    out = capsys.readouterr().out
    assert "1 2 1\n" in out
    assert "# cost: 1\n" in out
    assert "# identity: smt_cost - M*|groups| = gstp_cost: 15 - 7*2 = 1" in out


def test_solve_single_group(tmp_path: Path, capsys) -> None:
    instance = GstpInstance(triangle_example().graph, ((1, 2),))
    source = _write(tmp_path / "one.gstp", render_gstp(instance))
    assert main(["solve", "-i", source]) == EXIT_SUCCESS
    out = capsys.readouterr().out
    assert "# vertices: 2\n" in out
    assert "# cost: 0" in out


def test_solve_stp_with_one_terminal(tmp_path: Path, capsys) -> None:
    instance = StpgInstance(Graph.from_triples(2, [(0, 1, 4)]), frozenset({1}))
    source = _write(tmp_path / "one.stp", render_stpg(instance))
    assert main(["solve", "-i", source, "--mode", "heuristic"]) == EXIT_SUCCESS
    assert "# cost: 0" in capsys.readouterr().out


def test_solve_reports_capacity(tmp_path: Path) -> None:
    n = 16
    graph = Graph.from_triples(n, [(v, v + 1, 1) for v in range(n - 1)])
    source = _write(tmp_path / "big.stp", render_stpg(StpgInstance(graph, frozenset({0, n - 1}))))
    assert main(["solve", "-i", source, "--mode", "oracle"]) == EXIT_SOLVER_CAPACITY


def test_solve_rejects_unknown_suffix(tmp_path: Path) -> None:
    source = _write(tmp_path / "tri.txt", render_gstp(triangle_example()))
    assert main(["solve", "-i", source]) == EXIT_INPUT_ERROR


def test_extract_external_solution(tmp_path: Path, capsys) -> None:
    source = _write(tmp_path / "tri.gstp", render_gstp(triangle_example()))
    reduced = tmp_path / "tri.stp"
    assert main(["transform", "-i", source, "-o", str(reduced)]) == EXIT_SUCCESS
    assert main(["solve", "-i", str(reduced), "--mode", "heuristic"]) == EXIT_SUCCESS
    solution = _write(tmp_path / "tri.sol", capsys.readouterr().out)

    code = main(["extract", "-i", source, "--map", str(tmp_path / "tri.map"),
                 "--solution", solution])
    assert code == EXIT_SUCCESS
    out = capsys.readouterr().out
    assert "# method: external (heuristic)" in out
    assert "1 2 1\n" in out
    assert "15 - 7*2 = 1" in out


def test_extract_rejects_non_leaf_dummy(tmp_path: Path) -> None:
    source = _write(tmp_path / "tri.gstp", render_gstp(triangle_example()))
    assert main(["transform", "-i", source, "-o", str(tmp_path / "tri.stp")]) == EXIT_SUCCESS
    # a-b, dummy 4 to a, dummy 5 to both b and c
    solution = _write(tmp_path / "bad.sol", "1 2\n4 1\n5 2\n5 3\n")
    code = main(["extract", "-i", source, "--map", str(tmp_path / "tri.map"),
                 "--solution", solution])
    assert code == EXIT_ABORT


def test_extract_rejects_foreign_map(tmp_path: Path) -> None:
    source = _write(tmp_path / "tri.gstp", render_gstp(triangle_example()))
    side = _write(tmp_path / "other.map", "M 9\nDUMMY 1 4\nDUMMY 2 5\n")
    solution = _write(tmp_path / "tri.sol", "1 2\n4 1\n5 2\n")
    assert main(["extract", "-i", source, "--map", side, "--solution", solution]) == EXIT_INPUT_ERROR


def test_gen_forced_shape(tmp_path: Path) -> None:
    out = tmp_path / "pair.gstp"
    args = ["gen", "--min-nodes", "2", "--max-nodes", "2", "--max-groups", "2",
            "--max-group-size", "1", "--seed", "4", "-o", str(out)]
    assert main(args) == EXIT_SUCCESS
    first = out.read_text(encoding="utf-8")
    instance = parse_gstp(first)
    assert instance.graph.vertex_count == 2
    assert instance.graph.edge_count == 1
    assert instance.groups in (((0,), (0,)), ((0,), (1,)), ((1,), (0,)), ((1,), (1,)))

    assert main(args) == EXIT_SUCCESS
    assert out.read_text(encoding="utf-8") == first


def test_transform_unwritable_map_leaves_no_stp(tmp_path: Path) -> None:
    source = _write(tmp_path / "tri.gstp", render_gstp(triangle_example()))
    out = tmp_path / "tri.stp"
    side = tmp_path / "missing" / "tri.map"
    assert main(["transform", "-i", source, "-o", str(out), "--map", str(side)]) == EXIT_INPUT_ERROR
    assert not out.exists()
    assert sorted(p.name for p in tmp_path.iterdir()) == ["tri.gstp"]


def test_transform_to_missing_directory_is_an_input_error(tmp_path: Path) -> None:
    source = _write(tmp_path / "tri.gstp", render_gstp(triangle_example()))
    out = tmp_path / "missing" / "tri.stp"
    assert main(["transform", "-i", source, "-o", str(out)]) == EXIT_INPUT_ERROR
    assert sorted(p.name for p in tmp_path.iterdir()) == ["tri.gstp"]


def test_transform_to_stdout_needs_a_map_path(tmp_path: Path, capsys) -> None:
    source = _write(tmp_path / "tri.gstp", render_gstp(triangle_example()))
    assert main(["transform", "-i", source, "-o", "-"]) == EXIT_INPUT_ERROR
    assert capsys.readouterr().out == ""

    side = tmp_path / "tri.map"
    assert main(["transform", "-i", source, "-o", "-", "--map", str(side)]) == EXIT_SUCCESS
    assert parse_stpg(capsys.readouterr().out).graph.vertex_count == 5
    assert side.read_text(encoding="utf-8") == "M 7\nDUMMY 1 4\nDUMMY 2 5\n"


def test_solve_rejects_non_utf8_input(tmp_path: Path, capsys) -> None:
    source = tmp_path / "bad.gstp"
    source.write_bytes(b"SECTION Graph\nNodes 2\xff\n")
    assert main(["solve", "-i", str(source)]) == EXIT_INPUT_ERROR
    assert "UTF-8" in capsys.readouterr().err


def test_solve_rejects_directory_input(tmp_path: Path) -> None:
    folder = tmp_path / "folder.gstp"
    folder.mkdir()
    assert main(["solve", "-i", str(folder)]) == EXIT_INPUT_ERROR


GOLDEN_PAIR_GSTP = b"""\
SECTION Graph
Nodes 2
Edges 1
E 1 2 3
END
SECTION Groups
Groups 2
G 1 2
G 1 2
END
EOF
"""


def test_gen_fully_forced_shape_bytes(tmp_path: Path) -> None:
    out = tmp_path / "forced.gstp"
    args = ["gen", "--min-nodes", "2", "--max-nodes", "2", "--min-cost", "3", "--max-cost", "3",
            "--min-groups", "2", "--max-groups", "2", "--min-group-size", "2",
            "--max-group-size", "2", "--seed", "11", "-o", str(out)]
    assert main(args) == EXIT_SUCCESS
    assert out.read_bytes() == GOLDEN_PAIR_GSTP


def test_gen_seed_pair_gives_different_instances(tmp_path: Path) -> None:
    first, second = tmp_path / "s1.gstp", tmp_path / "s2.gstp"
    assert main(["gen", "--seed", "1", "-o", str(first)]) == EXIT_SUCCESS
    assert main(["gen", "--seed", "2", "-o", str(second)]) == EXIT_SUCCESS
    assert parse_gstp(first.read_text(encoding="utf-8")) != parse_gstp(second.read_text(encoding="utf-8"))


def test_verify_writes_reproducible_report(tmp_path: Path, capsys) -> None:
    first, second = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    base = ["verify", "--count", "15", "--seed", "8", "--max-nodes", "6"]
    assert main(base + ["-o", str(first)]) == EXIT_SUCCESS
    assert main(base + ["-o", str(second)]) == EXIT_SUCCESS
    assert first.read_bytes() == second.read_bytes()

    report = TheoremReport.parse(first.read_text(encoding="utf-8"))
    assert report.seed == 8
    assert len(report.records) == 15
    assert report.passed
    assert "Theorem Verification Summary" in capsys.readouterr().out


@pytest.mark.parametrize(
    "flags",
    [
        ["--max-nodes", "16"],
        ["--max-groups", "15"],
        ["--min-nodes", "8", "--max-nodes", "4"],
        ["--density", "2"],
        ["--count", "0"],
    ],
)
def test_verify_rejects_out_of_range_flags(flags, tmp_path: Path) -> None:
    out = tmp_path / "report.jsonl"
    assert main(["verify", "-o", str(out)] + flags) == EXIT_INPUT_ERROR
    assert not out.exists()


def test_parser_requires_a_subcommand() -> None:
    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == 2


def test_validate_args_builds_config() -> None:
    args = create_parser().parse_args(["solve", "-i", "x.stp", "--mode", "heuristic", "-v"])
    config, error = validate_args(args)
    assert error is None
    assert config.mode == "heuristic"
    assert config.verbose
    assert config.input_path == "x.stp"
