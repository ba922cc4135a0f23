"""Main entry point for the group Steiner reduction tool."""

import logging
import sys
from typing import Callable, Dict, List, Optional

from cli import (
    CliConfig,
    create_parser,
    display_error,
    display_info,
    display_success,
    display_warning,
    display_welcome,
    validate_args,
)
from config import (
    EXIT_ABORT,
    EXIT_INPUT_ERROR,
    EXIT_SOLVER_CAPACITY,
    EXIT_SUCCESS,
    GSTP_SUFFIX,
)
from context import RunContext
from errors import CapacityError, InvalidArgumentError, SteinerError
from graph_core import Graph
from instance_model import (
    parse_gstp,
    parse_solution,
    parse_stpg,
    render_gstp,
    tree_edge_lines,
    vertex_numbers,
)
from reduction import extract, parse_map, reduction_map, transform
from solvers import SolveMethod, SolveResult, solve_gstp, solve_stpg
from verification import generate_instance, run_campaign

logger = logging.getLogger(__name__)


def configure_logging(verbose: bool):
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    logging.getLogger().setLevel(logging.INFO if verbose else logging.WARNING)
    logging.getLogger("networkx").setLevel(logging.WARNING)


def format_tree(graph: Graph, result: SolveResult) -> List[str]:
    """Solution text: '#' metadata lines around 'u v cost' edge lines."""
    status = "optimal" if result.optimal else "heuristic"
    lines = [
        f"# method: {result.method.value} ({status})",
        f"# vertices: {vertex_numbers(result.tree.vertices)}",
    ]
    lines.extend(tree_edge_lines(graph, result.tree))
    lines.append(f"# cost: {result.cost}")
    return lines


def identity_line(smt_cost: int, m_value: int, group_count: int, gstp_cost: int) -> str:
    return (
        "# identity: smt_cost - M*|groups| = gstp_cost: "
        f"{smt_cost} - {m_value}*{group_count} = {gstp_cost}"
    )


def cmd_transform(config: CliConfig, context: RunContext) -> int:
    """Reduce a .gstp file to .stp plus its sidecar map."""
    instance = parse_gstp(context.read_text(config.input_path))
    reduced = transform(instance)
    map_path = context.save_transform_results(reduced, config.output_path, config.map_path)
    if context.verbose:
        display_success(
            f"M = {reduced.m_value}; {reduced.group_count} dummy terminals; map at {map_path}"
        )
    return EXIT_SUCCESS


def cmd_solve(config: CliConfig, context: RunContext) -> int:
    """Solve .stp directly or run the reduction pipeline for .gstp."""
    text = context.read_text(config.input_path)
    if config.input_path.endswith(GSTP_SUFFIX):
        instance = parse_gstp(text)
        solution = solve_gstp(instance, config.mode)
        lines = format_tree(instance.graph, solution.result)
        if solution.reduced is not None:
            reduced = solution.reduced
            lines.append(identity_line(solution.smt.cost, reduced.m_value,
                                       reduced.group_count, solution.result.cost))
    else:
        instance = parse_stpg(text)
        lines = format_tree(instance.graph, solve_stpg(instance, config.mode))
    print("\n".join(lines))
    return EXIT_SUCCESS


def cmd_extract(config: CliConfig, context: RunContext) -> int:
    """Check an external STPG solution against the map and recover the group tree."""
    instance = parse_gstp(context.read_text(config.input_path))
    mapping = parse_map(context.read_text(config.map_path))
    reduced = transform(instance)
    if mapping != reduction_map(reduced):
        raise InvalidArgumentError(f"{config.map_path} does not describe the reduction of {config.input_path}")
    smt_tree = parse_solution(context.read_text(config.solution_path), reduced.stpg.graph)
    tree = extract(reduced, smt_tree)
    result = SolveResult(tree, optimal=False, method=SolveMethod.EXTERNAL)
    lines = format_tree(instance.graph, result)
    lines.append(identity_line(smt_tree.total_cost, reduced.m_value, reduced.group_count,
                               tree.total_cost))
    print("\n".join(lines))
    return EXIT_SUCCESS


def cmd_verify(config: CliConfig, context: RunContext) -> int:
    """Run a verification campaign and write its report."""
    report = run_campaign(config.params, config.count, workers=config.workers)
    context.save_report(report, config.output_path)
    report.print_summary(file=sys.stdout if config.output_path else sys.stderr)
    if report.passed:
        display_success(f"{len(report.records)}/{len(report.records)} instances keep the identity")
        return EXIT_SUCCESS
    failing = report.failing_indices()
    display_error(
        f"{len(failing)} instance(s) fail: {', '.join(map(str, failing))} "
        f"(replay with --seed {report.seed})"
    )
    return EXIT_ABORT


def cmd_gen(config: CliConfig, context: RunContext) -> int:
    """Write one generated .gstp instance."""
    instance = generate_instance(config.params, config.index)
    context.save_text(config.output_path, render_gstp(instance))
    if context.verbose:
        display_info(
            f"instance {config.index} of seed {config.params.seed}: "
            f"{instance.graph.vertex_count} vertices, {instance.graph.edge_count} edges, "
            f"{len(instance.groups)} groups"
        )
    return EXIT_SUCCESS


COMMANDS: Dict[str, Callable[[CliConfig, RunContext], int]] = {
    "transform": cmd_transform,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "gen": cmd_gen,
    "extract": cmd_extract,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""

    # Parse arguments (argparse itself exits with 2 on bad syntax)
    parser = create_parser()
    args = parser.parse_args(argv)

    # Validate arguments
    config, error_msg = validate_args(args)
    if config is None:
        display_error(error_msg)
        return EXIT_INPUT_ERROR

    configure_logging(config.verbose)
    if config.verbose:
        display_welcome()

    context = RunContext(verbose=config.verbose)
    try:
        return COMMANDS[config.subcommand](config, context)
    except CapacityError as e:
        display_error(str(e))
        if config.subcommand == "solve":
            display_warning("the exact solver is exponential in the terminal count; try --mode heuristic")
            return EXIT_SOLVER_CAPACITY
        return EXIT_ABORT
    except SteinerError as e:
        display_error(str(e))
        return e.exit_code
    except KeyboardInterrupt:
        display_error("interrupted by user (Ctrl+C)")
        return EXIT_ABORT
    except Exception as e:
        logger.info("unexpected failure", exc_info=True)
        display_error(f"unexpected failure in {config.subcommand}: {e}")
        return EXIT_ABORT


if __name__ == "__main__":
    sys.exit(main())
