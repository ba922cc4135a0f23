"""Command line interface for the group Steiner reduction tool."""

import argparse
import sys
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from config import (
    DEFAULT_CAMPAIGN_COUNT,
    DEFAULT_EDGE_DENSITY,
    DEFAULT_MAX_COST,
    DEFAULT_MAX_GROUP_SIZE,
    DEFAULT_MAX_GROUPS,
    DEFAULT_MAX_NODES,
    DEFAULT_MIN_COST,
    DEFAULT_MIN_GROUP_SIZE,
    DEFAULT_MIN_GROUPS,
    DEFAULT_MIN_NODES,
    DEFAULT_SEED,
    DEFAULT_SOLVER_MODE,
    EXACT_TERMINAL_LIMIT,
    GSTP_SUFFIX,
    ORACLE_VERTEX_LIMIT,
    SOLVER_MODES,
    STPG_SUFFIX,
)
from verification import GenParams

Subcommand = Literal["transform", "solve", "verify", "gen", "extract"]


class CliConfig(BaseModel):
    """Validated command line settings; built before any file is touched."""

    model_config = ConfigDict(frozen=True)

    subcommand: Subcommand
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    map_path: Optional[str] = None
    solution_path: Optional[str] = None
    mode: Literal["exact", "heuristic", "oracle"] = DEFAULT_SOLVER_MODE
    params: Optional[GenParams] = None
    count: int = Field(DEFAULT_CAMPAIGN_COUNT, ge=1)
    index: int = Field(0, ge=0)
    workers: int = Field(1, ge=1)
    verbose: bool = False


def _add_generation_flags(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("instance generation")
    group.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Campaign seed (64-bit unsigned)")
    group.add_argument("--min-nodes", type=int, default=DEFAULT_MIN_NODES)
    group.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    group.add_argument("--density", type=float, default=DEFAULT_EDGE_DENSITY,
                       help="Probability of each extra edge above the spanning tree")
    group.add_argument("--min-cost", type=int, default=DEFAULT_MIN_COST)
    group.add_argument("--max-cost", type=int, default=DEFAULT_MAX_COST)
    group.add_argument("--min-groups", type=int, default=DEFAULT_MIN_GROUPS)
    group.add_argument("--max-groups", type=int, default=DEFAULT_MAX_GROUPS)
    group.add_argument("--min-group-size", type=int, default=DEFAULT_MIN_GROUP_SIZE)
    group.add_argument("--max-group-size", type=int, default=DEFAULT_MAX_GROUP_SIZE)


def create_parser() -> argparse.ArgumentParser:
    """Create command line argument parser."""

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="Enable verbose output")

    parser = argparse.ArgumentParser(
        prog="group_steiner",
        description="Group Steiner Tree to Steiner Tree reduction with exact solvers and oracles",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s transform -i instance.gstp -o reduced.stp
  %(prog)s solve -i instance.gstp --mode exact
  %(prog)s solve -i reduced.stp --mode heuristic
  %(prog)s verify --count 200 --seed 20040101 -o report.jsonl
  %(prog)s gen --max-nodes 8 --seed 7 -o random.gstp
  %(prog)s extract -i instance.gstp --map reduced.map --solution external.sol
        """,
    )
    commands = parser.add_subparsers(dest="subcommand", required=True)

    transform = commands.add_parser("transform", parents=[common],
                                    help="Reduce a .gstp instance to a .stp instance")
    transform.add_argument("-i", "--input", required=True, help="Input .gstp file")
    transform.add_argument("-o", "--output", required=True, help="Output .stp file ('-' for stdout)")
    transform.add_argument("--map", help="Sidecar map file (default: output with .map suffix)")

    solve = commands.add_parser("solve", parents=[common],
                                help="Solve a .stp or .gstp instance")
    solve.add_argument("-i", "--input", required=True, help="Input .stp or .gstp file")
    solve.add_argument("--mode", choices=SOLVER_MODES, default=DEFAULT_SOLVER_MODE,
                       help="Solver: exact (Dreyfus-Wagner), heuristic (shortest paths), oracle")

    verify = commands.add_parser("verify", parents=[common],
                                 help="Check the reduction theorem on random instances")
    verify.add_argument("--count", type=int, default=DEFAULT_CAMPAIGN_COUNT)
    verify.add_argument("--workers", type=int, default=1, help="Worker processes")
    verify.add_argument("-o", "--output", help="Report file (default: stdout)")
    _add_generation_flags(verify)

    gen = commands.add_parser("gen", parents=[common], help="Write one random .gstp instance")
    gen.add_argument("-o", "--output", required=True, help="Output .gstp file")
    gen.add_argument("--index", type=int, default=0, help="Instance index within the seed")
    _add_generation_flags(gen)

    extract = commands.add_parser("extract", parents=[common],
                                  help="Recover a group Steiner tree from an external STPG solution")
    extract.add_argument("-i", "--input", required=True, help="Original .gstp file")
    extract.add_argument("--map", required=True, help="Sidecar map written by transform")
    extract.add_argument("--solution", required=True,
                         help="STPG solution on the reduced instance ('u v [cost]' lines)")

    return parser


def _generation_params(args: argparse.Namespace) -> GenParams:
    return GenParams(
        vertex_range=(args.min_nodes, args.max_nodes),
        edge_density=args.density,
        cost_range=(args.min_cost, args.max_cost),
        group_count_range=(args.min_groups, args.max_groups),
        group_size_range=(args.min_group_size, args.max_group_size),
        seed=args.seed,
    )


def _format_validation_error(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(p) for p in item["loc"])
        parts.append(f"{location}: {item['msg']}" if location else item["msg"])
    return "; ".join(parts)


def validate_args(args: argparse.Namespace) -> tuple[Optional[CliConfig], Optional[str]]:
    """
    Validate command line arguments.

    Returns:
        Tuple of (config, error_message); exactly one is None
    """
    values = {"subcommand": args.subcommand, "verbose": args.verbose}
    try:
        if args.subcommand == "transform":
            if args.map == "-" or (args.output == "-" and args.map is None):
                return None, "transform writes its sidecar map to a file: give --map <path>"
            values.update(input_path=args.input, output_path=args.output, map_path=args.map)
        elif args.subcommand == "solve":
            if not args.input.endswith((STPG_SUFFIX, GSTP_SUFFIX)):
                return None, f"solve input must end in {STPG_SUFFIX} or {GSTP_SUFFIX}: {args.input}"
            values.update(input_path=args.input, mode=args.mode)
        elif args.subcommand == "verify":
            params = _generation_params(args)
            if params.vertex_range[1] > ORACLE_VERTEX_LIMIT:
                return None, f"--max-nodes {params.vertex_range[1]} exceeds the oracle limit of {ORACLE_VERTEX_LIMIT}"
            if params.group_count_range[1] > EXACT_TERMINAL_LIMIT:
                return None, f"--max-groups {params.group_count_range[1]} exceeds the exact solver limit of {EXACT_TERMINAL_LIMIT}"
            values.update(params=params, count=args.count, workers=args.workers,
                          output_path=args.output)
        elif args.subcommand == "gen":
            values.update(params=_generation_params(args), index=args.index,
                          output_path=args.output)
        elif args.subcommand == "extract":
            values.update(input_path=args.input, map_path=args.map,
                          solution_path=args.solution)
        return CliConfig(**values), None
    except ValidationError as e:
        return None, _format_validation_error(e)


def display_welcome():
    """Display welcome message."""
    print("🌲 Group Steiner Reduction Tool", file=sys.stderr)
    print("=" * 40, file=sys.stderr)

def display_error(message: str):
    """Display error message."""
    print(f"❌ Error: {message}", file=sys.stderr)

def display_success(message: str):
    """Display success message."""
    print(f"✅ {message}", file=sys.stderr)

def display_info(message: str):
    """Display info message."""
    print(f"ℹ️  {message}", file=sys.stderr)

def display_warning(message: str):
    """Display warning message."""
    print(f"⚠️  {message}", file=sys.stderr)
