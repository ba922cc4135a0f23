"""Configuration for the group Steiner reduction tool."""

# Solver Configuration
EXACT_TERMINAL_LIMIT = 14
ORACLE_VERTEX_LIMIT = 15

# Cost representation: single edges fit in 31 bits, aggregates in 63 bits
MAX_EDGE_COST = 2**31 - 1
MAX_AGGREGATE_COST = 2**63 - 1

# Generation Configuration (the desk-scale acceptance campaign)
DEFAULT_SEED = 20040101
DEFAULT_CAMPAIGN_COUNT = 200
DEFAULT_MIN_NODES = 2
DEFAULT_MAX_NODES = 10
DEFAULT_EDGE_DENSITY = 0.3
DEFAULT_MIN_COST = 1
DEFAULT_MAX_COST = 20
DEFAULT_MIN_GROUPS = 2
DEFAULT_MAX_GROUPS = 4
DEFAULT_MIN_GROUP_SIZE = 1
DEFAULT_MAX_GROUP_SIZE = 3

# Solver selectors accepted by `solve`
SOLVER_MODES = ("exact", "heuristic", "oracle")
DEFAULT_SOLVER_MODE = "exact"

# File Configuration
STPG_SUFFIX = ".stp"
GSTP_SUFFIX = ".gstp"
MAP_SUFFIX = ".map"

# Exit codes for different failure types
EXIT_SUCCESS = 0
EXIT_INPUT_ERROR = 2
EXIT_ABORT = 3
EXIT_SOLVER_CAPACITY = 4


# Configuration validation utility
def validate_config() -> bool:
    """Validate that the limits are mutually consistent."""
    return (
        0 < MAX_EDGE_COST
        and MAX_EDGE_COST * 2 <= MAX_AGGREGATE_COST
        and 1 <= EXACT_TERMINAL_LIMIT
        and 1 <= ORACLE_VERTEX_LIMIT
        and DEFAULT_MIN_GROUPS >= 2
    )
