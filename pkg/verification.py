"""Seeded instance generation and the empirical check of the reduction theorem.

Instance `index` of a campaign is drawn from a Mersenne Twister
(`random.Random`) seeded with ``seed * 2**32 + index``, so any instance can
be regenerated on its own and parallel workers share no state.
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from config import (
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
    MAX_EDGE_COST,
)
from errors import CampaignAbortError, InvalidArgumentError, NonLeafDummyError, SteinerError
from graph_core import Edge, Graph, checked_add
from instance_model import GstpInstance, StpgInstance, gstp_is_feasible, stpg_is_feasible
from reduction import augment_with_dummy_leaves, dummy_degrees, extract, transform
from solvers import brute_force_gsmt, solve_exact_stpg, solve_heuristic_stpg
from theorem_report import TheoremRecord, TheoremReport

logger = logging.getLogger(__name__)

Interval = Tuple[int, int]


class GenParams(BaseModel):
    """Parameters of the random instance model."""

    model_config = ConfigDict(frozen=True)

    vertex_range: Interval = (DEFAULT_MIN_NODES, DEFAULT_MAX_NODES)
    edge_density: float = Field(DEFAULT_EDGE_DENSITY, ge=0.0, le=1.0)
    cost_range: Interval = (DEFAULT_MIN_COST, DEFAULT_MAX_COST)
    group_count_range: Interval = (DEFAULT_MIN_GROUPS, DEFAULT_MAX_GROUPS)
    group_size_range: Interval = (DEFAULT_MIN_GROUP_SIZE, DEFAULT_MAX_GROUP_SIZE)
    seed: int = Field(DEFAULT_SEED, ge=0, lt=2**64)

    @field_validator("vertex_range", "cost_range", "group_count_range", "group_size_range")
    @classmethod
    def _nonempty_interval(cls, value: Interval) -> Interval:
        low, high = value
        if low > high:
            raise ValueError(f"interval [{low}, {high}] is empty")
        return value

    @field_validator("vertex_range")
    @classmethod
    def _at_least_two_vertices(cls, value: Interval) -> Interval:
        if value[0] < 2:
            raise ValueError("instances need at least 2 vertices so that M >= 1")
        return value

    @field_validator("cost_range")
    @classmethod
    def _positive_costs(cls, value: Interval) -> Interval:
        if value[0] < 1 or value[1] > MAX_EDGE_COST:
            raise ValueError(f"costs must lie within 1..{MAX_EDGE_COST}")
        return value

    @field_validator("group_count_range")
    @classmethod
    def _at_least_two_groups(cls, value: Interval) -> Interval:
        if value[0] < 2:
            raise ValueError("the theorem check needs at least 2 groups")
        return value

    @field_validator("group_size_range")
    @classmethod
    def _positive_group_size(cls, value: Interval) -> Interval:
        if value[0] < 1:
            raise ValueError("groups need at least one member")
        return value


def instance_rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * 2**32 + index)


def _generate_graph(rng: random.Random, params: GenParams) -> Graph:
    """Random spanning-tree backbone plus Bernoulli extra edges."""
    n = rng.randint(*params.vertex_range)
    order = list(range(n))
    rng.shuffle(order)
    backbone = set()
    for position in range(1, n):
        parent = order[rng.randrange(position)]
        backbone.add(frozenset((order[position], parent)))

    pairs = []
    for u in range(n):
        for v in range(u + 1, n):
            if frozenset((u, v)) in backbone or rng.random() < params.edge_density:
                pairs.append((u, v))
    edges = tuple(Edge(u, v, rng.randint(*params.cost_range)) for u, v in pairs)
    return Graph(n, edges)


def generate_instance(params: GenParams, index: int) -> GstpInstance:
    """GSTP instance number `index` of the campaign described by `params`."""
    rng = instance_rng(params.seed, index)
    graph = _generate_graph(rng, params)
    n = graph.vertex_count
    groups = []
    for _ in range(rng.randint(*params.group_count_range)):
        low, high = params.group_size_range
        size = min(rng.randint(low, high), n)
        groups.append(tuple(sorted(rng.sample(range(n), size))))
    return GstpInstance(graph, tuple(groups))


def generate_stpg_instance(params: GenParams, index: int, max_terminals: int) -> StpgInstance:
    """STPG instance number `index`, with 1..max_terminals terminals."""
    rng = instance_rng(params.seed, index)
    graph = _generate_graph(rng, params)
    count = rng.randint(1, min(max_terminals, graph.vertex_count))
    return StpgInstance(graph, frozenset(rng.sample(range(graph.vertex_count), count)))


def verify_theorem(instance: GstpInstance, index: int = 0) -> TheoremRecord:
    """Compare the oracle GSMT with transform -> exact solve -> extract; report only."""
    group_count = len(instance.groups)
    if group_count < 2:
        raise InvalidArgumentError("the theorem check needs at least 2 groups")

    gsmt = brute_force_gsmt(instance)
    reduced = transform(instance)
    smt = solve_exact_stpg(reduced.stpg)
    dummy_total = reduced.dummy_total

    all_leaves = all(degree == 1 for degree in dummy_degrees(reduced, smt.tree))
    extracted_cost: Optional[int] = None
    extraction_feasible = False
    try:
        extracted = extract(reduced, smt.tree)
        extracted_cost = extracted.total_cost
        extraction_feasible = (
            gstp_is_feasible(instance, extracted)
            and extracted_cost == smt.cost - dummy_total
        )
    except NonLeafDummyError as e:
        logger.warning("instance %d: %s", index, e)

    augmented = augment_with_dummy_leaves(reduced, gsmt.tree)
    sandwich_holds = (
        stpg_is_feasible(reduced.stpg, augmented)
        and augmented.total_cost == checked_add(gsmt.cost, dummy_total)
        and augmented.total_cost >= smt.cost
    )

    heuristic = solve_heuristic_stpg(reduced.stpg)
    record = TheoremRecord(
        index=index,
        gsmt_cost=gsmt.cost,
        smt_cost=smt.cost,
        m_value=reduced.m_value,
        group_count=group_count,
        identity_holds=gsmt.cost == smt.cost - dummy_total,
        all_dummies_leaves=all_leaves,
        extraction_feasible=extraction_feasible,
        heuristic_gap=heuristic.cost - dummy_total - gsmt.cost,
        sandwich_holds=sandwich_holds,
        extracted_cost=extracted_cost,
    )
    if not record.identity_holds:
        logger.warning("instance %d: identity fails (%d vs %d)", index, gsmt.cost,
                       smt.cost - dummy_total)
    return record


def _verify_index(params: GenParams, index: int) -> TheoremRecord:
    return verify_theorem(generate_instance(params, index), index)


def _campaign_worker(job: Tuple[GenParams, int]) -> Union[TheoremRecord, str]:
    # exceptions with custom constructors do not survive pickling; ship the message
    params, index = job
    try:
        return _verify_index(params, index)
    except SteinerError as e:
        return f"{type(e).__name__}: {e}"


def run_campaign(params: GenParams, count: int, workers: int = 1) -> TheoremReport:
    """Verify `count` generated instances; records come back in index order."""
    if count < 1:
        raise InvalidArgumentError(f"campaign count {count} must be at least 1")
    report = TheoremReport(seed=params.seed, params=params.model_dump(mode="json"))

    if workers <= 1:
        for index in range(count):
            try:
                report.add_record(_verify_index(params, index))
            except SteinerError as e:
                raise CampaignAbortError(index, params.seed, e) from e
            if (index + 1) % 50 == 0:
                logger.info("verified %d/%d instances", index + 1, count)
        return report

    jobs: List[Tuple[GenParams, int]] = [(params, index) for index in range(count)]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        for index, outcome in enumerate(executor.map(_campaign_worker, jobs)):
            if isinstance(outcome, str):
                raise CampaignAbortError(index, params.seed, SteinerError(outcome))
            report.add_record(outcome)
    logger.info("verified %d instances on %d workers", count, workers)
    return report
