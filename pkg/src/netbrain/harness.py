"""Declarative experiment runner: start selection, seeded repetitions, sweeps, aggregation."""

from __future__ import annotations

import hashlib
import os
import random
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from statistics import fmean, pstdev
from typing import Callable, Sequence, Union

from .dynamics import (
    LearningCurve,
    WalkPolicy,
    default_thresholds,
    run_discovery,
    validate_thresholds,
)
from .errors import AggregationError, ConfigError, ParameterError
from .generators import GeneratorSpec, RealizedStats, generate
from .graph import Graph, betweenness, degree_ranked_nodes

PERCENTILE_START_CAP = 100  # starts drawn above a betweenness percentile

_MASK64 = (1 << 64) - 1


def derive_seed(master_seed: int, *parts: int | float | str) -> int:
    """Stateless child-seed derivation; cells never share rng state."""
    h = hashlib.blake2b(digest_size=8)
    h.update(struct.pack("<Q", master_seed & _MASK64))
    for part in parts:
        if isinstance(part, str):
            h.update(b"s" + part.encode())
        elif isinstance(part, float):
            h.update(b"f" + struct.pack("<d", part))
        else:
            h.update(b"i" + struct.pack("<q", part))
    return int.from_bytes(h.digest(), "little")


@dataclass(frozen=True)
class DegreeRankedStride:
    """Every stride-th node of the degree-ranked order."""

    stride: int


@dataclass(frozen=True)
class BetweennessPercentile:
    """Uniform sample among nodes at or above a betweenness percentile."""

    min_percentile: float


@dataclass(frozen=True)
class TopHubs:
    """The `count` highest-degree nodes."""

    count: int


@dataclass(frozen=True)
class ExplicitStarts:
    nodes: tuple[int, ...]


StartSelection = Union[DegreeRankedStride, BetweennessPercentile, TopHubs, ExplicitStarts]


@dataclass(frozen=True)
class ExperimentConfig:
    """Full declarative description of one experiment."""

    generator: GeneratorSpec | str  # a model spec, or a path to an edge list
    policies: tuple[WalkPolicy, ...]
    start: StartSelection
    repetitions_per_start: int = 10
    step_cap: int | None = None
    thresholds: tuple[float, ...] = default_thresholds()
    master_seed: int = 0
    target_fraction: float = 1.0

    def validate(self) -> None:
        if not self.policies:
            raise ConfigError("at least one walk policy is required")
        if self.repetitions_per_start < 1:
            raise ConfigError("repetitions_per_start must be >= 1")
        grid = validate_thresholds(self.thresholds)
        if not 0.0 < self.target_fraction <= 1.0:
            raise ConfigError(f"target_fraction must be in (0, 1], got {self.target_fraction}")
        if grid[-1] > self.target_fraction + 1e-12:
            raise ConfigError(
                "threshold grid extends beyond target_fraction; the top thresholds "
                "would never be crossed"
            )
        if isinstance(self.generator, GeneratorSpec):
            self.generator.validate()


@dataclass(frozen=True)
class TaggedCurve:
    """One learning curve with full provenance."""

    group: str
    policy: WalkPolicy
    start: int
    start_degree: int
    repetition: int
    curve: LearningCurve
    walk_count: int = 0
    cap_hits: int = 0


@dataclass(frozen=True)
class AggregateCurve:
    """Per-threshold mean and standard deviation over a group of curves."""

    group: str
    policy: WalkPolicy
    thresholds: tuple[float, ...]
    mean_steps: tuple[float, ...]
    sd_steps: tuple[float, ...]
    n_samples: int


def select_starts(g: Graph, selection: StartSelection, rng: random.Random) -> list[int]:
    """Resolve a start-selection scheme to concrete node ids."""
    if isinstance(selection, DegreeRankedStride):
        if selection.stride < 1:
            raise ConfigError(f"stride must be >= 1, got {selection.stride}")
        starts = degree_ranked_nodes(g)[:: selection.stride]
    elif isinstance(selection, TopHubs):
        if not 1 <= selection.count <= g.n:
            raise ConfigError(f"hub count must be in [1, {g.n}], got {selection.count}")
        starts = degree_ranked_nodes(g)[: selection.count]
    elif isinstance(selection, BetweennessPercentile):
        p = selection.min_percentile
        if not 0.0 <= p < 1.0:
            raise ConfigError(f"min_percentile must be in [0, 1), got {p}")
        values = betweenness(g)
        cutoff = sorted(values)[min(g.n - 1, int(p * g.n))]
        eligible = [v for v in range(g.n) if values[v] >= cutoff]
        if len(eligible) > PERCENTILE_START_CAP:
            starts = sorted(rng.sample(eligible, PERCENTILE_START_CAP))
        else:
            starts = eligible
    elif isinstance(selection, ExplicitStarts):
        starts = list(selection.nodes)
        if len(set(starts)) != len(starts):
            raise ConfigError("explicit start list contains duplicates")
        for v in starts:
            if not 0 <= v < g.n:
                raise ConfigError(f"explicit start {v} outside [0, {g.n})")
    else:
        raise ConfigError(f"unknown start selection {selection!r}")
    if not starts:
        raise ConfigError(f"start selection {selection!r} chose no nodes")
    return starts


def resolve_graph(cfg: ExperimentConfig) -> tuple[Graph, RealizedStats | None]:
    if isinstance(cfg.generator, GeneratorSpec):
        result = generate(cfg.generator)
        return result.graph, result.stats
    from .fileio import ingest_edge_list  # deferred to avoid an import cycle

    g, _, _ = ingest_edge_list(cfg.generator)
    return g, None


# Worker-process context for parallel cell execution; populated once per
# worker so the graph is not re-pickled per cell.
_CTX: dict = {}


def _init_worker(g, policies, starts, degrees, cfg_fields) -> None:
    _CTX["g"] = g
    _CTX["policies"] = policies
    _CTX["starts"] = starts
    _CTX["degrees"] = degrees
    _CTX["cfg"] = cfg_fields


def _run_cell(cell: tuple[int, int, int]) -> TaggedCurve:
    pi, si, ri = cell
    g = _CTX["g"]
    policy = _CTX["policies"][pi]
    start = _CTX["starts"][si]
    cfg = _CTX["cfg"]
    seed = derive_seed(cfg["master_seed"], pi, si, ri)
    curve, brain = run_discovery(
        g,
        start,
        policy,
        random.Random(seed),
        step_cap=cfg["step_cap"],
        thresholds=cfg["thresholds"],
        target_fraction=cfg["target_fraction"],
    )
    return TaggedCurve(
        group=cfg["group"],
        policy=policy,
        start=start,
        start_degree=_CTX["degrees"][si],
        repetition=ri,
        curve=curve,
        walk_count=brain.walk_count,
        cap_hits=brain.cap_hits,
    )


def _worker_count(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("NETBRAIN_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"NETBRAIN_THREADS must be an integer, got {env!r}")
    return 1


def run_experiment(
    cfg: ExperimentConfig,
    graph: Graph | None = None,
    group: str = "",
    workers: int | None = None,
) -> list[TaggedCurve]:
    """Run one discovery per (policy, start, repetition) cell.

    Child seeds are derived statelessly from (master_seed, cell indices), so
    cells are independent and the result is the same at any parallelism.
    `workers` defaults to NETBRAIN_THREADS or 1.
    """
    cfg.validate()
    if graph is None:
        graph, _ = resolve_graph(cfg)
    starts = select_starts(
        graph, cfg.start, random.Random(derive_seed(cfg.master_seed, "starts"))
    )
    degrees = [graph.degree(v) for v in starts]
    cells = [
        (pi, si, ri)
        for pi in range(len(cfg.policies))
        for si in range(len(starts))
        for ri in range(cfg.repetitions_per_start)
    ]
    cfg_fields = {
        "master_seed": cfg.master_seed,
        "step_cap": cfg.step_cap,
        "thresholds": cfg.thresholds,
        "target_fraction": cfg.target_fraction,
        "group": group,
    }
    nworkers = _worker_count(workers)
    if nworkers <= 1 or len(cells) <= 1:
        _init_worker(graph, cfg.policies, starts, degrees, cfg_fields)
        return [_run_cell(c) for c in cells]
    with ProcessPoolExecutor(
        max_workers=nworkers,
        initializer=_init_worker,
        initargs=(graph, cfg.policies, starts, degrees, cfg_fields),
    ) as pool:
        results = list(pool.map(_run_cell, cells, chunksize=max(1, len(cells) // (4 * nworkers))))
    return results


def aggregate(
    curves: Sequence[TaggedCurve],
    group_by: Callable[[TaggedCurve], tuple[str, WalkPolicy]] | None = None,
) -> list[AggregateCurve]:
    """Per-group, per-threshold mean and standard deviation of steps.

    All curves must share one threshold grid. Duplicated inputs count as
    extra samples (the sd shrinks accordingly). The default grouping key is
    (group tag, policy).
    """
    if not curves:
        return []
    key_of = group_by or (lambda c: (c.group, c.policy))
    grid = curves[0].curve.thresholds
    groups: dict[tuple[str, WalkPolicy], list[TaggedCurve]] = {}
    for c in curves:
        if c.curve.thresholds != grid:
            raise AggregationError("curves mix different threshold grids")
        groups.setdefault(key_of(c), []).append(c)
    out = []
    for (label, policy), members in sorted(groups.items(), key=lambda kv: (kv[0][0], kv[0][1].value)):
        columns = list(zip(*(tuple(s for _, s in c.curve.crossings) for c in members)))
        if len(columns) != len(grid):
            raise AggregationError("curves did not cross every threshold in the grid")
        means = tuple(fmean(col) for col in columns)
        sds = tuple(pstdev(col) for col in columns)
        out.append(
            AggregateCurve(
                group=label,
                policy=policy,
                thresholds=grid,
                mean_steps=means,
                sd_steps=sds,
                n_samples=len(members),
            )
        )
    return out


SWEEP_AXES = ("k_avg", "p_rewire", "mu", "model", "hub_degree")


def sweep(
    base: ExperimentConfig,
    axis: str,
    values: Sequence | None = None,
    workers: int | None = None,
) -> dict[object, list[AggregateCurve]]:
    """Run the experiment across an axis, with independent seeds per value.

    Generator axes (k_avg, p_rewire, mu, model) re-generate the network per
    value; the hub_degree axis runs the base config once and buckets curves
    by the exact degree of their start node.
    """
    if axis not in SWEEP_AXES:
        raise ConfigError(f"unknown sweep axis {axis!r}, expected one of {SWEEP_AXES}")
    if axis == "hub_degree":
        curves = run_experiment(base, workers=workers)
        buckets: dict[object, list[TaggedCurve]] = {}
        for c in curves:
            buckets.setdefault(c.start_degree, []).append(c)
        return {
            deg: aggregate(
                [replace(c, group=f"deg={deg}") for c in buckets[deg]]
            )
            for deg in sorted(buckets)
        }
    if not values:
        raise ConfigError("sweep needs at least one axis value")
    if not isinstance(base.generator, GeneratorSpec):
        raise ConfigError("generator sweeps require a model spec, not an edge list")
    out: dict[object, list[AggregateCurve]] = {}
    for i, value in enumerate(values):
        if axis == "model":
            spec = replace(base.generator, model=str(value))
        else:
            spec = replace(base.generator, **{axis: value})
        try:
            spec.validate()
        except ParameterError as exc:
            raise ConfigError(f"sweep value {value!r} invalid for axis {axis}: {exc}") from exc
        spec = replace(spec, seed=derive_seed(base.master_seed, "sweep-gen", axis, i))
        cfg = replace(
            base,
            generator=spec,
            master_seed=derive_seed(base.master_seed, "sweep-run", axis, i),
        )
        curves = run_experiment(cfg, group=f"{axis}={value}", workers=workers)
        out[value] = aggregate(curves)
    return out
