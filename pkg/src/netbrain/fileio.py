"""External surfaces: edge-list ingestion, config files, CSV and manifest output."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .dynamics import WalkPolicy, default_thresholds
from .errors import ConfigError, ParseError
from .generators import MODELS, GeneratorSpec
from .graph import Graph, build_graph_reported, largest_connected_component
from .harness import (
    AggregateCurve,
    BetweennessPercentile,
    DegreeRankedStride,
    ExperimentConfig,
    ExplicitStarts,
    StartSelection,
    TaggedCurve,
    TopHubs,
)


@dataclass(frozen=True)
class IngestReport:
    """What an edge-list ingest found and kept."""

    raw_nodes: int
    raw_edges: int
    self_loops_dropped: int
    duplicates_dropped: int
    lcc_nodes: int
    lcc_edges: int


def ingest_edge_list(path: str | Path) -> tuple[Graph, dict[int, int], IngestReport]:
    """Read an undirected edge list and return its LCC as a dense graph.

    One edge per line, two whitespace-separated non-negative integer labels;
    lines starting with '#' are ignored. Labels need not be dense; the
    returned map sends original labels of retained nodes to their dense ids.
    """
    path = Path(path)
    raw_edges: list[tuple[int, int]] = []
    labels: set[int] = set()
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.split()
            if len(parts) != 2:
                raise ParseError(f"{path}:{lineno}: expected two node labels, got {text!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"{path}:{lineno}: node labels must be integers, got {text!r}")
            if u < 0 or v < 0:
                raise ParseError(f"{path}:{lineno}: node labels must be non-negative")
            raw_edges.append((u, v))
            labels.add(u)
            labels.add(v)
    if not raw_edges:
        raise ParseError(f"{path}: no edges found")
    dense = {label: i for i, label in enumerate(sorted(labels))}
    g, drops = build_graph_reported(len(dense), [(dense[u], dense[v]) for u, v in raw_edges])
    lcc, lcc_map = largest_connected_component(g)
    label_map = {
        label: lcc_map[dense[label]] for label in sorted(labels) if dense[label] in lcc_map
    }
    report = IngestReport(
        raw_nodes=len(labels),
        raw_edges=len(raw_edges),
        self_loops_dropped=drops.self_loops,
        duplicates_dropped=drops.duplicates,
        lcc_nodes=lcc.n,
        lcc_edges=lcc.m,
    )
    return lcc, label_map, report


def write_edge_list(g: Graph, path: str | Path, header: Sequence[str] = ()) -> None:
    """Write edges as 'u v' lines (u < v, ascending), with optional # header lines."""
    path = Path(path)
    with path.open("w") as fh:
        for line in header:
            fh.write(f"# {line}\n")
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")


# --- experiment config files (JSON) -----------------------------------------

_GENERATOR_KEYS = {
    "er": {"model", "n", "k_avg", "seed"},
    "ba": {"model", "n", "k_avg", "seed"},
    "cm": {"model", "degree_sequence", "seed"},
    "ws": {"model", "n", "k_avg", "seed", "p_rewire"},
    "waxman": {"model", "n", "k_avg", "seed", "alpha"},
    "sbm": {"model", "n", "k_avg", "seed", "mu", "blocks"},
}

_START_KINDS = {
    "degree_stride": ("stride",),
    "betweenness_percentile": ("min_percentile",),
    "top_hubs": ("count",),
    "explicit": ("nodes",),
}

_TOP_KEYS = {
    "generator",
    "edge_list",
    "policies",
    "start",
    "repetitions_per_start",
    "step_cap",
    "thresholds",
    "master_seed",
    "target_fraction",
    "sweep",
}


def _generator_from_dict(d: dict) -> GeneratorSpec:
    if not isinstance(d, dict):
        raise ConfigError("generator must be a mapping")
    model = d.get("model")
    if model not in MODELS:
        raise ConfigError(f"generator.model must be one of {MODELS}, got {model!r}")
    allowed = _GENERATOR_KEYS[model]
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(f"unknown generator keys for {model}: {sorted(unknown)}")
    kwargs = dict(d)
    if "degree_sequence" in kwargs:
        kwargs["degree_sequence"] = tuple(int(x) for x in kwargs["degree_sequence"])
    spec = GeneratorSpec(**kwargs)
    spec.validate()
    return spec


def _generator_to_dict(spec: GeneratorSpec) -> dict:
    d: dict = {"model": spec.model, "seed": spec.seed}
    if spec.model == "cm":
        d["degree_sequence"] = list(spec.degree_sequence or ())
        return d
    d["n"] = spec.n
    d["k_avg"] = spec.k_avg
    if spec.model == "ws":
        d["p_rewire"] = spec.p_rewire
    elif spec.model == "waxman":
        d["alpha"] = spec.alpha
    elif spec.model == "sbm":
        d["mu"] = spec.mu
        d["blocks"] = spec.blocks
    return d


def _start_from_dict(d: dict) -> StartSelection:
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigError("start must be a mapping with a 'kind' key")
    kind = d["kind"]
    if kind not in _START_KINDS:
        raise ConfigError(f"start.kind must be one of {sorted(_START_KINDS)}, got {kind!r}")
    unknown = set(d) - {"kind", *_START_KINDS[kind]}
    if unknown:
        raise ConfigError(f"unknown start keys for {kind}: {sorted(unknown)}")
    try:
        if kind == "degree_stride":
            return DegreeRankedStride(stride=int(d["stride"]))
        if kind == "betweenness_percentile":
            return BetweennessPercentile(min_percentile=float(d["min_percentile"]))
        if kind == "top_hubs":
            return TopHubs(count=int(d["count"]))
        return ExplicitStarts(nodes=tuple(int(v) for v in d["nodes"]))
    except KeyError as exc:
        raise ConfigError(f"start.{exc.args[0]} is required for kind {kind}")


def _start_to_dict(sel: StartSelection) -> dict:
    if isinstance(sel, DegreeRankedStride):
        return {"kind": "degree_stride", "stride": sel.stride}
    if isinstance(sel, BetweennessPercentile):
        return {"kind": "betweenness_percentile", "min_percentile": sel.min_percentile}
    if isinstance(sel, TopHubs):
        return {"kind": "top_hubs", "count": sel.count}
    return {"kind": "explicit", "nodes": list(sel.nodes)}


def config_from_dict(d: dict) -> tuple[ExperimentConfig, dict | None]:
    """Build an ExperimentConfig (and optional sweep block) from a parsed mapping."""
    if not isinstance(d, dict):
        raise ConfigError("config root must be a mapping")
    unknown = set(d) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    has_gen = "generator" in d
    has_edges = "edge_list" in d
    if has_gen == has_edges:
        raise ConfigError("config needs exactly one of 'generator' or 'edge_list'")
    generator: GeneratorSpec | str
    if has_gen:
        generator = _generator_from_dict(d["generator"])
    else:
        generator = str(d["edge_list"])
    if "policies" not in d or not d["policies"]:
        raise ConfigError("config requires a non-empty 'policies' list")
    try:
        policies = tuple(WalkPolicy(p) for p in d["policies"])
    except ValueError as exc:
        raise ConfigError(f"unknown policy: {exc}")
    if "start" not in d:
        raise ConfigError("config requires a 'start' block")
    start = _start_from_dict(d["start"])
    thresholds = d.get("thresholds")
    cfg = ExperimentConfig(
        generator=generator,
        policies=policies,
        start=start,
        repetitions_per_start=int(d.get("repetitions_per_start", 10)),
        step_cap=None if d.get("step_cap") is None else int(d["step_cap"]),
        thresholds=default_thresholds()
        if thresholds is None
        else tuple(float(t) for t in thresholds),
        master_seed=int(d.get("master_seed", 0)),
        target_fraction=float(d.get("target_fraction", 1.0)),
    )
    cfg.validate()
    sweep_block = d.get("sweep")
    if sweep_block is not None:
        if not isinstance(sweep_block, dict):
            raise ConfigError("sweep must be a mapping")
        unknown = set(sweep_block) - {"axis", "values"}
        if unknown:
            raise ConfigError(f"unknown sweep keys: {sorted(unknown)}")
        if "axis" not in sweep_block:
            raise ConfigError("sweep requires an 'axis' key")
    return cfg, sweep_block


def config_to_dict(cfg: ExperimentConfig, sweep_block: dict | None = None) -> dict:
    d: dict = {}
    if isinstance(cfg.generator, GeneratorSpec):
        d["generator"] = _generator_to_dict(cfg.generator)
    else:
        d["edge_list"] = cfg.generator
    d["policies"] = [p.value for p in cfg.policies]
    d["start"] = _start_to_dict(cfg.start)
    d["repetitions_per_start"] = cfg.repetitions_per_start
    d["step_cap"] = cfg.step_cap
    if cfg.thresholds != default_thresholds():
        d["thresholds"] = list(cfg.thresholds)
    d["master_seed"] = cfg.master_seed
    if cfg.target_fraction != 1.0:
        d["target_fraction"] = cfg.target_fraction
    if sweep_block is not None:
        d["sweep"] = sweep_block
    return d


def load_config(path: str | Path) -> tuple[ExperimentConfig, dict | None]:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}")
    return config_from_dict(data)


def save_config(cfg: ExperimentConfig, path: str | Path, sweep_block: dict | None = None) -> None:
    Path(path).write_text(json.dumps(config_to_dict(cfg, sweep_block), indent=2, sort_keys=True) + "\n")


# --- result serialization -----------------------------------------------------

CURVE_HEADER = "group,policy,start_node,start_degree,repetition,threshold,steps"
AGGREGATE_HEADER = "group,policy,threshold,mean_steps,sd_steps,n_samples"


def write_curves_csv(curves: Sequence[TaggedCurve], path: str | Path) -> None:
    """One row per (curve, threshold), sorted for byte-stable output."""
    rows = []
    for c in curves:
        for threshold, steps in c.curve.crossings:
            rows.append((c.group, c.policy.value, c.start, c.repetition, threshold, c.start_degree, steps))
    rows.sort(key=lambda r: (r[0], r[1], r[2], r[3], r[4]))
    with Path(path).open("w") as fh:
        fh.write(CURVE_HEADER + "\n")
        for group, policy, start, rep, threshold, start_degree, steps in rows:
            fh.write(f"{group},{policy},{start},{start_degree},{rep},{threshold:.4f},{steps}\n")


def write_aggregate_csv(aggregates: Sequence[AggregateCurve], path: str | Path) -> None:
    rows = []
    for a in aggregates:
        for threshold, mean, sd in zip(a.thresholds, a.mean_steps, a.sd_steps):
            rows.append((a.group, a.policy.value, threshold, mean, sd, a.n_samples))
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    with Path(path).open("w") as fh:
        fh.write(AGGREGATE_HEADER + "\n")
        for group, policy, threshold, mean, sd, n in rows:
            fh.write(f"{group},{policy},{threshold:.4f},{mean:.4f},{sd:.4f},{n}\n")


def write_manifest(path: str | Path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
