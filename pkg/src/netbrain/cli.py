"""Command line interface: generate, ingest, run, sweep."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

from . import __version__
from .dynamics import WalkPolicy, default_thresholds
from .errors import NetbrainError
from .fileio import (
    config_from_dict,
    config_to_dict,
    ingest_edge_list,
    load_config,
    write_aggregate_csv,
    write_curves_csv,
    write_edge_list,
    write_manifest,
)
from .generators import GeneratorSpec, generate
from .harness import (
    BetweennessPercentile,
    DegreeRankedStride,
    ExperimentConfig,
    ExplicitStarts,
    TopHubs,
    aggregate,
    resolve_graph,
    run_experiment,
    sweep,
)


def _add_generator_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("model", choices=["er", "ba", "cm", "ws", "waxman", "sbm"])
    p.add_argument("--n", type=int, default=0, help="node count")
    p.add_argument("--k", type=float, default=0.0, help="target average degree")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p-rewire", type=float, default=0.03, help="ws rewiring probability")
    p.add_argument("--mu", type=float, default=0.01, help="sbm inter-block probability")
    p.add_argument("--blocks", type=int, default=10, help="sbm block count")
    p.add_argument("--alpha", type=float, default=0.5, help="waxman decay length fraction")
    p.add_argument("--degrees-file", help="cm degree sequence, one integer per line")


def _spec_from_args(args: argparse.Namespace) -> GeneratorSpec:
    degree_sequence = None
    if args.model == "cm":
        if not args.degrees_file:
            raise NetbrainError("cm requires --degrees-file")
        text = Path(args.degrees_file).read_text().split()
        degree_sequence = tuple(int(x) for x in text)
    return GeneratorSpec(
        model=args.model,
        n=args.n,
        k_avg=args.k,
        seed=args.seed,
        p_rewire=args.p_rewire,
        mu=args.mu,
        blocks=args.blocks,
        alpha=args.alpha,
        degree_sequence=degree_sequence,
    )


def _cmd_generate(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    result = generate(spec)
    stats = result.stats
    header = [
        f"netbrain v{__version__} model={stats.model} seed={spec.seed}",
        f"requested n={stats.requested_n} k_avg={stats.requested_k_avg:g}",
        f"realized n={stats.n} m={stats.m} k_avg={stats.k_avg:.4f} "
        f"dropped_outside_lcc={stats.nodes_outside_lcc}",
    ]
    write_edge_list(result.graph, args.out, header=header)
    print(
        f"{stats.model}: n={stats.n} m={stats.m} k_avg={stats.k_avg:.3f} "
        f"(requested n={stats.requested_n}, k_avg={stats.requested_k_avg:g}; "
        f"{stats.nodes_outside_lcc} nodes outside LCC) -> {args.out}"
    )
    return 0


def _cmd_ingest(args: argparse.Namespace) -> int:
    g, label_map, report = ingest_edge_list(args.edge_list)
    print(
        f"raw: {report.raw_nodes} nodes, {report.raw_edges} edge lines "
        f"({report.self_loops_dropped} self-loops, {report.duplicates_dropped} duplicates dropped); "
        f"LCC: {report.lcc_nodes} nodes, {report.lcc_edges} edges"
    )
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        write_edge_list(g, out / "graph.txt", header=[f"LCC of {args.edge_list}"])
        (out / "label_map.json").write_text(
            json.dumps({str(k): v for k, v in label_map.items()}, indent=2, sort_keys=True) + "\n"
        )
        (out / "ingest_report.json").write_text(
            json.dumps(report.__dict__, indent=2, sort_keys=True) + "\n"
        )
        print(f"wrote {out / 'graph.txt'}, label_map.json, ingest_report.json")
    return 0


def _start_from_flag(text: str):
    kind, _, arg = text.partition(":")
    if kind == "stride":
        return DegreeRankedStride(stride=int(arg))
    if kind == "hubs":
        return TopHubs(count=int(arg))
    if kind == "percentile":
        return BetweennessPercentile(min_percentile=float(arg))
    if kind == "explicit":
        return ExplicitStarts(nodes=tuple(int(v) for v in arg.split(",")))
    raise NetbrainError(
        f"unknown start selection {text!r}; use stride:N, hubs:N, percentile:P or explicit:a,b,c"
    )


def _config_from_flags(args: argparse.Namespace) -> ExperimentConfig:
    if args.edge_list:
        generator: GeneratorSpec | str = args.edge_list
    else:
        if not args.model:
            raise NetbrainError("provide --config, or --model/--edge-list flags")
        generator = _spec_from_args(args)
    policies = tuple(WalkPolicy(p.strip()) for p in args.policies.split(","))
    thresholds = (
        tuple(float(t) for t in args.thresholds.split(","))
        if args.thresholds
        else default_thresholds()
    )
    return ExperimentConfig(
        generator=generator,
        policies=policies,
        start=_start_from_flag(args.start),
        repetitions_per_start=args.reps,
        step_cap=args.step_cap,
        thresholds=thresholds,
        master_seed=args.master_seed,
    )


def _load_or_build_config(args: argparse.Namespace) -> tuple[ExperimentConfig, dict | None]:
    if args.config:
        return load_config(args.config)
    return _config_from_flags(args), None


def _write_run_outputs(out_dir: Path, cfg: ExperimentConfig, curves, stats, elapsed: float) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    write_curves_csv(curves, out_dir / "curves.csv")
    write_aggregate_csv(aggregate(curves), out_dir / "aggregate.csv")
    manifest = {
        "netbrain_version": __version__,
        "config": config_to_dict(cfg),
        "graph_stats": None if stats is None else stats.__dict__,
        "cells": len(curves),
        "total_walks": sum(c.walk_count for c in curves),
        "cap_hits": sum(c.cap_hits for c in curves),
        "wall_time_s": round(elapsed, 3),
        "created": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    write_manifest(out_dir / "manifest.json", manifest)


def _cmd_run(args: argparse.Namespace) -> int:
    cfg, sweep_block = _load_or_build_config(args)
    if sweep_block is not None:
        raise NetbrainError("config contains a sweep block; use 'netbrain sweep'")
    started = time.monotonic()
    graph, stats = resolve_graph(cfg)
    curves = run_experiment(cfg, graph=graph, workers=args.workers)
    _write_run_outputs(Path(args.out), cfg, curves, stats, time.monotonic() - started)
    print(f"{len(curves)} curves -> {args.out}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg, sweep_block = load_config(args.config)
    if sweep_block is None:
        raise NetbrainError("sweep config needs a 'sweep' block with axis and values")
    axis = sweep_block["axis"]
    values = sweep_block.get("values")
    started = time.monotonic()
    keyed = sweep(cfg, axis, values, workers=args.workers)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    combined = []
    for value, aggs in keyed.items():
        write_aggregate_csv(aggs, out_dir / f"aggregate_{axis}_{value}.csv")
        combined.extend(aggs)
    write_aggregate_csv(combined, out_dir / "aggregate_combined.csv")
    manifest = {
        "netbrain_version": __version__,
        "config": config_to_dict(cfg, sweep_block),
        "axis": axis,
        "values": [str(v) for v in keyed],
        "wall_time_s": round(time.monotonic() - started, 3),
        "created": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    write_manifest(out_dir / "manifest.json", manifest)
    print(f"{len(keyed)} axis values -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netbrain",
        description="Simulate centralized network discovery via repeated "
        "self-avoiding walks from a fixed brain node.",
    )
    parser.add_argument("--version", action="version", version=f"netbrain {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="generate a network and write its edge list")
    _add_generator_args(p_gen)
    p_gen.add_argument("--out", required=True, help="output edge-list path")
    p_gen.set_defaults(func=_cmd_generate)

    p_ing = sub.add_parser("ingest", help="parse an edge list and report its LCC")
    p_ing.add_argument("edge_list")
    p_ing.add_argument("--out", help="directory for the dense LCC edge list and label map")
    p_ing.set_defaults(func=_cmd_ingest)

    for name, help_text in (("run", "run one experiment"), ("sweep", "run a parameter sweep")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="experiment config file (JSON)")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--workers", type=int, default=None, help="parallel worker processes")
        if name == "run":
            p.add_argument("--edge-list", help="run on an ingested edge list")
            p.add_argument("--model", choices=["er", "ba", "cm", "ws", "waxman", "sbm"])
            p.add_argument("--n", type=int, default=0)
            p.add_argument("--k", type=float, default=0.0)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--p-rewire", type=float, default=0.03)
            p.add_argument("--mu", type=float, default=0.01)
            p.add_argument("--blocks", type=int, default=10)
            p.add_argument("--alpha", type=float, default=0.5)
            p.add_argument("--degrees-file")
            p.add_argument("--policies", default="standard", help="comma-separated policies")
            p.add_argument("--start", default="stride:50", help="stride:N | hubs:N | percentile:P | explicit:a,b,c")
            p.add_argument("--reps", type=int, default=10)
            p.add_argument("--step-cap", type=int, default=None)
            p.add_argument("--thresholds", help="comma-separated fractions")
            p.add_argument("--master-seed", type=int, default=0)
            p.set_defaults(func=_cmd_run)
        else:
            p.set_defaults(func=_cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NetbrainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
