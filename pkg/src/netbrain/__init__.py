"""netbrain: centralized network-discovery simulation.

Agents repeatedly walk a network from one fixed brain node, reporting what
they find; the library measures the cumulative step cost of discovering
given fractions of the network under three walk dynamics, on six network
models or any ingested edge list.
"""

__version__ = "0.1.0"

from .dynamics import (
    BrainState,
    LearningCurve,
    NodeState,
    Termination,
    WalkOutcome,
    WalkPolicy,
    default_thresholds,
    eligible_moves,
    policy_step_metric,
    run_discovery,
    run_walk,
)
from .errors import (
    AggregationError,
    ConfigError,
    ConstructionError,
    DiscoveryStallError,
    NetbrainError,
    ParameterError,
    ParseError,
)
from .fileio import (
    IngestReport,
    config_from_dict,
    config_to_dict,
    ingest_edge_list,
    load_config,
    save_config,
    write_aggregate_csv,
    write_curves_csv,
    write_edge_list,
)
from .generators import (
    GenerationResult,
    GeneratorSpec,
    RealizedStats,
    gen_ba,
    gen_cm,
    gen_er,
    gen_sbm,
    gen_waxman,
    gen_ws,
    generate,
    sbm_intra_probability,
    waxman_beta,
)
from .graph import (
    Graph,
    betweenness,
    build_graph,
    build_graph_reported,
    connected_components,
    degree,
    degree_ranked_nodes,
    is_connected,
    largest_connected_component,
)
from .harness import (
    AggregateCurve,
    BetweennessPercentile,
    DegreeRankedStride,
    ExperimentConfig,
    ExplicitStarts,
    StartSelection,
    TaggedCurve,
    TopHubs,
    aggregate,
    derive_seed,
    run_experiment,
    select_starts,
    sweep,
)

__all__ = [
    "__version__",
    "AggregateCurve",
    "AggregationError",
    "BetweennessPercentile",
    "BrainState",
    "ConfigError",
    "ConstructionError",
    "DegreeRankedStride",
    "DiscoveryStallError",
    "ExperimentConfig",
    "ExplicitStarts",
    "GenerationResult",
    "GeneratorSpec",
    "Graph",
    "IngestReport",
    "LearningCurve",
    "NetbrainError",
    "NodeState",
    "ParameterError",
    "ParseError",
    "RealizedStats",
    "StartSelection",
    "TaggedCurve",
    "Termination",
    "TopHubs",
    "WalkOutcome",
    "WalkPolicy",
    "aggregate",
    "betweenness",
    "build_graph",
    "build_graph_reported",
    "config_from_dict",
    "config_to_dict",
    "connected_components",
    "default_thresholds",
    "degree",
    "degree_ranked_nodes",
    "derive_seed",
    "eligible_moves",
    "gen_ba",
    "gen_cm",
    "gen_er",
    "gen_sbm",
    "gen_waxman",
    "gen_ws",
    "generate",
    "ingest_edge_list",
    "is_connected",
    "largest_connected_component",
    "load_config",
    "policy_step_metric",
    "run_discovery",
    "run_experiment",
    "run_walk",
    "save_config",
    "sbm_intra_probability",
    "select_starts",
    "sweep",
    "waxman_beta",
    "write_aggregate_csv",
    "write_curves_csv",
    "write_edge_list",
]
