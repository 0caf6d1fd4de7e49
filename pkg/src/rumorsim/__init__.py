"""Deterministic rumor-diffusion simulation and evaluation on directed social graphs."""

from .cli import main, run_cli
from .config import EvaluationPolicy, ModelKind, SimulationConfig, load_config
from .diffusion import (
    AdoptionState,
    AgentKind,
    BeliefState,
    EdgeProbability,
    EpidemicState,
    SirParams,
    TippingParams,
    belief_exchange,
    ic_step,
    run_belief_process,
    sir_step,
    tipping_step,
)
from .errors import (
    ConfigurationError,
    EmptyEvaluationError,
    ParseError,
    RumorSimError,
    UndefinedCorrelationError,
    UnknownUserError,
)
from .evaluate import (
    EvalReport,
    diffusion_curve,
    evaluate,
    metric_sweep,
    sweep_rows,
    write_eval_json,
)
from .gated import (
    DiffuserSet,
    SimilarityGate,
    diffuse_user_content,
    diffuse_user_user,
    filtered_edge_set,
    load_decisions,
)
from .graph import (
    RumorContent,
    SocialGraph,
    UserProfile,
    ValidationReport,
    load_edges,
    load_rumor,
    load_users,
    save_edges,
    validate,
)
from .rng import RngStream
from .similarity import (
    Metric,
    binary_vectors,
    canonical_topic_string,
    cosine,
    dice,
    jaccard,
    levenshtein,
    pearson,
    score,
    tokenize_topics,
    vector_cosine,
)
from .simulate import (
    DiffusionTrace,
    export_frames,
    read_trace_csv,
    rebuild_trace,
    run_simulation,
    run_trials,
    write_curve_csv,
    write_summary_json,
    write_trace_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AdoptionState",
    "AgentKind",
    "BeliefState",
    "ConfigurationError",
    "DiffuserSet",
    "DiffusionTrace",
    "EdgeProbability",
    "EmptyEvaluationError",
    "EpidemicState",
    "EvalReport",
    "EvaluationPolicy",
    "Metric",
    "ModelKind",
    "ParseError",
    "RngStream",
    "RumorContent",
    "RumorSimError",
    "SimilarityGate",
    "SimulationConfig",
    "SirParams",
    "SocialGraph",
    "TippingParams",
    "UndefinedCorrelationError",
    "UnknownUserError",
    "UserProfile",
    "ValidationReport",
    "belief_exchange",
    "binary_vectors",
    "canonical_topic_string",
    "cosine",
    "dice",
    "diffuse_user_content",
    "diffuse_user_user",
    "diffusion_curve",
    "evaluate",
    "export_frames",
    "filtered_edge_set",
    "ic_step",
    "jaccard",
    "levenshtein",
    "load_config",
    "load_decisions",
    "load_edges",
    "load_rumor",
    "load_users",
    "main",
    "metric_sweep",
    "pearson",
    "read_trace_csv",
    "rebuild_trace",
    "run_belief_process",
    "run_cli",
    "run_simulation",
    "run_trials",
    "save_edges",
    "score",
    "sir_step",
    "sweep_rows",
    "tipping_step",
    "tokenize_topics",
    "validate",
    "vector_cosine",
    "write_curve_csv",
    "write_eval_json",
    "write_summary_json",
    "write_trace_csv",
]
