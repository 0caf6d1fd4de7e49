"""Discrete-time agent simulation of rumor diffusion with reproducible traces.

Gated models wake each agent at its profile's created_at step; an agent
becomes a diffuser when some in-neighbor already diffuses and the similarity
gate passes, and then never leaves that state.  Agents inside one step are
evaluated in ascending user id and see activations made earlier in the same
step.  Classical models (sir, tipping, ic) ignore created_at and advance the
whole graph every tick.

Trial k of a run draws from an RngStream derived from (seed, k), so traces
are byte-for-byte reproducible for a given config.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .config import GATED_MODELS, EvaluationPolicy, ModelKind, SimulationConfig
from .diffusion import (
    AdoptionState,
    EdgeProbability,
    EpidemicState,
    SirParams,
    TippingParams,
    ic_step,
    sir_step,
    tipping_step,
)
from .errors import ConfigurationError, ParseError
from .gated import admission_test
from .graph import RumorContent, SocialGraph
from .rng import RngStream

TRACE_HEADER = ["trial", "step", "user_id", "new_state"]
CURVE_HEADER = ["step", "diffusers"]

# states that count toward the diffusion curve; all are absorbing or
# downstream of one (a recovered node was infected first)
_ACTIVE_LABELS = frozenset({"diffuser", "infected", "recovered", "adopted"})

_DEFAULT_LABELS = {
    ModelKind.GATED_USER_USER: "non_diffuser",
    ModelKind.GATED_USER_CONTENT: "non_diffuser",
    ModelKind.SIR: "susceptible",
    ModelKind.IC: "susceptible",
    ModelKind.TIPPING: "not_adopted",
}


@dataclass
class DiffusionTrace:
    """Result of one trial: per-step state changes plus derived views.

    ``changes`` maps step -> [(user_id, new_state_label)] and omits steps
    where nothing moved; ``counts`` has one entry per step 0..max_time.  The
    full state at any step reconstructs from the deltas alone.
    """

    model: ModelKind
    max_time: int
    initials: tuple
    changes: dict
    counts: list
    final_states: dict
    missing_profiles: list = field(default_factory=list)
    clamped_agents: int = 0

    def final_active(self) -> set:
        return {u for u, label in self.final_states.items() if label in _ACTIVE_LABELS}


def run_simulation(
    cfg: SimulationConfig,
    graph: SocialGraph,
    profiles: Mapping | None = None,
    rumor: RumorContent | None = None,
    decisions: Mapping | None = None,
    rng: RngStream | None = None,
) -> DiffusionTrace:
    """Run a single trial; equivalent to trial 0 of ``run_trials``."""
    if rng is None:
        rng = RngStream(cfg.seed).derive(0)
    if cfg.model in GATED_MODELS:
        return _run_gated(cfg, graph, profiles, rumor, decisions)
    return _run_classical(cfg, graph, rng)


def run_trials(
    cfg: SimulationConfig,
    graph: SocialGraph,
    profiles: Mapping | None = None,
    rumor: RumorContent | None = None,
    decisions: Mapping | None = None,
) -> tuple:
    """Run cfg.trials independent trials; returns (traces, mean curve)."""
    base = RngStream(cfg.seed)
    traces = [
        run_simulation(cfg, graph, profiles, rumor, decisions, rng=base.derive(k))
        for k in range(cfg.trials)
    ]
    aggregate = [
        math.fsum(trace.counts[t] for trace in traces) / len(traces)
        for t in range(cfg.max_time + 1)
    ]
    return traces, aggregate


def _run_gated(cfg, graph, profiles, rumor, decisions) -> DiffusionTrace:
    if profiles is None:
        raise ConfigurationError(f"model {cfg.model.value} requires user profiles")
    if cfg.model is ModelKind.GATED_USER_CONTENT and rumor is None:
        raise ConfigurationError("model gated_user_content requires rumor content")
    _check_initials(cfg.initials, graph)
    for uid in cfg.initials:
        if uid not in profiles:
            raise ConfigurationError(f"initial diffuser {uid} has no profile")

    compare_to_rumor = cfg.model is ModelKind.GATED_USER_CONTENT
    missing = set()
    admit = admission_test(profiles, rumor if compare_to_rumor else None, cfg.gate(decisions), missing)

    active = set(cfg.initials)
    every_step = cfg.evaluation_policy is EvaluationPolicy.EVERY_STEP
    # wake-up schedule; nodes without a profile have no created_at and never evaluate
    schedule = []
    clamped = 0
    for u in sorted(graph.nodes):
        if u in active or u not in profiles:
            continue
        created_at = profiles[u].created_at
        if 0 <= created_at <= cfg.max_time:
            schedule.append((u, created_at))
        else:
            clamped += 1
    wake = {}
    for u, created_at in schedule:
        wake.setdefault(created_at, []).append(u)
    last_wake = max(wake) if wake else -1

    changes = {}
    counts = []
    t = 0
    while t <= cfg.max_time:
        delta = []
        if t == 0:
            delta.extend((u, "diffuser") for u in sorted(active))
        if every_step:
            candidates = [u for u, created_at in schedule if created_at <= t and u not in active]
        else:
            candidates = wake.get(t, [])
        for j in candidates:
            if j in active:
                continue
            # live view: sources activated earlier in this same step count
            for i in graph.in_neighbors(j):
                if i in active and admit(i, j):
                    active.add(j)
                    delta.append((j, "diffuser"))
                    break
        if delta:
            changes[t] = delta
        counts.append(len(active))
        stalled = not delta if every_step else True
        if last_wake <= t and stalled:
            break
        t += 1
    _pad_counts(counts, cfg.max_time)

    final_states = {
        u: "diffuser" if u in active else "non_diffuser" for u in graph.nodes
    }
    return DiffusionTrace(
        cfg.model,
        cfg.max_time,
        tuple(sorted(set(cfg.initials))),
        changes,
        counts,
        final_states,
        sorted(missing),
        clamped,
    )


def _run_classical(cfg, graph, rng) -> DiffusionTrace:
    _check_initials(cfg.initials, graph)
    initials = set(cfg.initials)
    if cfg.model is ModelKind.TIPPING:
        tipping = TippingParams(cfg.model_param("theta"))
        states = {
            u: AdoptionState.ADOPTED if u in initials else AdoptionState.NOT_ADOPTED
            for u in graph.nodes
        }
    elif cfg.model is ModelKind.SIR:
        sir = SirParams(cfg.model_param("beta"), cfg.model_param("gamma"))
        states = _seed_epidemic(graph, initials)
    elif cfg.model is ModelKind.IC:
        probs = EdgeProbability(cfg.model_param("ic_default_p"))
        states = _seed_epidemic(graph, initials)
        attempted = set()
    else:
        raise ConfigurationError(f"model {cfg.model.value} is not a classical model")

    changes = {0: [(u, states[u].value) for u in sorted(initials)]}
    counts = [_count_active(states)]
    for t in range(1, cfg.max_time + 1):
        if cfg.model is ModelKind.TIPPING:
            new_states = tipping_step(graph, states, tipping)
        else:
            # a step without infected nodes cannot change anything
            if not _any_infected(states):
                break
            if cfg.model is ModelKind.SIR:
                new_states = sir_step(graph, states, sir, rng)
            else:
                new_states, attempted = ic_step(graph, states, probs, attempted, rng)
        delta = [
            (u, new_states[u].value)
            for u in sorted(graph.nodes)
            if new_states[u] is not states[u]
        ]
        states = new_states
        if delta:
            changes[t] = delta
        counts.append(_count_active(states))
        if not delta and cfg.model is ModelKind.TIPPING:
            break
    _pad_counts(counts, cfg.max_time)

    final_states = {u: states[u].value for u in graph.nodes}
    return DiffusionTrace(
        cfg.model,
        cfg.max_time,
        tuple(sorted(initials)),
        changes,
        counts,
        final_states,
    )


def _seed_epidemic(graph, initials) -> dict:
    return {
        u: EpidemicState.INFECTED if u in initials else EpidemicState.SUSCEPTIBLE
        for u in graph.nodes
    }


def _any_infected(states) -> bool:
    return any(s is EpidemicState.INFECTED for s in states.values())


def _count_active(states) -> int:
    return sum(1 for s in states.values() if s.value in _ACTIVE_LABELS)


def _check_initials(initials, graph) -> None:
    if not initials:
        raise ConfigurationError("at least one initial diffuser is required")
    for uid in initials:
        if uid not in graph.nodes:
            raise ConfigurationError(f"initial diffuser {uid} is not in the graph")


def _pad_counts(counts, max_time) -> None:
    # the loop may stop early once the state is provably stationary
    while len(counts) < max_time + 1:
        counts.append(counts[-1])


def write_trace_csv(traces, path) -> None:
    """Write all trials' deltas as trial,step,user_id,new_state rows."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for k, trace in enumerate(traces):
            for step in sorted(trace.changes):
                for uid, label in trace.changes[step]:
                    writer.writerow([k, step, uid, label])


def read_trace_csv(path, trial: int) -> dict:
    """Read back one trial's deltas from a trace.csv written by this module."""
    changes = {}
    seen_trials = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != TRACE_HEADER:
            raise ParseError(path, 1, f"expected header {','.join(TRACE_HEADER)!r}, got {header!r}")
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise ParseError(path, line_no, f"expected 4 fields, got {len(row)}")
            try:
                k, step, uid = int(row[0]), int(row[1]), int(row[2])
            except ValueError:
                raise ParseError(path, line_no, f"non-integer field in {row!r}") from None
            seen_trials.add(k)
            if k == trial:
                changes.setdefault(step, []).append((uid, row[3]))
    if trial not in seen_trials:
        raise ConfigurationError(f"trial {trial} not present in {path} (has {sorted(seen_trials)})")
    return changes


def rebuild_trace(cfg: SimulationConfig, graph: SocialGraph, changes: dict) -> DiffusionTrace:
    """Reconstruct the full per-step view of one trial from its deltas."""
    default = _DEFAULT_LABELS[cfg.model]
    states = {u: default for u in graph.nodes}
    active = set()
    counts = []
    for t in range(cfg.max_time + 1):
        for uid, label in changes.get(t, ()):
            if uid not in states:
                raise ConfigurationError(f"trace references unknown user {uid}")
            states[uid] = label
            if label in _ACTIVE_LABELS:
                active.add(uid)
        counts.append(len(active))
    initials = tuple(uid for uid, _ in changes.get(0, ()))
    return DiffusionTrace(cfg.model, cfg.max_time, initials, dict(changes), counts, states)


def export_frames(trace: DiffusionTrace, graph: SocialGraph, out_dir) -> list:
    """Write one DOT frame per step plus curve.csv; returns the frame paths.

    Nodes are colored red once they have diffused (or been infected /
    adopted) and blue otherwise, so the frame sequence animates the spread.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    nodes_sorted = sorted(graph.nodes)
    edges_sorted = sorted(graph.edges)
    active = set()
    paths = []
    for t in range(trace.max_time + 1):
        for uid, label in trace.changes.get(t, ()):
            if label in _ACTIVE_LABELS:
                active.add(uid)
        lines = ["digraph diffusion {"]
        lines.extend(
            f"  {u} [color={'red' if u in active else 'blue'}];" for u in nodes_sorted
        )
        lines.extend(f"  {a} -> {b};" for a, b in edges_sorted)
        lines.append("}")
        frame_path = out / f"frame_{t:04d}.dot"
        frame_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        paths.append(frame_path)
    write_curve_csv(trace.counts, out / "curve.csv")
    return paths


def write_curve_csv(series, path) -> None:
    """Write a step,diffusers series (ints for one trial, means for many)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CURVE_HEADER)
        for step, value in enumerate(series):
            writer.writerow([step, value])


def config_echo(cfg: SimulationConfig) -> dict:
    """JSON-friendly dump of the effective configuration."""
    return {
        "edges_path": str(cfg.edges_path),
        "users_path": str(cfg.users_path),
        "rumor_path": str(cfg.rumor_path) if cfg.rumor_path else None,
        "decisions_path": str(cfg.decisions_path) if cfg.decisions_path else None,
        "out_dir": str(cfg.out_dir),
        "max_time": cfg.max_time,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "model": cfg.model.value,
        "metric": cfg.metric.value,
        "threshold": cfg.threshold,
        "evaluation_policy": cfg.evaluation_policy.value,
        "initials": list(cfg.initials),
        "beta": cfg.beta,
        "gamma": cfg.gamma,
        "theta": cfg.theta,
        "ic_default_p": cfg.ic_default_p,
        "metrics": [m.value for m in cfg.metrics],
    }


def write_summary_json(cfg, traces, aggregate, runtime_seconds, path) -> None:
    """Write final counts, a config echo, and the wall-clock runtime."""
    payload = {
        "config": config_echo(cfg),
        "trials": [
            {
                "trial": k,
                "final_diffusers": trace.counts[-1],
                "steps_with_changes": len(trace.changes),
                "missing_profiles": list(trace.missing_profiles),
                "clamped_agents": trace.clamped_agents,
            }
            for k, trace in enumerate(traces)
        ],
        "final_diffusers_mean": aggregate[-1],
        "runtime_seconds": round(runtime_seconds, 6),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
