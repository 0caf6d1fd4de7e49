"""Classical diffusion dynamics: SIR, threshold adoption, independent cascade,
and pairwise belief exchange between regular and forceful agents.

Step functions are synchronous: every transition in one call is decided from
the states at the start of that call.  Influence travels along edge direction,
so a node is exposed through its in-neighbors.  Random draws always happen in
sorted node order and are never short-circuited, which keeps the stream
consumption, and therefore whole runs, reproducible for a given seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .errors import ConfigurationError, UnknownUserError
from .graph import SocialGraph
from .rng import RngStream


class EpidemicState(Enum):
    SUSCEPTIBLE = "susceptible"
    INFECTED = "infected"
    RECOVERED = "recovered"  # absorbing


class AdoptionState(Enum):
    NOT_ADOPTED = "not_adopted"
    ADOPTED = "adopted"  # absorbing


class AgentKind(Enum):
    REGULAR = "regular"
    FORCEFUL = "forceful"


def _check_probability(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ConfigurationError(f"{name} must be in [0, 1], got {value}")


def _require_states(graph: SocialGraph, states: Mapping) -> None:
    for node in graph.nodes:
        if node not in states:
            raise ConfigurationError(f"no state for user {node}")


@dataclass(frozen=True)
class SirParams:
    """Per-contact infection probability and per-step recovery probability."""

    beta: float
    gamma: float

    def __post_init__(self):
        _check_probability("beta", self.beta)
        _check_probability("gamma", self.gamma)


@dataclass(frozen=True)
class TippingParams:
    """Adoption threshold on the fraction of adopted in-neighbors."""

    theta: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= 1.0:
            raise ConfigurationError(f"theta must be in [0, 1], got {self.theta}")


class EdgeProbability:
    """Per-edge success probability with a default for unlisted edges."""

    def __init__(self, default: float, overrides: Mapping | None = None):
        _check_probability("default edge probability", default)
        self.default = default
        self.overrides = dict(overrides or {})
        for edge, p in self.overrides.items():
            _check_probability(f"probability for edge {edge}", p)

    def get(self, edge: tuple) -> float:
        return self.overrides.get(edge, self.default)


def sir_step(graph: SocialGraph, states: Mapping, params: SirParams, rng: RngStream) -> dict:
    """One synchronous SIR update; returns the new state map.

    A susceptible node draws one uniform per infected in-neighbor and becomes
    infected if any draw is below beta.  Every draw happens even after a hit,
    so the stream position does not depend on outcomes.  A node infected at
    the start of the step recovers with probability gamma.
    """
    _require_states(graph, states)
    new_states = dict(states)
    for node in sorted(graph.nodes):
        state = states[node]
        if state is EpidemicState.SUSCEPTIBLE:
            hit = False
            for nb in graph.in_neighbors(node):
                if states[nb] is EpidemicState.INFECTED:
                    if rng.random() < params.beta:
                        hit = True
            if hit:
                new_states[node] = EpidemicState.INFECTED
        elif state is EpidemicState.INFECTED:
            if rng.random() < params.gamma:
                new_states[node] = EpidemicState.RECOVERED
    return new_states


def tipping_step(graph: SocialGraph, states: Mapping, params: TippingParams) -> dict:
    """One deterministic threshold update; returns the new state map.

    A node adopts when at least one in-neighbor has adopted and the adopted
    fraction of all its in-neighbors reaches theta.  Nodes with no
    in-neighbors never adopt.  Adoption is permanent.
    """
    _require_states(graph, states)
    new_states = dict(states)
    for node in sorted(graph.nodes):
        if states[node] is AdoptionState.ADOPTED:
            continue
        sources = graph.in_neighbors(node)
        if not sources:
            continue
        adopted = sum(1 for nb in sources if states[nb] is AdoptionState.ADOPTED)
        if adopted >= 1 and adopted / len(sources) >= params.theta:
            new_states[node] = AdoptionState.ADOPTED
    return new_states


def ic_step(
    graph: SocialGraph,
    states: Mapping,
    probs: EdgeProbability,
    attempted: set,
    rng: RngStream,
) -> tuple:
    """One independent-cascade step; returns (new states, new attempted set).

    Each node infected at the start of the step attempts every out-edge not
    already in ``attempted``; an attempt succeeds with the edge's probability
    and infects a susceptible target.  Attempted edges are consumed forever,
    and attempting nodes recover at the end of the step.
    """
    _require_states(graph, states)
    if not attempted <= graph.edges:
        raise ConfigurationError("attempted set contains edges not in the graph")
    new_states = dict(states)
    new_attempted = set(attempted)
    for node in sorted(graph.nodes):
        if states[node] is not EpidemicState.INFECTED:
            continue
        for target in graph.out_neighbors(node):
            edge = (node, target)
            if edge in new_attempted:
                continue
            new_attempted.add(edge)
            success = rng.random() < probs.get(edge)
            if success and states[target] is EpidemicState.SUSCEPTIBLE:
                new_states[target] = EpidemicState.INFECTED
        new_states[node] = EpidemicState.RECOVERED
    return new_states, new_attempted


@dataclass(frozen=True)
class BeliefState:
    """Beliefs in [0, 1] per user, each user regular or forceful.

    ``epsilon`` is the weight a regular node keeps on its own belief when it
    meets a forceful one; the forceful side never moves.
    """

    beliefs: dict
    kinds: dict
    epsilon: float

    def __post_init__(self):
        _check_probability("epsilon", self.epsilon)
        for uid, belief in self.beliefs.items():
            if not 0.0 <= belief <= 1.0:
                raise ConfigurationError(f"belief for user {uid} must be in [0, 1], got {belief}")
            if uid not in self.kinds:
                raise ConfigurationError(f"no agent kind for user {uid}")


def belief_exchange(state: BeliefState, i, j) -> BeliefState:
    """One pairwise exchange between users i and j; returns the new state.

    Two regular agents move to their average.  A regular agent facing a
    forceful one moves to epsilon * own + (1 - epsilon) * other, while the
    forceful agent's belief stays bit-for-bit unchanged.  Two forceful
    agents ignore each other.
    """
    if i == j:
        raise ConfigurationError("belief exchange needs two distinct users")
    for u in (i, j):
        if u not in state.beliefs:
            raise UnknownUserError(f"no belief for user {u}")
    xi = state.beliefs[i]
    xj = state.beliefs[j]
    ki = state.kinds[i]
    kj = state.kinds[j]
    beliefs = dict(state.beliefs)
    if ki is AgentKind.REGULAR and kj is AgentKind.REGULAR:
        avg = (xi + xj) / 2.0
        beliefs[i] = avg
        beliefs[j] = avg
    elif ki is AgentKind.REGULAR and kj is AgentKind.FORCEFUL:
        beliefs[i] = state.epsilon * xi + (1.0 - state.epsilon) * xj
    elif ki is AgentKind.FORCEFUL and kj is AgentKind.REGULAR:
        beliefs[j] = state.epsilon * xj + (1.0 - state.epsilon) * xi
    # forceful vs forceful: no movement
    return BeliefState(beliefs, state.kinds, state.epsilon)


def run_belief_process(
    graph: SocialGraph,
    init: BeliefState,
    iterations: int,
    rng: RngStream,
) -> tuple:
    """Run ``iterations`` exchanges over uniformly random edges.

    Returns the final state plus the mean belief before the first exchange
    and after each one (length iterations + 1).
    """
    if iterations < 0:
        raise ConfigurationError(f"iterations must be >= 0, got {iterations}")
    if iterations > 0 and not graph.edges:
        raise ConfigurationError("belief process needs at least one edge")
    for node in graph.nodes:
        if node not in init.beliefs:
            raise ConfigurationError(f"no belief for user {node}")
    edges = sorted(graph.edges)
    state = init
    trace = [_mean_belief(state)]
    for _ in range(iterations):
        a, b = edges[rng.randrange(len(edges))]
        state = belief_exchange(state, a, b)
        trace.append(_mean_belief(state))
    return state, trace


def _mean_belief(state: BeliefState) -> float:
    return math.fsum(state.beliefs.values()) / len(state.beliefs)
