"""Similarity-gated diffusion.

A rumor crosses an edge only when a hard similarity threshold passes.  The
user-user variant compares the posting user with the follower; the
user-content variant compares the follower with the rumor itself.  Either
way the set of reached users is a reachability fixpoint over the gated edges.
"""

from __future__ import annotations

import csv
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .errors import ConfigurationError, ParseError
from .graph import RumorContent, SocialGraph
from .similarity import Metric, score

DECISIONS_HEADER = ["from_user_id", "to_user_id", "pass"]


@dataclass(frozen=True)
class SimilarityGate:
    """Hard-threshold admission test shared by the gated algorithms.

    When a precomputed ``decisions`` table is present it fully replaces live
    scoring; an edge with no entry fails the gate.
    """

    metric: Metric = Metric.COSINE
    threshold: float = 0.5
    decisions: Mapping | None = None

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigurationError(f"threshold must be in [0, 1], got {self.threshold}")


@dataclass
class DiffuserSet:
    """Diffusion result: the member set plus the order members were added.

    ``missing_profiles`` lists users whose similarity had to be treated as 0
    because no profile was loaded for them.
    """

    members: set
    insertion_log: list
    missing_profiles: set = field(default_factory=set)

    @property
    def size(self) -> int:
        return len(self.members)


def admission_test(
    profiles: Mapping,
    rumor: RumorContent | None,
    gate: SimilarityGate,
    missing: set,
) -> Callable:
    """Build the edge admission predicate admit(i, j) for one gate setup.

    ``rumor`` of None selects user-user comparison, otherwise the follower j
    is compared against the rumor.  A user without a profile scores 0 and is
    collected into ``missing``.
    """
    if gate.decisions is not None:
        table = gate.decisions

        def admit(i, j):
            return bool(table.get((i, j), False))

        return admit

    if rumor is None:

        def admit(i, j):
            pi = profiles.get(i)
            pj = profiles.get(j)
            if pi is None or pj is None:
                missing.update(u for u in (i, j) if u not in profiles)
                return 0.0 >= gate.threshold
            return score(gate.metric, pi, pj) >= gate.threshold

        return admit

    cache = {}

    def admit(i, j):
        if j not in cache:
            pj = profiles.get(j)
            if pj is None:
                missing.add(j)
                cache[j] = 0.0
            else:
                cache[j] = score(gate.metric, pj, rumor)
        return cache[j] >= gate.threshold

    return admit


def diffuse_user_user(
    graph: SocialGraph,
    profiles: Mapping,
    initials,
    gate: SimilarityGate,
) -> DiffuserSet:
    """Spread from ``initials``, admitting followers similar to their source."""
    _check_initials(graph, profiles, initials)
    missing = set()
    admit = admission_test(profiles, None, gate, missing)
    members, log = _worklist_closure(graph, initials, admit)
    return DiffuserSet(members, log, missing)


def diffuse_user_content(
    graph: SocialGraph,
    profiles: Mapping,
    rumor: RumorContent,
    initials,
    gate: SimilarityGate,
) -> DiffuserSet:
    """Spread from ``initials``, admitting followers similar to the rumor."""
    _check_initials(graph, profiles, initials)
    missing = set()
    admit = admission_test(profiles, rumor, gate, missing)
    members, log = _worklist_closure(graph, initials, admit)
    return DiffuserSet(members, log, missing)


def filtered_edge_set(
    graph: SocialGraph,
    profiles: Mapping,
    rumor: RumorContent | None,
    gate: SimilarityGate,
) -> set:
    """Materialize the gate: every edge whose admission test passes.

    Reachability from the initials over this edge set equals the worklist
    result, which is what the DOT export and the oracle checks lean on.
    """
    admit = admission_test(profiles, rumor, gate, set())
    return {(a, b) for a, b in graph.edges if admit(a, b)}


def load_decisions(path) -> dict:
    """Read a precomputed gate table: from_user_id,to_user_id,pass with 0/1."""
    table = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != DECISIONS_HEADER:
            raise ParseError(path, 1, f"expected header {','.join(DECISIONS_HEADER)!r}, got {header!r}")
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise ParseError(path, line_no, f"expected 3 fields, got {len(row)}")
            try:
                a, b = int(row[0]), int(row[1])
            except ValueError:
                raise ParseError(path, line_no, f"non-integer user id in {row!r}") from None
            if row[2] not in ("0", "1"):
                raise ParseError(path, line_no, f"pass must be 0 or 1, got {row[2]!r}")
            table[(a, b)] = row[2] == "1"
    return table


def _check_initials(graph: SocialGraph, profiles: Mapping, initials) -> None:
    if not initials:
        raise ConfigurationError("at least one initial diffuser is required")
    for uid in initials:
        if uid not in graph.nodes:
            raise ConfigurationError(f"initial diffuser {uid} is not in the graph")
        if uid not in profiles:
            raise ConfigurationError(f"initial diffuser {uid} has no profile")


def _worklist_closure(graph: SocialGraph, initials, admit: Callable) -> tuple:
    """Breadth-first worklist from the initials, canonical ascending order.

    The final member set does not depend on processing order; the fixed
    order just makes the insertion log reproducible.
    """
    log = sorted(set(initials))
    members = set(log)
    queue = deque(log)
    while queue:
        i = queue.popleft()
        for j in graph.out_neighbors(i):
            if j in members:
                continue
            if admit(i, j):
                members.add(j)
                log.append(j)
                queue.append(j)
    return members, log
