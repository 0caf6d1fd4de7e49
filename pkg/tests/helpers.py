"""Hand-rolled oracles and corpus builders shared by the test suite.

Everything here recomputes results from first principles (explicit vector
loops, full-matrix edit distance, plain breadth-first search) so the
production code is checked against an independent route, not against itself.
"""

from __future__ import annotations

import math
import random
from pathlib import Path

from rumorsim import SocialGraph, UserProfile

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures" / "ten_node"

VOCAB = [f"t{i:02d}" for i in range(30)]


def brute_vectors(a, b):
    vocab = sorted(set(a) | set(b))
    va = [1.0 if t in a else 0.0 for t in vocab]
    vb = [1.0 if t in b else 0.0 for t in vocab]
    return va, vb


def brute_cosine(a, b):
    va, vb = brute_vectors(a, b)
    dot = 0.0
    na = 0.0
    nb = 0.0
    for x, y in zip(va, vb):
        dot += x * y
        na += x * x
        nb += y * y
    if na == 0.0 or nb == 0.0:
        return 0.0
    return dot / (math.sqrt(na) * math.sqrt(nb))


def brute_jaccard(a, b):
    va, vb = brute_vectors(a, b)
    inter = sum(1 for x, y in zip(va, vb) if x == 1.0 and y == 1.0)
    union = sum(1 for x, y in zip(va, vb) if x == 1.0 or y == 1.0)
    return inter / union if union else 0.0


def brute_dice(a, b):
    va, vb = brute_vectors(a, b)
    inter = sum(1 for x, y in zip(va, vb) if x == 1.0 and y == 1.0)
    total = sum(1 for x in va if x == 1.0) + sum(1 for y in vb if y == 1.0)
    return 2.0 * inter / total if total else 0.0


def dp_levenshtein(s1, s2):
    """Full-matrix edit distance straight from the recurrence."""
    m, n = len(s1), len(s2)
    d = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        d[i][0] = i
    for j in range(n + 1):
        d[0][j] = j
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            cost = 0 if s1[i - 1] == s2[j - 1] else 1
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
    return d[m][n]


def bfs_reachable(initials, edges):
    adjacency = {}
    for a, b in edges:
        adjacency.setdefault(a, []).append(b)
    seen = set(initials)
    stack = list(initials)
    while stack:
        u = stack.pop()
        for v in adjacency.get(u, ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def bfs_levels(initials, edges):
    """Nodes grouped by shortest hop distance from the initials."""
    adjacency = {}
    for a, b in edges:
        adjacency.setdefault(a, []).append(b)
    seen = set(initials)
    levels = [set(initials)]
    while levels[-1]:
        nxt = set()
        for u in levels[-1]:
            for v in adjacency.get(u, ()):
                if v not in seen:
                    seen.add(v)
                    nxt.add(v)
        levels.append(nxt)
    return levels[:-1]


def shuffled_closure(graph, initials, admit, rng):
    """Fixpoint of the admission rule with a randomized processing order."""
    members = set(initials)
    changed = True
    while changed:
        changed = False
        candidates = [
            (i, j)
            for i in sorted(members)
            for j in graph.out_neighbors(i)
            if j not in members
        ]
        rng.shuffle(candidates)
        for i, j in candidates:
            if j not in members and admit(i, j):
                members.add(j)
                changed = True
    return members


def random_topic_set(rng, max_labels=12, min_labels=0):
    size = rng.randint(min_labels, max_labels)
    return frozenset(rng.sample(VOCAB, size))


def random_digraph(rng, n, p):
    edges = set()
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if a != b and rng.random() < p:
                edges.add((a, b))
    return SocialGraph(edges, nodes=range(1, n + 1))


def random_profiles(rng, nodes, max_labels=6, max_created=0):
    return {
        u: UserProfile(u, random_topic_set(rng, max_labels, 1), rng.randint(0, max_created), False)
        for u in sorted(nodes)
    }


def oracle_corpus(seed, count=100, max_nodes=200, max_created=0):
    """Deterministic stream of (graph, profiles, initials) test cases."""
    rng = random.Random(seed)
    densities = [0.002, 0.008, 0.02, 0.05]
    cases = []
    for k in range(count):
        n = rng.randint(10, max_nodes)
        graph = random_digraph(rng, n, densities[k % len(densities)])
        profiles = random_profiles(rng, graph.nodes, max_created=max_created)
        initials = tuple(rng.sample(sorted(graph.nodes), rng.randint(1, 3)))
        cases.append((graph, profiles, initials))
    return cases
