"""Topic tokenization and the similarity metrics used to gate diffusion.

Set metrics (cosine, jaccard, dice) take normalized topic-label sets and are
equivalent to their binary term-vector forms on the union vocabulary.
Pearson works on numeric vectors, levenshtein on strings.  ``score`` gives a
single dispatch point over profile / rumor topic sets.  All metrics are
symmetric in their two arguments.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Sequence

from .errors import UndefinedCorrelationError

TopicSet = frozenset


class Metric(Enum):
    COSINE = "cosine"
    PEARSON = "pearson"
    JACCARD_SET = "jaccard"
    JACCARD_VECTOR = "jaccard_vector"
    DICE = "dice"
    LEVENSHTEIN = "levenshtein"
    # arithmetic mean of cosine, set jaccard and dice
    AVERAGE = "average"

    @classmethod
    def from_name(cls, name: str) -> "Metric":
        key = name.strip().lower()
        if key == "jaccard_set":
            key = "jaccard"
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown metric name: {name!r}")


def tokenize_topics(raw: str) -> TopicSet:
    """Split a comma-separated topic string into a normalized label set.

    Labels are trimmed and lowercased; empty fragments are dropped and
    duplicates collapse.
    """
    return frozenset(label for part in raw.split(",") if (label := part.strip().lower()))


def canonical_topic_string(topics: TopicSet) -> str:
    """Stable serialization of a topic set, used for string-level metrics."""
    return ", ".join(sorted(topics))


def binary_vectors(a: TopicSet, b: TopicSet) -> tuple[list, list, list]:
    """Binary term vectors for two label sets on their sorted union vocabulary."""
    vocab = sorted(a | b)
    va = [1.0 if t in a else 0.0 for t in vocab]
    vb = [1.0 if t in b else 0.0 for t in vocab]
    return vocab, va, vb


def cosine(a: TopicSet, b: TopicSet) -> float:
    """Cosine similarity of two label sets; 0.0 when either set is empty.

    Equals the dot product of the binary term vectors over their norms.
    """
    if not a or not b:
        return 0.0
    return len(a & b) / math.sqrt(len(a) * len(b))


def vector_cosine(v1: Sequence[float], v2: Sequence[float]) -> float:
    """Cosine of the angle between two numeric vectors; 0.0 on a zero vector."""
    if len(v1) != len(v2):
        raise ValueError("vectors must have equal length")
    dot = sum(x * y for x, y in zip(v1, v2))
    n1 = math.sqrt(sum(x * x for x in v1))
    n2 = math.sqrt(sum(y * y for y in v2))
    if n1 == 0.0 or n2 == 0.0:
        return 0.0
    # clamp: the quotient can overshoot [-1, 1] by an ulp
    return max(-1.0, min(1.0, dot / (n1 * n2)))


def pearson(v1: Sequence[float], v2: Sequence[float]) -> float:
    """Pearson correlation as the cosine of the mean-centered vectors.

    Raises UndefinedCorrelationError when either vector has zero variance;
    a constant vector has no direction after centering, so returning 0 would
    hide a misconfigured input.
    """
    if len(v1) != len(v2):
        raise ValueError("vectors must have equal length")
    if len(v1) < 2:
        raise ValueError("pearson needs vectors of length >= 2")
    if min(v1) == max(v1) or min(v2) == max(v2):
        raise UndefinedCorrelationError("zero variance input vector")
    m1 = sum(v1) / len(v1)
    m2 = sum(v2) / len(v2)
    return vector_cosine([x - m1 for x in v1], [y - m2 for y in v2])


def jaccard(a: TopicSet, b: TopicSet, variant: str = "set") -> float:
    """Jaccard similarity of two label sets; 0.0 when both are empty.

    variant="set" is intersection over union.  variant="vector" is the
    Tanimoto form dot / (|v1|^2 + |v2|^2 - dot) on binary term vectors, which
    agrees with the set form whenever the weights are binary.
    """
    if variant == "set":
        union = len(a | b)
        return len(a & b) / union if union else 0.0
    if variant == "vector":
        _, va, vb = binary_vectors(a, b)
        dot = sum(x * y for x, y in zip(va, vb))
        denom = sum(x * x for x in va) + sum(y * y for y in vb) - dot
        return dot / denom if denom else 0.0
    raise ValueError(f"unknown jaccard variant: {variant!r}")


def dice(a: TopicSet, b: TopicSet) -> float:
    """Dice coefficient 2|a&b| / (|a|+|b|); 0.0 when both sets are empty."""
    total = len(a) + len(b)
    return 2.0 * len(a & b) / total if total else 0.0


def levenshtein(s1: str, s2: str) -> tuple[int, float]:
    """Edit distance with unit insert/delete/substitute costs, plus a similarity.

    Substituting identical characters costs nothing.  The similarity is
    1 - distance / max(len), and 1.0 when both strings are empty.
    """
    m, n = len(s1), len(s2)
    prev = list(range(n + 1))
    for i, ch1 in enumerate(s1, start=1):
        cur = [i] + [0] * n
        for j, ch2 in enumerate(s2, start=1):
            cost = 0 if ch1 == ch2 else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
        prev = cur
    distance = prev[n]
    longest = max(m, n)
    similarity = 1.0 if longest == 0 else 1.0 - distance / longest
    return distance, similarity


def score(metric: Metric, a, b) -> float:
    """Similarity between two topic carriers (user profiles or rumor content).

    ``a`` and ``b`` only need a ``topics`` attribute.  Levenshtein compares
    the canonical serialized strings; pearson correlates the binary term
    vectors and propagates UndefinedCorrelationError on degenerate inputs.
    """
    ta, tb = a.topics, b.topics
    if metric is Metric.COSINE:
        return cosine(ta, tb)
    if metric is Metric.JACCARD_SET:
        return jaccard(ta, tb, "set")
    if metric is Metric.JACCARD_VECTOR:
        return jaccard(ta, tb, "vector")
    if metric is Metric.DICE:
        return dice(ta, tb)
    if metric is Metric.AVERAGE:
        return (cosine(ta, tb) + jaccard(ta, tb, "set") + dice(ta, tb)) / 3.0
    if metric is Metric.LEVENSHTEIN:
        return levenshtein(canonical_topic_string(ta), canonical_topic_string(tb))[1]
    if metric is Metric.PEARSON:
        vocab, va, vb = binary_vectors(ta, tb)
        if len(vocab) < 2:
            raise UndefinedCorrelationError(
                "pearson needs at least two distinct labels across both topic sets"
            )
        return pearson(va, vb)
    raise ValueError(f"unsupported metric: {metric!r}")
