"""Similarity metrics: frozen reference values, conventions, identities,
and equivalence with independent brute-force oracles."""

from __future__ import annotations

import random

import pytest

from helpers import brute_cosine, brute_dice, brute_jaccard, dp_levenshtein, random_topic_set
from rumorsim import (
    Metric,
    RumorContent,
    UndefinedCorrelationError,
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

ABC = frozenset("abc")
BCD = frozenset("bcd")


def topics(*labels):
    return RumorContent(frozenset(labels))


class TestTokenize:
    def test_splits_trims_lowercases(self):
        assert tokenize_topics("Business & Finance , Internet ,Technology") == frozenset(
            {"business & finance", "internet", "technology"}
        )

    def test_drops_empty_fragments_and_duplicates(self):
        assert tokenize_topics("  a ,B, ,b,,A ") == frozenset({"a", "b"})

    def test_empty_string_gives_empty_set(self):
        assert tokenize_topics("") == frozenset()
        assert tokenize_topics(" , ,") == frozenset()


class TestReferenceValues:
    # overlap 2 between two 3-label sets
    def test_cosine_two_thirds(self):
        assert cosine(ABC, BCD) == 2 / 3

    def test_jaccard_half(self):
        assert jaccard(ABC, BCD) == 0.5

    def test_dice_two_thirds(self):
        assert dice(ABC, BCD) == 2 / 3

    def test_pearson_reversed_sequence_fully_anticorrelated(self):
        assert pearson([1.0, 2.0, 3.0], [3.0, 2.0, 1.0]) == pytest.approx(-1.0, abs=1e-12)

    def test_levenshtein_kitten_sitting(self):
        distance, similarity = levenshtein("kitten", "sitting")
        assert distance == 3
        assert similarity == 1 - 3 / 7


class TestEmptyConventions:
    def test_cosine_zero_when_either_empty(self):
        assert cosine(frozenset(), ABC) == 0.0
        assert cosine(ABC, frozenset()) == 0.0
        assert cosine(frozenset(), frozenset()) == 0.0

    @pytest.mark.parametrize("variant", ["set", "vector"])
    def test_jaccard_zero_when_both_empty(self, variant):
        assert jaccard(frozenset(), frozenset(), variant) == 0.0

    def test_dice_zero_when_both_empty(self):
        assert dice(frozenset(), frozenset()) == 0.0

    def test_levenshtein_empty_strings_similar(self):
        assert levenshtein("", "") == (0, 1.0)
        distance, similarity = levenshtein("", "abcd")
        assert distance == 4
        assert similarity == 0.0


class TestOracleEquivalence:
    def test_set_metrics_match_brute_force(self):
        rng = random.Random(411)
        for _ in range(2000):
            a = random_topic_set(rng)
            b = random_topic_set(rng)
            assert cosine(a, b) == pytest.approx(brute_cosine(a, b), abs=1e-12)
            assert jaccard(a, b) == pytest.approx(brute_jaccard(a, b), abs=1e-12)
            assert dice(a, b) == pytest.approx(brute_dice(a, b), abs=1e-12)

    def test_jaccard_variants_agree_on_binary_vectors(self):
        rng = random.Random(412)
        for _ in range(500):
            a = random_topic_set(rng)
            b = random_topic_set(rng)
            assert jaccard(a, b, "set") == jaccard(a, b, "vector")

    def test_levenshtein_matches_full_matrix(self):
        rng = random.Random(413)
        alphabet = "abcde"
        for _ in range(400):
            s1 = "".join(rng.choices(alphabet, k=rng.randint(0, 20)))
            s2 = "".join(rng.choices(alphabet, k=rng.randint(0, 20)))
            assert levenshtein(s1, s2)[0] == dp_levenshtein(s1, s2)

    def test_levenshtein_metric_axioms(self):
        rng = random.Random(414)
        words = ["".join(rng.choices("abc", k=rng.randint(0, 8))) for _ in range(30)]
        for s in words:
            assert levenshtein(s, s)[0] == 0
        for _ in range(300):
            s1, s2, s3 = rng.choices(words, k=3)
            d12 = levenshtein(s1, s2)[0]
            d21 = levenshtein(s2, s1)[0]
            d13 = levenshtein(s1, s3)[0]
            d32 = levenshtein(s3, s2)[0]
            assert d12 == d21
            assert d12 <= d13 + d32


class TestProperties:
    def test_symmetry_and_range(self):
        rng = random.Random(415)
        for _ in range(500):
            a = random_topic_set(rng)
            b = random_topic_set(rng)
            for fn in (cosine, jaccard, dice):
                value = fn(a, b)
                assert fn(b, a) == value
                assert 0.0 <= value <= 1.0

    def test_cosine_scale_invariance(self):
        rng = random.Random(416)
        for _ in range(200):
            n = rng.randint(2, 12)
            v1 = [rng.uniform(-5, 5) for _ in range(n)]
            v2 = [rng.uniform(-5, 5) for _ in range(n)]
            base = vector_cosine(v1, v2)
            for alpha in (0.25, 3.0, 1750.0):
                assert vector_cosine([alpha * x for x in v1], v2) == pytest.approx(base, abs=1e-12)

    def test_pearson_shift_invariance(self):
        rng = random.Random(417)
        for _ in range(200):
            n = rng.randint(2, 12)
            v1 = [rng.uniform(-5, 5) for _ in range(n)]
            v2 = [rng.uniform(-5, 5) for _ in range(n)]
            if min(v1) == max(v1) or min(v2) == max(v2):
                continue
            base = pearson(v1, v2)
            assert -1.0 <= base <= 1.0
            for shift in (-4.5, 0.25, 1750.0):
                assert pearson([x + shift for x in v1], v2) == pytest.approx(base, abs=1e-12)

    def test_dice_jaccard_identity(self):
        rng = random.Random(418)
        for _ in range(500):
            a = random_topic_set(rng)
            b = random_topic_set(rng)
            j = jaccard(a, b)
            assert dice(a, b) == pytest.approx(2 * j / (1 + j), abs=1e-12)


class TestPearsonErrors:
    def test_zero_variance_raises(self):
        with pytest.raises(UndefinedCorrelationError):
            pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
        with pytest.raises(UndefinedCorrelationError):
            pearson([1.0, 2.0, 3.0], [4.0, 4.0, 4.0])

    def test_short_or_mismatched_vectors_rejected(self):
        with pytest.raises(ValueError):
            pearson([1.0], [2.0])
        with pytest.raises(ValueError):
            pearson([1.0, 2.0], [1.0, 2.0, 3.0])


class TestScoreDispatch:
    def test_each_metric_routes_to_its_function(self):
        a = topics("a", "b", "c")
        b = topics("b", "c", "d")
        assert score(Metric.COSINE, a, b) == cosine(ABC, BCD)
        assert score(Metric.JACCARD_SET, a, b) == jaccard(ABC, BCD)
        assert score(Metric.JACCARD_VECTOR, a, b) == jaccard(ABC, BCD, "vector")
        assert score(Metric.DICE, a, b) == dice(ABC, BCD)

    def test_average_is_mean_of_three(self):
        a = topics("a", "b", "c")
        b = topics("b", "c", "d")
        expected = (cosine(ABC, BCD) + jaccard(ABC, BCD) + dice(ABC, BCD)) / 3
        assert score(Metric.AVERAGE, a, b) == expected

    def test_levenshtein_uses_canonical_sorted_string(self):
        # order of insertion must not matter once canonicalized
        assert canonical_topic_string(frozenset({"b", "a"})) == "a, b"
        assert score(Metric.LEVENSHTEIN, topics("b", "a"), topics("a", "b")) == 1.0
        expected = levenshtein("a, b", "a, c")[1]
        assert score(Metric.LEVENSHTEIN, topics("b", "a"), topics("c", "a")) == expected

    def test_pearson_identical_sets_is_undefined(self):
        # the binary vectors on the union vocabulary are constant
        with pytest.raises(UndefinedCorrelationError):
            score(Metric.PEARSON, topics("a", "b"), topics("a", "b"))

    def test_pearson_single_label_union_is_undefined(self):
        with pytest.raises(UndefinedCorrelationError):
            score(Metric.PEARSON, topics("a"), topics("a"))

    def test_pearson_disjoint_sets(self):
        assert score(Metric.PEARSON, topics("a"), topics("b")) == pytest.approx(-1.0, abs=1e-12)

    def test_metric_from_name(self):
        assert Metric.from_name("cosine") is Metric.COSINE
        assert Metric.from_name("Jaccard") is Metric.JACCARD_SET
        assert Metric.from_name("jaccard_set") is Metric.JACCARD_SET
        assert Metric.from_name("jaccard_vector") is Metric.JACCARD_VECTOR
        assert Metric.from_name(" AVERAGE ") is Metric.AVERAGE
        with pytest.raises(ValueError):
            Metric.from_name("euclidean")

    def test_unknown_jaccard_variant_rejected(self):
        with pytest.raises(ValueError):
            jaccard(ABC, BCD, "fuzzy")
