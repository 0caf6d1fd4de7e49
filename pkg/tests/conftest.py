"""Common fixtures for the test suite."""

from __future__ import annotations

import pytest

from rumorsim import RumorContent, SocialGraph, UserProfile


@pytest.fixture
def chain_graph():
    return SocialGraph([(1, 2), (2, 3)])


@pytest.fixture
def news_profiles():
    topics = frozenset({"news", "politics"})
    return {
        1: UserProfile(1, topics, 0, True),
        2: UserProfile(2, topics, 0, True),
        3: UserProfile(3, topics, 0, True),
    }


@pytest.fixture
def news_rumor():
    return RumorContent(frozenset({"news", "politics"}))
