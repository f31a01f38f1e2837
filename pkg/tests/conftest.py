"""Shared corpus fixtures.

The seeded corpus is built once per session; every acceptance criterion
that quantifies over random instances draws from the same list, so the
expensive model/hyperspace caches are shared across criteria.
"""

import pytest

from orderlab.generate import corpus

CORPUS_SEED = 20260816
CORPUS_TRIALS = 500
CORPUS_MAX_SIZE = 7


@pytest.fixture(scope="session")
def seeded_corpus():
    """500 bounded-complete posets with at most 7 elements."""
    return [poset for _i, poset in corpus(CORPUS_SEED, CORPUS_TRIALS, CORPUS_MAX_SIZE)]


@pytest.fixture(scope="session")
def small_corpus(seeded_corpus):
    """A 60-instance slice for the pricier per-instance checks."""
    return seeded_corpus[:60]
