"""Shared fixtures: a reproducible corpus of random compatible discrete pairs."""

import numpy as np
import pytest

from bayesfuse import DiscreteDist, normalize

CORPUS_SEED = 20240817


def random_pair(rng, n_joint, extra_prior=0, extra_like=0):
    """A compatible pair whose joint support has exactly ``n_joint`` atoms.

    Either side may carry extra private atoms, so the joint support is a
    strict subset of the union when ``extra_*`` is positive.  All masses
    are bounded away from zero.
    """
    total = n_joint + extra_prior + extra_like
    positions = rng.choice(np.arange(-10, 40), size=total, replace=False)
    joint = positions[:n_joint]
    prior_keys = np.concatenate([joint, positions[n_joint : n_joint + extra_prior]])
    like_keys = np.concatenate([joint, positions[n_joint + extra_prior :]])
    prior = normalize(
        (int(k), m) for k, m in zip(prior_keys, rng.uniform(0.05, 1.0, len(prior_keys)))
    )
    like = normalize(
        (int(k), m) for k, m in zip(like_keys, rng.uniform(0.05, 1.0, len(like_keys)))
    )
    return prior, like


def make_corpus(seed=CORPUS_SEED, pairs_per_size=10):
    rng = np.random.default_rng(seed)
    corpus = []
    for n in range(2, 7):
        for i in range(pairs_per_size):
            extra_prior = int(rng.integers(0, 3)) if i % 2 else 0
            extra_like = int(rng.integers(0, 3)) if i % 3 else 0
            corpus.append(random_pair(rng, n, extra_prior, extra_like))
    return corpus


@pytest.fixture(scope="session")
def corpus():
    """At least 50 random compatible discrete pairs, joint sizes 2 through 6."""
    return make_corpus()


@pytest.fixture()
def rng():
    return np.random.default_rng(CORPUS_SEED)


def dirichlet_alternative(rng, keys) -> DiscreteDist:
    """A random pmf on the given atom keys."""
    masses = rng.dirichlet(np.ones(len(keys)))
    return normalize(zip(keys, masses))
