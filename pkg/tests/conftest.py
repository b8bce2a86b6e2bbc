import random

import pytest
from hypothesis import strategies as st

from ermetrics import Clustering


@pytest.fixture
def R():
    return Clustering.from_clusters([["a", "b", "d"], ["c", "e"]])


@pytest.fixture
def S():
    return Clustering.from_clusters([["a", "b"], ["c", "d", "e"]])


def labelled(labels, prefix="x"):
    return Clustering.from_labels([f"{prefix}{i}" for i in range(len(labels))], labels)


def random_labels(rng: random.Random, n: int):
    k = rng.randint(1, max(1, n))
    return [rng.randrange(k) for _ in range(n)]


def random_pair(rng: random.Random, n_max: int, n_min: int = 1):
    n = rng.randint(n_min, n_max)
    return labelled(random_labels(rng, n)), labelled(random_labels(rng, n))


def as_lists(c: Clustering):
    return [set(x) for x in c.clusters]


def partitions(max_n=8, min_n=1):
    """Hypothesis strategy: pairs of label lists over one universe."""
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.tuples(
            st.lists(st.integers(0, n - 1), min_size=n, max_size=n),
            st.lists(st.integers(0, n - 1), min_size=n, max_size=n),
        )
    )


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
