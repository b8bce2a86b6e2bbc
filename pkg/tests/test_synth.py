import numpy as np
import pytest

from ermetrics import (PerturbationLog, Unsatisfiable, build_clustering, overlap_of, perturb,
                       random_partition, variation_of_information)
from ermetrics.synth import parse_profile, partition_digest


def test_empty_partition():
    for profile in ("uniform:2", "zipf:1.5", "singleton-heavy"):
        assert random_partition(0, profile, 3).n == 0


def test_uniform_sizes():
    c = random_partition(5, "uniform:2", seed=7)
    assert sorted(c.sizes.tolist()) == [1, 2, 2]
    assert c.universe == {f"r{i}" for i in range(5)}


@pytest.mark.parametrize("profile", ["uniform:3", "zipf:1.5", "singleton-heavy"])
def test_deterministic(profile):
    a = random_partition(1000, profile, seed=1)
    b = random_partition(1000, profile, seed=1)
    assert np.array_equal(a.assignment, b.assignment) and a.records == b.records
    assert a != random_partition(1000, profile, seed=2)
    assert a.sizes.sum() == 1000


@pytest.mark.parametrize("profile", ["uniform:3", "zipf:2", "singleton-heavy"])
def test_cluster_count_scales_linearly(profile):
    small = len(random_partition(20_000, profile, seed=0))
    large = len(random_partition(80_000, profile, seed=0))
    assert 3.0 < large / small < 5.0


@pytest.mark.parametrize("bad", ["uniform", "uniform:0", "uniform:1.5", "zipf:1", "gauss:2", "singleton-heavy:3"])
def test_bad_profiles(bad):
    with pytest.raises(ValueError):
        parse_profile(bad)


def test_perturb_zero_ops(R):
    out, log = perturb(R, 0, {"split": 1}, seed=1)
    assert out == R and log.ops == []


def test_single_split_changes_partition():
    r = build_clustering([("a", 1), ("b", 1), ("d", 1)])
    out, log = perturb(r, 1, {"split": 1}, seed=0)
    assert len(out) == 2
    assert variation_of_information(overlap_of(r, out)) > 0
    assert log.ops[0]["op"] == "split"


def test_perturb_deterministic(R):
    mix = {"split": 1, "merge": 1, "move": 2}
    a = perturb(R, 6, mix, seed=42)
    b = perturb(R, 6, mix, seed=42)
    assert a[0] == b[0] and a[1].to_dict() == b[1].to_dict()


def test_replay_reproduces_result():
    src = random_partition(300, "zipf:1.8", seed=4)
    for seed in range(10):
        out, log = perturb(src, 25, {"split": 1, "merge": 1, "move": 1}, seed=seed)
        again = PerturbationLog.from_dict(log.to_dict()).replay(src)
        assert again == out
        assert partition_digest(again) == log.result_digest
        assert sum(again.sizes) == src.n


def test_impossible_ops_are_redrawn():
    c = build_clustering([("a", 1), ("b", 2)])
    out, log = perturb(c, 3, {"split": 1, "merge": 1}, seed=0)
    assert out.n == 2


def test_unsatisfiable():
    one = build_clustering([("a", 1)])
    with pytest.raises(Unsatisfiable):
        perturb(one, 1, {"move": 1}, seed=0)
    with pytest.raises(Unsatisfiable):
        perturb(one, 1, {"split": 1, "merge": 1}, seed=0)


def test_bad_mix(R):
    with pytest.raises(ValueError):
        perturb(R, 1, {"swap": 1}, seed=0)
