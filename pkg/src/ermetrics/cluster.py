"""Cluster-level scores: exact match, closest cluster (Jaccard) and purity."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Overlap
from .errors import EmptyClustering
from .pairwise import harmonic


@dataclass(frozen=True)
class ClusterScores:
    exact_precision: float
    exact_recall: float
    exact_f1: float
    cc_precision: float
    cc_recall: float
    cc_f1: float
    acp: float
    aap: float
    k: float
    manning_purity: float


def exact_cluster(o: Overlap) -> tuple[float, float, float]:
    """Fraction of clusters reproduced exactly, in each direction.

    A cell whose count equals both its row size and its column size is a
    cluster present verbatim in R and S. With no clusters on a side the
    corresponding score is vacuously 1.
    """
    matched = int(np.count_nonzero(
        (o.counts == o.row_sizes[o.rows]) & (o.counts == o.col_sizes[o.cols])
    ))
    nr, ns = o.shape
    precision = matched / nr if nr else 1.0
    recall = matched / ns if ns else 1.0
    return precision, recall, harmonic(precision, recall)


def jaccard(r_size: int, s_size: int, overlap_count: int) -> float:
    assert r_size >= 1 and s_size >= 1, "cluster sizes must be positive"
    assert 0 <= overlap_count <= min(r_size, s_size), "overlap exceeds a cluster"
    return overlap_count / (r_size + s_size - overlap_count)


def _best_per_group(groups: np.ndarray, values: np.ndarray, size: int) -> np.ndarray:
    best = np.zeros(size, dtype=np.float64)
    np.maximum.at(best, groups, values)
    return best


def closest_cluster(o: Overlap) -> tuple[float, float, float]:
    nr, ns = o.shape
    if nr == 0 or ns == 0:
        raise EmptyClustering("closest-cluster scores need clusters on both sides")
    rs = o.row_sizes[o.rows]
    cs = o.col_sizes[o.cols]
    jac = o.counts / (rs + cs - o.counts)
    precision = float(_best_per_group(o.rows, jac, nr).sum() / nr)
    recall = float(_best_per_group(o.cols, jac, ns).sum() / ns)
    return precision, recall, harmonic(precision, recall)


def purity_family(o: Overlap) -> tuple[float, float, float, float]:
    """Returns ``(acp, aap, k, manning_purity)``."""
    if o.n == 0:
        raise EmptyClustering("purity needs at least one record")
    sq = o.counts.astype(np.float64) ** 2
    acp = float(np.sum(sq / o.row_sizes[o.rows]) / o.n)
    aap = float(np.sum(sq / o.col_sizes[o.cols]) / o.n)
    dominant = np.zeros(len(o.row_sizes), dtype=np.int64)
    np.maximum.at(dominant, o.rows, o.counts)
    manning = int(dominant.sum()) / o.n
    return acp, aap, math.sqrt(acp * aap), manning


def cluster_scores(o: Overlap) -> ClusterScores:
    return ClusterScores(*exact_cluster(o), *closest_cluster(o), *purity_family(o))
