"""Pairwise precision, recall and F1 over intra-cluster pairs.

Only pairs that share a cluster count as samples. Pairs that sit in
different clusters (true negatives) grow quadratically with the number of
records and are deliberately never used.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import Overlap, _pairs


@dataclass(frozen=True)
class PairwiseScores:
    precision: float
    recall: float
    f1: float
    true_pair_count: int
    predicted_pair_count: int
    shared_pair_count: int
    degenerate: tuple[str, ...] = ()


def harmonic(p: float, r: float) -> float:
    """F1-style harmonic mean, 0 when both inputs are 0."""
    if p + r == 0:
        return 0.0
    return 2.0 * p * r / (p + r)


def shared_pair_count(o: Overlap) -> int:
    # a pair is in Pairs(R) and Pairs(S) iff both records land in the same cell
    return _pairs(o.counts)


def ratio_or_vacuous(shared: int, total: int) -> tuple[float, bool]:
    if total == 0:
        return 1.0, True
    return shared / total, False


def pairwise(o: Overlap) -> PairwiseScores:
    shared = shared_pair_count(o)
    predicted = _pairs(o.row_sizes)
    true = _pairs(o.col_sizes)
    precision, p_vac = ratio_or_vacuous(shared, predicted)
    recall, r_vac = ratio_or_vacuous(shared, true)
    flags = []
    if p_vac:
        flags.append("pairwisePrecision:no-predicted-pairs")
    if r_vac:
        flags.append("pairwiseRecall:no-true-pairs")
    return PairwiseScores(
        precision, recall, harmonic(precision, recall), true, predicted, shared, tuple(flags)
    )
