"""Entropy-based scores and Variation of Information, all in nats."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Overlap
from .errors import EmptyClustering

S_GIVEN_R = "S-given-R"
R_GIVEN_S = "R-given-S"


@dataclass(frozen=True)
class InfoScores:
    h_s: float
    h_r: float
    h_s_given_r: float
    h_r_given_s: float
    homogeneity: float
    completeness: float
    v_measure: float
    beta: float
    vi: float


def marginal_entropy(sizes, n: int) -> float:
    sizes = np.asarray(sizes, dtype=np.float64)
    sizes = sizes[sizes > 0]
    if n < 1:
        raise EmptyClustering("entropy needs at least one record")
    assert int(sizes.sum()) == n, "cluster sizes must sum to n"
    p = sizes / n
    return float(max(0.0, -np.sum(p * np.log(p))))


def conditional_entropy(o: Overlap, direction: str = S_GIVEN_R) -> float:
    """H(S|R) (default) or H(R|S).

    Summed per cell as c * (ln |g| - ln c) / N, where g is the conditioning
    cluster, so a cell covering its whole cluster contributes an exact 0.
    """
    if o.n < 1:
        raise EmptyClustering("entropy needs at least one record")
    if direction == S_GIVEN_R:
        given = o.row_sizes[o.rows]
    elif direction == R_GIVEN_S:
        given = o.col_sizes[o.cols]
    else:
        raise ValueError(f"unknown direction {direction!r}")
    counts = o.counts.astype(np.float64)
    value = float(np.sum(counts * (np.log(given) - np.log(counts)))) / o.n
    return max(0.0, value)


def _ratio_score(h_cond: float, h: float) -> float:
    if h == 0:
        return 1.0
    return min(1.0, max(0.0, 1.0 - h_cond / h))


def homogeneity_completeness(o: Overlap) -> tuple[float, float]:
    h_s = marginal_entropy(o.col_sizes, o.n)
    h_r = marginal_entropy(o.row_sizes, o.n)
    return (_ratio_score(conditional_entropy(o, S_GIVEN_R), h_s),
            _ratio_score(conditional_entropy(o, R_GIVEN_S), h_r))


def v_measure(h: float, c: float, beta: float = 1.0) -> float:
    # beta > 1 weights completeness more heavily, beta < 1 homogeneity
    if beta <= 0:
        raise ValueError("beta must be positive")
    b2 = beta * beta
    denom = b2 * h + c
    if denom == 0:
        return 0.0
    return (1 + b2) * h * c / denom


def variation_of_information(o: Overlap) -> float:
    return conditional_entropy(o, S_GIVEN_R) + conditional_entropy(o, R_GIVEN_S)


def info_scores(o: Overlap, beta: float = 1.0) -> InfoScores:
    h_s = marginal_entropy(o.col_sizes, o.n)
    h_r = marginal_entropy(o.row_sizes, o.n)
    h_sr = conditional_entropy(o, S_GIVEN_R)
    h_rs = conditional_entropy(o, R_GIVEN_S)
    hom = _ratio_score(h_sr, h_s)
    comp = _ratio_score(h_rs, h_r)
    return InfoScores(h_s, h_r, h_sr, h_rs, hom, comp, v_measure(hom, comp, beta), beta, h_sr + h_rs)
