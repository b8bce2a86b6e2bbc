"""Generalized Merge Distance.

GMD(R, S) is the cheapest legal sequence of binary splits and merges
turning R into S. A path is legal when no record pair is both split apart
and merged together along the way: splits only separate pairs that are
together in R and apart in S, merges only join pairs that are apart in R
and together in S. Without that rule an unrestricted path can merge first
and split later for less (R = <a,b><c,d>, S = <a,c><b,d> costs 2 unit
operations that way, against 4 legal ones).

With order-independent cost functions the legal optimum is reached by
splitting every R-cluster into its intersections with S, then merging
those pieces into the S-clusters. Both phases are evaluated per cluster
from the contingency table, O(n + nnz) overall.

Cost families take the sizes ``x`` and ``y`` of the two sets being split
apart or merged together:

* ``constant:k``    f(x, y) = k
* ``product:k``     f(x, y) = k*x*y
* ``affine:k1,k2``  f(x, y) = k1 + k2*x*y
* ``vi``            f(x, y) = ((x+y)ln(x+y) - x ln x - y ln y) / n

With ``vi`` on both sides GMD equals Variation of Information in nats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import Overlap, _pairs
from .pairwise import harmonic

KINDS = ("constant", "product", "affine", "vi")


@dataclass(frozen=True)
class CostFamily:
    kind: str
    k1: float = 0.0
    k2: float = 0.0
    n: Optional[int] = None  # vi only; None binds to the record count at evaluation

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown cost family {self.kind!r}")
        if self.k1 < 0 or self.k2 < 0 or not (math.isfinite(self.k1) and math.isfinite(self.k2)):
            raise ValueError("cost constants must be finite and non-negative")
        if self.n is not None and self.n < 1:
            raise ValueError("vi cost family needs n >= 1")

    @classmethod
    def constant(cls, k: float) -> "CostFamily":
        return cls("constant", float(k), 0.0)

    @classmethod
    def product(cls, k: float) -> "CostFamily":
        return cls("product", 0.0, float(k))

    @classmethod
    def affine(cls, k1: float, k2: float) -> "CostFamily":
        return cls("affine", float(k1), float(k2))

    @classmethod
    def vi(cls, n: Optional[int] = None) -> "CostFamily":
        return cls("vi", n=n)

    @classmethod
    def parse(cls, spec: str) -> "CostFamily":
        """Parse ``constant:k``, ``product:k``, ``affine:k1,k2`` or ``vi``."""
        kind, _, args = spec.strip().partition(":")
        try:
            values = [float(a) for a in args.split(",")] if args else []
        except ValueError:
            raise ValueError(f"bad cost spec {spec!r}") from None
        arity = {"constant": 1, "product": 1, "affine": 2, "vi": 0}
        if kind not in arity or len(values) != arity[kind]:
            raise ValueError(
                f"bad cost spec {spec!r}; expected constant:k, product:k, affine:k1,k2 or vi"
            )
        if kind == "vi":
            return cls.vi()
        return getattr(cls, kind)(*values)

    def bind(self, n: int) -> "CostFamily":
        if self.kind == "vi" and self.n is None:
            return CostFamily("vi", n=n)
        return self

    def __str__(self):
        if self.kind == "constant":
            return f"constant:{self.k1:g}"
        if self.kind == "product":
            return f"product:{self.k2:g}"
        if self.kind == "affine":
            return f"affine:{self.k1:g},{self.k2:g}"
        return "vi"


@dataclass(frozen=True)
class GmdConfig:
    split_cost: CostFamily
    merge_cost: CostFamily


def _xlogx(x: float) -> float:
    return x * math.log(x) if x > 0 else 0.0


def family_cost(f: CostFamily, x: int, y: int) -> float:
    if x < 1 or y < 1:
        raise ValueError("piece sizes must be >= 1")
    if f.kind == "vi":
        if f.n is None:
            raise ValueError("vi cost family is unbound; call bind(n)")
        return (_xlogx(x + y) - _xlogx(x) - _xlogx(y)) / f.n
    return f.k1 + f.k2 * x * y


def decomposition_cost(f: CostFamily, parts: Sequence[int]) -> float:
    """Cost of splitting a set into ``parts`` by peeling them off in order.

    Read backwards it is also the cost of merging the parts one at a time.
    For order-independent families the total does not depend on the order.
    """
    remaining = int(sum(parts))
    total = 0.0
    for p in list(parts)[:-1]:
        remaining -= p
        total += family_cost(f, p, remaining)
    return total


def _phase_cost(f: CostFamily, groups: np.ndarray, counts: np.ndarray,
                group_sizes: np.ndarray) -> float:
    """Sum of decomposition costs of every group into its cells."""
    if len(counts) == 0:
        return 0.0
    if f.kind == "vi":
        sizes = group_sizes[groups].astype(np.float64)
        c = counts.astype(np.float64)
        return float(np.sum(c * (np.log(sizes) - np.log(c)))) / f.n
    total = 0.0
    if f.k1:
        pieces = np.bincount(groups, minlength=len(group_sizes))
        total += f.k1 * float(np.sum(pieces - 1))
    if f.k2:
        # sum_{i<j} p_i p_j = (|g|^2 - sum p^2) / 2
        cross = (_sq(group_sizes) - _sq(counts)) // 2
        total += f.k2 * float(cross)
    return total


def _sq(a: np.ndarray) -> int:
    a = np.asarray(a, dtype=np.int64)
    return int(np.sum(a * a))


def gmd(o: Overlap, cfg: GmdConfig) -> float:
    split = cfg.split_cost.bind(max(o.n, 1))
    merge = cfg.merge_cost.bind(max(o.n, 1))
    return (_phase_cost(split, o.rows, o.counts, o.row_sizes)
            + _phase_cost(merge, o.cols, o.counts, o.col_sizes))


PRECISION_CONFIG = GmdConfig(CostFamily.product(1), CostFamily.constant(0))
RECALL_CONFIG = GmdConfig(CostFamily.constant(0), CostFamily.product(1))


def pairwise_via_gmd(o: Overlap) -> tuple[float, float, float]:
    # splitting with product(1) destroys exactly the wrongly predicted pairs;
    # merging with product(1) creates exactly the missed true pairs
    predicted = _pairs(o.row_sizes)
    true = _pairs(o.col_sizes)
    precision = 1.0 - gmd(o, PRECISION_CONFIG) / predicted if predicted else 1.0
    recall = 1.0 - gmd(o, RECALL_CONFIG) / true if true else 1.0
    return precision, recall, harmonic(precision, recall)


def vi_via_gmd(o: Overlap) -> float:
    return gmd(o, GmdConfig(CostFamily.vi(), CostFamily.vi()))
