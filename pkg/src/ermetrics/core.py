"""Clusterings, universe alignment and the sparse contingency table.

Every metric in the package is computed from an :class:`Overlap`, which is
built in one pass over the records of an :class:`AlignedPair`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import ConflictingAssignment, UniverseMismatch

POLICIES = ("strict", "intersection", "union-singletons")

_SAMPLE = 10


def _check_token(token) -> str:
    if not isinstance(token, str) or not token.strip():
        raise ValueError(f"record id must be a non-empty string, got {token!r}")
    return token


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class Clustering:
    """A partition of record ids into disjoint, non-empty clusters.

    Records are kept in first-seen order; ``assignment[i]`` is the dense
    cluster index of ``records[i]``. Labels are only kept for reporting,
    two clusterings compare equal when they are the same set of sets.
    """

    def __init__(self, records: Sequence[str], assignment, labels: Sequence[Hashable]):
        self.records = tuple(records)
        self.assignment = _frozen(np.asarray(assignment, dtype=np.int64).copy())
        self.labels = tuple(labels)
        if self.assignment.shape != (len(self.records),):
            raise ValueError("assignment length must match records")
        if len(self.records) and (
            self.assignment.min() < 0 or self.assignment.max() >= len(self.labels)
        ):
            raise ValueError("assignment index out of range")

    @classmethod
    def from_labels(cls, records: Sequence[str], labels: Sequence[Hashable]) -> "Clustering":
        """Fast path for trusted, already de-duplicated records."""
        records = tuple(records)
        if len(set(records)) != len(records):
            raise ValueError("duplicate record ids")
        index: dict = {}
        assignment = np.fromiter(
            (index.setdefault(lab, len(index)) for lab in labels),
            dtype=np.int64,
            count=len(records),
        )
        return cls(records, assignment, tuple(index))

    @classmethod
    def from_clusters(cls, clusters: Iterable[Iterable[str]]) -> "Clustering":
        records, labels = [], []
        for i, members in enumerate(clusters):
            members = list(members)
            if not members:
                raise ValueError("clusters must be non-empty")
            records.extend(members)
            labels.extend([i] * len(members))
        return build_clustering(zip(records, labels))

    @property
    def n(self) -> int:
        return len(self.records)

    @cached_property
    def sizes(self) -> np.ndarray:
        sizes = np.bincount(self.assignment, minlength=len(self.labels))
        if len(sizes) and sizes.min() == 0:
            raise ValueError("every cluster must be non-empty")
        return _frozen(sizes.astype(np.int64))

    @property
    def num_clusters(self) -> int:
        return len(self.labels)

    @cached_property
    def index(self) -> dict:
        return {tok: i for i, tok in enumerate(self.records)}

    @cached_property
    def universe(self) -> frozenset:
        return frozenset(self.records)

    @cached_property
    def clusters(self) -> tuple:
        buckets: list[list[str]] = [[] for _ in self.labels]
        for tok, c in zip(self.records, self.assignment.tolist()):
            buckets[c].append(tok)
        return tuple(frozenset(b) for b in buckets)

    def as_sets(self) -> frozenset:
        return frozenset(self.clusters)

    def cluster_of(self, token: str) -> int:
        return int(self.assignment[self.index[token]])

    def members(self) -> dict:
        """Label -> list of member ids, in record order."""
        out: dict = {lab: [] for lab in self.labels}
        for tok, c in zip(self.records, self.assignment.tolist()):
            out[self.labels[c]].append(tok)
        return out

    def __eq__(self, other):
        if not isinstance(other, Clustering):
            return NotImplemented
        return self.as_sets() == other.as_sets()

    def __hash__(self):
        return hash(self.as_sets())

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        shown = sorted(sorted(c) for c in self.clusters)[:5]
        more = "..." if len(self.labels) > 5 else ""
        return f"Clustering(n={self.n}, clusters={shown}{more})"


def build_clustering(assignments: Iterable[tuple[str, Hashable]]) -> Clustering:
    """One cluster per distinct label.

    Repeating an identical ``(record, label)`` row is a no-op; giving a record
    two different labels raises :class:`ConflictingAssignment`.
    """
    seen: dict[str, Hashable] = {}
    for token, label in assignments:
        prev = seen.get(token, _MISSING)
        if prev is _MISSING:
            seen[_check_token(token)] = label
        elif prev != label:
            raise ConflictingAssignment(token, prev, label)
    return Clustering.from_labels(list(seen), list(seen.values()))


_MISSING = object()


def _restrict(c: Clustering, order: Sequence[str]) -> Clustering:
    """``c`` restricted to (and reordered as) ``order``; empty clusters dropped."""
    idx = c.index
    pos = np.fromiter((idx[t] for t in order), dtype=np.int64, count=len(order))
    old = c.assignment[pos]
    kept, new = np.unique(old, return_inverse=True)
    return Clustering(order, new.reshape(-1), [c.labels[k] for k in kept.tolist()])


def _with_singletons(c: Clustering, extra: Sequence[str]) -> Clustering:
    k = c.num_clusters
    assignment = np.concatenate(
        [c.assignment, np.arange(k, k + len(extra), dtype=np.int64)]
    )
    return Clustering(c.records + tuple(extra), assignment, c.labels + (None,) * len(extra))


@dataclass(frozen=True, eq=False)
class AlignedPair:
    """R and S over one shared universe, with records in the same order."""

    left: Clustering
    right: Clustering
    n: int
    policy: str


def align(r: Clustering, s: Clustering, policy: str = "strict") -> AlignedPair:
    if policy not in POLICIES:
        raise ValueError(f"unknown universe policy {policy!r}; expected one of {POLICIES}")
    if r.records == s.records:
        return AlignedPair(r, s, r.n, policy)
    ru, su = r.universe, s.universe
    if policy == "strict":
        if ru != su:
            only_r = sorted(ru - su)
            only_s = sorted(su - ru)
            raise UniverseMismatch(only_r[:_SAMPLE], only_s[:_SAMPLE], len(only_r), len(only_s))
        return AlignedPair(r, _restrict(s, r.records), r.n, policy)
    if policy == "intersection":
        order = [t for t in r.records if t in su]
        left = r if len(order) == r.n else _restrict(r, order)
        return AlignedPair(left, _restrict(s, order), len(order), policy)
    # union-singletons
    left = _with_singletons(r, [t for t in s.records if t not in ru])
    right = _with_singletons(s, [t for t in r.records if t not in su])
    return AlignedPair(left, _restrict(right, left.records), left.n, policy)


@dataclass(frozen=True, eq=False)
class Overlap:
    """Sparse contingency table of |r & s|.

    ``rows``, ``cols`` and ``counts`` are parallel arrays sorted by row, then
    column; only positive cells are stored.
    """

    rows: np.ndarray
    cols: np.ndarray
    counts: np.ndarray
    row_sizes: np.ndarray
    col_sizes: np.ndarray
    n: int

    @property
    def cells(self) -> dict:
        return dict(zip(zip(self.rows.tolist(), self.cols.tolist()), self.counts.tolist()))

    @property
    def nnz(self) -> int:
        return len(self.counts)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_sizes), len(self.col_sizes)

    def transpose(self) -> "Overlap":
        order = np.lexsort((self.rows, self.cols))
        return Overlap(
            _frozen(self.cols[order]),
            _frozen(self.rows[order]),
            _frozen(self.counts[order]),
            self.col_sizes,
            self.row_sizes,
            self.n,
        )

    def dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        out[self.rows, self.cols] = self.counts
        return out


def overlap(pair: AlignedPair) -> Overlap:
    left, right = pair.left, pair.right
    nr, ns = left.num_clusters, right.num_clusters
    if pair.n == 0:
        empty = np.zeros(0, dtype=np.int64)
        return Overlap(*(_frozen(empty.copy()) for _ in range(3)),
                       _frozen(np.zeros(nr, dtype=np.int64)),
                       _frozen(np.zeros(ns, dtype=np.int64)), 0)
    keys = left.assignment * ns + right.assignment
    uniq, counts = np.unique(keys, return_counts=True)
    return Overlap(
        _frozen(uniq // ns),
        _frozen(uniq % ns),
        _frozen(counts.astype(np.int64)),
        left.sizes,
        right.sizes,
        pair.n,
    )


def overlap_of(r: Clustering, s: Clustering, policy: str = "strict") -> Overlap:
    return overlap(align(r, s, policy))


def _pairs(sizes: np.ndarray) -> int:
    sizes = np.asarray(sizes, dtype=np.int64)
    return int(np.sum(sizes * (sizes - 1) // 2))


def intra_pair_count(c: Clustering) -> int:
    """|Pairs(c)|: unordered record pairs sharing a cluster."""
    return _pairs(c.sizes)


def inter_pair_count(c: Clustering) -> int:
    """Pairs split across clusters. Diagnostic only, never fed into a metric."""
    return c.n * (c.n - 1) // 2 - intra_pair_count(c)
