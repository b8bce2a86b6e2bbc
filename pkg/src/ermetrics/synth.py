"""Seeded synthetic partitions and logged perturbations for experiments."""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .core import Clustering
from .errors import Unsatisfiable

OPS = ("split", "merge", "move")
SINGLETON_SHARE = 0.7
SINGLETON_HEAVY_MAX = 5
# zipf tails are heavy; capping keeps the cluster count linear in n
ZIPF_MAX = 100


def parse_profile(profile: str) -> tuple[str, float]:
    """``uniform:k``, ``zipf:s`` or ``singleton-heavy``.

    ``zipf`` sizes are capped at ZIPF_MAX; ``singleton-heavy`` makes 70% of
    clusters singletons and the rest 2 to 5 records.
    """
    kind, _, arg = profile.partition(":")
    if kind == "singleton-heavy" and not arg:
        return kind, 0.0
    if kind in ("uniform", "zipf") and arg:
        value = float(arg)
        if kind == "uniform" and (value < 1 or value != int(value)):
            raise ValueError("uniform cluster size must be a positive integer")
        if kind == "zipf" and value <= 1:
            raise ValueError("zipf exponent must be > 1")
        return kind, value
    raise ValueError(f"bad size profile {profile!r}; expected uniform:k, zipf:s or singleton-heavy")


def _sizes(n: int, kind: str, arg: float, rng: np.random.Generator) -> np.ndarray:
    if kind == "uniform":
        k = int(arg)
        sizes = np.full(n // k, k, dtype=np.int64)
        return np.append(sizes, n % k) if n % k else sizes
    # draw whole batches; each batch covers n records on average or better
    chunks, total = [], 0
    while total < n:
        if kind == "zipf":
            draw = np.minimum(rng.zipf(arg, size=max(n, 16)), ZIPF_MAX)
        else:
            draw = np.where(rng.random(max(n, 16)) < SINGLETON_SHARE, 1,
                            rng.integers(2, SINGLETON_HEAVY_MAX + 1, size=max(n, 16)))
        draw = np.minimum(draw, n).astype(np.int64)
        chunks.append(draw)
        total += int(draw.sum())
    sizes = np.concatenate(chunks)
    cut = int(np.searchsorted(np.cumsum(sizes), n))
    sizes = sizes[: cut + 1].copy()
    sizes[-1] -= int(sizes.sum()) - n
    return sizes


def record_ids(n: int, prefix: str = "r") -> list[str]:
    return [f"{prefix}{i}" for i in range(n)]


def random_partition(n: int, profile: str = "uniform:3", seed: int = 0,
                     records: Optional[list[str]] = None) -> Clustering:
    """Random partition of ``n`` records (``r0`` .. ``r{n-1}`` by default).

    Cluster sizes follow the profile; which records share a cluster is
    shuffled. Same arguments, same partition.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    kind, arg = parse_profile(profile)
    rng = np.random.default_rng(seed)
    sizes = _sizes(n, kind, arg, rng) if n else np.zeros(0, dtype=np.int64)
    labels = np.repeat(np.arange(len(sizes), dtype=np.int64), sizes)
    rng.shuffle(labels)
    recs = record_ids(n) if records is None else list(records)
    if len(recs) != n:
        raise ValueError("records must have length n")
    return Clustering(recs, labels, [f"c{i}" for i in range(len(sizes))])


def partition_digest(c: Clustering) -> str:
    canon = sorted(sorted(cluster) for cluster in c.clusters)
    return hashlib.sha256(json.dumps(canon, ensure_ascii=False).encode()).hexdigest()


def _string_labels(c: Clustering) -> dict[str, list[str]]:
    state: dict[str, list[str]] = {}
    for label, members in c.members().items():
        key = f"_singleton:{members[0]}" if label is None else str(label)
        if key in state:
            raise ValueError(f"cluster labels collide once stringified: {key!r}")
        state[key] = members
    return state


def _apply(state: dict[str, list[str]], op: dict) -> None:
    kind = op["op"]
    if kind == "split":
        moved = set(op["moved"])
        src = state[op["cluster"]]
        state[op["cluster"]] = [t for t in src if t not in moved]
        state[op["into"]] = [t for t in src if t in moved]
    elif kind == "merge":
        state[op["into"]].extend(state.pop(op["from"]))
    elif kind == "move":
        src = state[op["from"]]
        src.remove(op["record"])
        if not src:
            del state[op["from"]]
        state[op["to"]].append(op["record"])
    else:
        raise ValueError(f"unknown perturbation op {kind!r}")


def _to_clustering(state: dict[str, list[str]]) -> Clustering:
    records, labels = [], []
    for label, members in state.items():
        records.extend(members)
        labels.extend([label] * len(members))
    return Clustering.from_labels(records, labels)


@dataclass
class PerturbationLog:
    seed: int
    ops: list = field(default_factory=list)
    result_digest: str = ""

    def replay(self, source: Clustering) -> Clustering:
        state = _string_labels(source)
        for op in self.ops:
            _apply(state, op)
        return _to_clustering(state)

    def to_dict(self) -> dict:
        return {"seed": self.seed, "ops": self.ops, "resultDigest": self.result_digest}

    @classmethod
    def from_dict(cls, d: dict) -> "PerturbationLog":
        return cls(d["seed"], list(d["ops"]), d.get("resultDigest", ""))


def perturb(c: Clustering, n_ops: int, op_mix: Mapping[str, float], seed: int = 0
            ) -> tuple[Clustering, PerturbationLog]:
    """Apply ``n_ops`` random split/merge/move operations.

    Each step draws an operation type by weight among the types that are
    currently possible, so impossible draws (splitting a singleton, merging
    a lone cluster) are never taken.
    """
    unknown = set(op_mix) - set(OPS)
    if unknown or any(w < 0 for w in op_mix.values()):
        raise ValueError(f"op mix must map {OPS} to non-negative weights")
    rng = random.Random(seed)
    state = _string_labels(c)
    log = PerturbationLog(seed)
    fresh = 0

    def new_label(base: str) -> str:
        nonlocal fresh
        while True:
            fresh += 1
            label = f"{base}~{fresh}"
            if label not in state:
                return label

    for _ in range(n_ops):
        splittable = [lab for lab, m in state.items() if len(m) >= 2]
        possible = {
            "split": bool(splittable),
            "merge": len(state) >= 2,
            "move": len(state) >= 2,
        }
        choices = [op for op in OPS if op_mix.get(op, 0) > 0 and possible[op]]
        if not choices:
            raise Unsatisfiable(f"no legal operation in mix {dict(op_mix)} for "
                                f"{sum(map(len, state.values()))} records in {len(state)} clusters")
        kind = rng.choices(choices, weights=[op_mix[o] for o in choices])[0]
        if kind == "split":
            label = rng.choice(splittable)
            members = list(state[label])
            rng.shuffle(members)
            cut = rng.randint(1, len(members) - 1)
            moved = set(members[cut:])
            op = {"op": "split", "cluster": label, "into": new_label(label),
                  "moved": [t for t in state[label] if t in moved]}
        elif kind == "merge":
            a, b = rng.sample(list(state), 2)
            op = {"op": "merge", "into": a, "from": b}
        else:
            labels = list(state)
            src = rng.choice(labels)
            record = rng.choice(state[src])
            dst = rng.choice([lab for lab in labels if lab != src])
            op = {"op": "move", "record": record, "from": src, "to": dst}
        _apply(state, op)
        log.ops.append(op)
    result = _to_clustering(state)
    log.result_digest = partition_digest(result)
    return result, log
