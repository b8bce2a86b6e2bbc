"""Do the metrics agree on which candidate clustering is best?

Each metric ranks the candidates against the same gold standard. Two
metrics conflict when one strictly prefers candidate A over B and the
other strictly prefers B over A.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .core import Clustering
from .report import METRICS, EvalOptions, MetricReport, evaluate, resolve_metrics
from .synth import perturb

TIE_TOL = 1e-12


@dataclass
class RankComparison:
    metrics: list
    candidates: list
    scores: dict  # metric -> per-candidate values
    rankings: dict  # metric -> candidate names, best first
    tau: dict  # "a|b" -> Kendall tau-b, None when undefined
    conflicts: list = field(default_factory=list)

    def tau_matrix(self) -> list[list[Optional[float]]]:
        return [[self.tau[f"{a}|{b}"] for b in self.metrics] for a in self.metrics]

    def to_dict(self) -> dict:
        return {
            "metrics": self.metrics,
            "candidates": self.candidates,
            "scores": self.scores,
            "rankings": self.rankings,
            "tau": self.tau_matrix(),
            "conflicts": self.conflicts,
        }

    def to_table(self) -> str:
        w = max(len(m) for m in self.metrics)
        lines = ["rankings (best first):"]
        lines += [f"  {m:<{w}}  {' > '.join(self.rankings[m])}" for m in self.metrics]
        lines.append("kendall tau-b:")
        lines.append("  " + " " * w + "  " + " ".join(f"{m[:8]:>8}" for m in self.metrics))
        for m, row in zip(self.metrics, self.tau_matrix()):
            cells = " ".join("     n/a" if t is None else f"{t:8.3f}" for t in row)
            lines.append(f"  {m:<{w}}  {cells}")
        lines.append(f"conflicts: {len(self.conflicts)}")
        for c in self.conflicts:
            lines.append(f"  {c['metricA']} prefers {c['preferredByA']}, "
                         f"{c['metricB']} prefers {c['preferredByB']}")
        return "\n".join(lines) + "\n"


def _sign(x: float) -> int:
    return 0 if abs(x) <= TIE_TOL else (1 if x > 0 else -1)


def _preferences(values: Sequence[Optional[float]], higher_is_better: bool) -> dict:
    """(i, j) -> +1 if candidate i beats j, -1 if j beats i, 0 for a tie."""
    out = {}
    for i, j in combinations(range(len(values)), 2):
        if values[i] is None or values[j] is None:
            out[i, j] = 0
            continue
        diff = values[i] - values[j]
        out[i, j] = _sign(diff if higher_is_better else -diff)
    return out


def kendall_tau_b(a: dict, b: dict) -> Optional[float]:
    concordant = discordant = tied_a = tied_b = 0
    for key, sa in a.items():
        sb = b[key]
        if sa == 0:
            tied_a += 1
        if sb == 0:
            tied_b += 1
        if sa * sb > 0:
            concordant += 1
        elif sa * sb < 0:
            discordant += 1
    total = len(a)
    denom = math.sqrt((total - tied_a) * (total - tied_b))
    if denom == 0:
        return None
    return (concordant - discordant) / denom


def rank_compare(gold: Clustering, candidates: Sequence[Clustering],
                 metrics: Optional[Sequence[str]] = None,
                 options: Optional[EvalOptions] = None,
                 names: Optional[Sequence[str]] = None,
                 workers: int = 1) -> RankComparison:
    if len(candidates) < 2:
        raise ValueError("rank comparison needs at least two candidates")
    selected = [m for m in resolve_metrics(metrics) if METRICS[m] is not None]
    if metrics is not None and list(metrics) != ["all"]:
        descriptive = [m for m in resolve_metrics(metrics) if METRICS[m] is None]
        if descriptive:
            raise ValueError(f"metrics {descriptive} have no better/worse direction")
    names = list(names) if names is not None else [f"candidate{i}" for i in range(len(candidates))]
    base = options or EvalOptions()
    opts = EvalOptions(tuple(selected), base.universe, base.beta, base.gmd_split, base.gmd_merge)

    def run(c: Clustering) -> MetricReport:
        return evaluate(c, gold, opts)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(run, candidates))
    else:
        reports = [run(c) for c in candidates]

    scores = {m: [r.metrics[m] for r in reports] for m in selected}
    prefs = {m: _preferences(scores[m], METRICS[m]) for m in selected}
    rankings = {}
    for m in selected:
        sign = -1.0 if METRICS[m] else 1.0
        order = sorted(range(len(names)),
                       key=lambda i: (scores[m][i] is None, sign * (scores[m][i] or 0.0), i))
        rankings[m] = [names[i] for i in order]

    tau = {}
    for a in selected:
        for b in selected:
            tau[f"{a}|{b}"] = 1.0 if a == b else kendall_tau_b(prefs[a], prefs[b])

    conflicts = []
    for a, b in combinations(selected, 2):
        for (i, j), sa in prefs[a].items():
            sb = prefs[b][i, j]
            if sa * sb < 0:
                win_a, win_b = (i, j) if sa > 0 else (j, i)
                conflicts.append({
                    "metricA": a, "metricB": b,
                    "preferredByA": names[win_a], "preferredByB": names[win_b],
                    "scoresA": [scores[a][i], scores[a][j]],
                    "scoresB": [scores[b][i], scores[b][j]],
                    "candidates": [names[i], names[j]],
                })
    return RankComparison(selected, names, scores, rankings, tau, conflicts)


def split_vs_merge(gold: Clustering, n_ops: int = 10, seed: int = 0,
                   metrics: Optional[Sequence[str]] = None) -> tuple[list, RankComparison]:
    """Rank a split-only and a merge-only perturbation of ``gold``.

    Splitting only ever loses pairs (precision stays 1) and merging only
    ever adds them (recall stays 1), so the two candidates usually pull
    metrics in opposite directions.
    """
    split_only, _ = perturb(gold, n_ops, {"split": 1}, seed=seed)
    merge_only, _ = perturb(gold, n_ops, {"merge": 1}, seed=seed)
    candidates = [split_only, merge_only]
    return candidates, rank_compare(gold, candidates, metrics, names=["split-heavy", "merge-heavy"])
