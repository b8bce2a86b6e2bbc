"""The evaluate() pipeline and the serialisable MetricReport."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .cluster import closest_cluster, exact_cluster, purity_family
from .core import AlignedPair, Clustering, Overlap, align, intra_pair_count, overlap
from .errors import EmptyClustering
from .gmd import CostFamily, GmdConfig, gmd
from .info import (R_GIVEN_S, S_GIVEN_R, _ratio_score, conditional_entropy,
                   marginal_entropy, v_measure)
from .pairwise import pairwise, shared_pair_count

SCHEMA_VERSION = 1

# name -> True (higher is better), False (lower is better), None (descriptive only)
METRICS: dict[str, Optional[bool]] = {
    "pairwisePrecision": True,
    "pairwiseRecall": True,
    "pairwiseF1": True,
    "exactPrecision": True,
    "exactRecall": True,
    "exactF1": True,
    "ccPrecision": True,
    "ccRecall": True,
    "ccF1": True,
    "acp": True,
    "aap": True,
    "k": True,
    "manningPurity": True,
    "hS": None,
    "hR": None,
    "hSgivenR": False,
    "hRgivenS": False,
    "homogeneity": True,
    "completeness": True,
    "vMeasure": True,
    "vi": False,
    "gmd": False,
}

UNIT_INTERVAL = tuple(name for name, hib in METRICS.items() if hib)


@dataclass(frozen=True)
class EvalOptions:
    metrics: Optional[tuple[str, ...]] = None  # None means all
    universe: str = "strict"
    beta: float = 1.0
    gmd_split: CostFamily = CostFamily.product(1)
    gmd_merge: CostFamily = CostFamily.product(1)

    def selected(self) -> tuple[str, ...]:
        return resolve_metrics(self.metrics)


def resolve_metrics(names: Optional[Iterable[str]]) -> tuple[str, ...]:
    if names is None:
        return tuple(METRICS)
    names = list(names)
    if names == ["all"]:
        return tuple(METRICS)
    unknown = [m for m in names if m not in METRICS]
    if unknown:
        raise ValueError(f"unknown metric(s) {unknown}; known: {', '.join(METRICS)}")
    return tuple(dict.fromkeys(names))


@dataclass
class MetricReport:
    metrics: dict
    higher_is_better: dict
    counts: dict
    flags: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    @property
    def failed(self) -> bool:
        return any(v is None for v in self.metrics.values())

    def to_dict(self) -> dict:
        return {
            "schemaVersion": self.schema_version,
            "metrics": dict(self.metrics),
            "higherIsBetter": dict(self.higher_is_better),
            "counts": dict(self.counts),
            "flags": list(self.flags),
            "config": dict(self.config),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MetricReport":
        if d.get("schemaVersion") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schemaVersion {d.get('schemaVersion')!r}")
        return cls(dict(d["metrics"]), dict(d["higherIsBetter"]), dict(d["counts"]),
                   list(d["flags"]), dict(d["config"]), d["schemaVersion"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "MetricReport":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["section", "name", "value"])
        for name, value in self.metrics.items():
            w.writerow(["metric", name, "" if value is None else repr(value)])
        for name, value in self.counts.items():
            w.writerow(["count", name, value])
        for name, value in self.config.items():
            w.writerow(["config", name, value])
        for flag in self.flags:
            w.writerow(["flag", flag, ""])
        return buf.getvalue()

    def to_table(self) -> str:
        width = max(len(k) for k in [*self.metrics, *self.counts, "metric"])
        lines = [f"{'metric':<{width}}  value"]
        for name, value in self.metrics.items():
            shown = "null" if value is None else f"{value:.6f}"
            arrow = {True: "  (higher is better)", False: "  (lower is better)"}.get(
                self.higher_is_better.get(name), "")
            lines.append(f"{name:<{width}}  {shown}{arrow}")
        lines.append("")
        for name, value in self.counts.items():
            lines.append(f"{name:<{width}}  {value}")
        if self.flags:
            lines.append("")
            lines.extend(f"flag: {f}" for f in self.flags)
        lines.append("config: " + ", ".join(f"{k}={v}" for k, v in self.config.items()))
        return "\n".join(lines) + "\n"

    def render(self, fmt: str = "json") -> str:
        return {"json": self.to_json, "csv": self.to_csv, "table": self.to_table}[fmt]()


def _guarded(values: dict, flags: list, names: tuple[str, ...], compute):
    try:
        result = compute()
    except EmptyClustering as exc:
        for name in names:
            values[name] = None
            flags.append(f"{name}:EmptyClustering: {exc}")
        return
    for name, v in zip(names, result):
        values[name] = float(v)


def metrics_from_overlap(o: Overlap, options: EvalOptions, flags: list) -> dict:
    """Every metric of the package, evaluated off one contingency table."""
    values: dict = {}
    wanted = set(options.selected())

    def want(*names):
        return wanted.intersection(names)

    if want("pairwisePrecision", "pairwiseRecall", "pairwiseF1"):
        ps = pairwise(o)
        values.update(pairwisePrecision=ps.precision, pairwiseRecall=ps.recall, pairwiseF1=ps.f1)
        flags.extend(ps.degenerate)
    if want("exactPrecision", "exactRecall", "exactF1"):
        ep, er, ef = exact_cluster(o)
        values.update(exactPrecision=ep, exactRecall=er, exactF1=ef)
        if 0 in o.shape:
            flags.append("exactPrecision/exactRecall:no-clusters")
    if want("ccPrecision", "ccRecall", "ccF1"):
        _guarded(values, flags, ("ccPrecision", "ccRecall", "ccF1"), lambda: closest_cluster(o))
    if want("acp", "aap", "k", "manningPurity"):
        _guarded(values, flags, ("acp", "aap", "k", "manningPurity"), lambda: purity_family(o))
    info_names = ("hS", "hR", "hSgivenR", "hRgivenS", "homogeneity", "completeness",
                  "vMeasure", "vi")
    if want(*info_names):
        def info():
            h_s = marginal_entropy(o.col_sizes, o.n)
            h_r = marginal_entropy(o.row_sizes, o.n)
            h_sr = conditional_entropy(o, S_GIVEN_R)
            h_rs = conditional_entropy(o, R_GIVEN_S)
            hom, comp = _ratio_score(h_sr, h_s), _ratio_score(h_rs, h_r)
            return (h_s, h_r, h_sr, h_rs, hom, comp,
                    v_measure(hom, comp, options.beta), h_sr + h_rs)
        _guarded(values, flags, info_names, info)
    if want("gmd"):
        values["gmd"] = gmd(o, GmdConfig(options.gmd_split, options.gmd_merge))
    return {name: values[name] for name in options.selected()}


def report_for(pair: AlignedPair, options: EvalOptions) -> MetricReport:
    o = overlap(pair)
    flags: list = []
    metrics = metrics_from_overlap(o, options, flags)
    n = pair.n
    intra_r = intra_pair_count(pair.left)
    counts = {
        "n": n,
        "clustersR": pair.left.num_clusters,
        "clustersS": pair.right.num_clusters,
        "intraPairsR": intra_r,
        "intraPairsS": intra_pair_count(pair.right),
        "interPairsR": n * (n - 1) // 2 - intra_r,
        "sharedPairs": shared_pair_count(o),
    }
    config = {
        "universe": pair.policy,
        "beta": float(options.beta),
        "gmdSplit": str(options.gmd_split),
        "gmdMerge": str(options.gmd_merge),
        "entropyUnit": "nats",
    }
    return MetricReport(metrics, {m: METRICS[m] for m in metrics}, counts, flags, config)


def evaluate(pred: Clustering, gold: Clustering, options: Optional[EvalOptions] = None) -> MetricReport:
    """Score ``pred`` (R) against ``gold`` (S)."""
    options = options or EvalOptions()
    return report_for(align(pred, gold, options.universe), options)
