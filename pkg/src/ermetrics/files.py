"""Reading and writing clustering files (TSV and JSON)."""
from __future__ import annotations

import json
import os
from typing import Optional

from .core import Clustering, _check_token
from .errors import ConflictingAssignment, ParseError

FORMATS = ("tsv", "json")


def detect_format(path, fmt: Optional[str] = None) -> str:
    if fmt and fmt != "auto":
        if fmt not in FORMATS:
            raise ValueError(f"unknown clustering format {fmt!r}")
        return fmt
    return "json" if str(path).lower().endswith(".json") else "tsv"


def parse_tsv(text: str, path=None) -> Clustering:
    """``record_id<TAB>cluster_id`` per line; ``#`` lines and blank lines skipped."""
    seen: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(f"expected 2 tab-separated fields, got {len(fields)}", path, lineno)
        token, label = fields
        if not token.strip():
            raise ParseError("empty record id", path, lineno)
        prev = seen.setdefault(token, label)
        if prev != label:
            raise ConflictingAssignment(token, prev, label, line=lineno)
    return Clustering.from_labels(list(seen), list(seen.values()))


def parse_json(text: str, path=None) -> Clustering:
    if not text.strip():
        return Clustering.from_labels([], [])
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (column {exc.colno})", path, exc.lineno) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("clusters"), dict):
        raise ParseError('expected an object {"clusters": {label: [ids...]}}', path)
    seen: dict = {}
    for label, members in doc["clusters"].items():
        if not isinstance(members, list) or not members:
            raise ParseError(f"cluster {label!r} must be a non-empty list of ids", path)
        for token in members:
            try:
                _check_token(token)
            except ValueError as exc:
                raise ParseError(f"cluster {label!r}: {exc}", path) from None
            prev = seen.setdefault(token, label)
            if prev != label:
                raise ConflictingAssignment(token, prev, label)
    return Clustering.from_labels(list(seen), list(seen.values()))


def parse_clustering_file(path, fmt: Optional[str] = None) -> Clustering:
    fmt = detect_format(path, fmt)
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except UnicodeDecodeError as exc:
        raise ParseError(f"not valid UTF-8: {exc.reason}", path) from None
    return parse_json(text, path) if fmt == "json" else parse_tsv(text, path)


def _label_text(label, token) -> str:
    return f"_singleton:{token}" if label is None else str(label)


def render_clustering(c: Clustering, fmt: str = "tsv") -> str:
    if fmt == "json":
        clusters: dict = {}
        for tok, idx in zip(c.records, c.assignment.tolist()):
            clusters.setdefault(_label_text(c.labels[idx], tok), []).append(tok)
        return json.dumps({"clusters": clusters}, indent=2, ensure_ascii=False) + "\n"
    lines = [f"{tok}\t{_label_text(c.labels[idx], tok)}"
             for tok, idx in zip(c.records, c.assignment.tolist())]
    return "".join(line + "\n" for line in lines)


def write_clustering(c: Clustering, path, fmt: Optional[str] = None) -> None:
    fmt = detect_format(path, fmt)
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(render_clustering(c, fmt))
    os.replace(tmp, path)
