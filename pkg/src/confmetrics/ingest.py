"""File ingestion for monitoring batches.

Two input formats carry the same three fields: ``prediction`` (0/1),
``score`` (a decimal in [0, 1]) and an optional ``label`` (0/1).  CSV files
need a header row; JSONL files hold one object per line.  Unknown columns
or keys are ignored with a warning.  Malformed content is rejected with the
1-based line number of the offending row.
"""

from __future__ import annotations

import csv
import json
import warnings
from pathlib import Path

from .confusion import PredictionBatch, PredictionRecord

__all__ = ["parse_input", "FORMATS"]

FORMATS = ("csv", "jsonl")

_REQUIRED = ("prediction", "score")
_KNOWN = ("prediction", "score", "label")


def _parse_binary(raw, field: str, line: int) -> int:
    try:
        value = int(str(raw).strip())
    except (TypeError, ValueError):
        raise ValueError(f"line {line}: {field} must be 0 or 1, got {raw!r}") from None
    if value not in (0, 1):
        raise ValueError(f"line {line}: {field} must be 0 or 1, got {raw!r}")
    return value


def _parse_score(raw, line: int) -> float:
    try:
        value = float(str(raw).strip())
    except (TypeError, ValueError):
        raise ValueError(f"line {line}: score must be a decimal, got {raw!r}") from None
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"line {line}: score must lie in [0, 1], got {raw!r}")
    return value


def _build_record(prediction, score, label, line: int) -> PredictionRecord:
    true_label = None
    if label is not None and str(label).strip() != "":
        true_label = _parse_binary(label, "label", line)
    return PredictionRecord(
        predicted_label=_parse_binary(prediction, "prediction", line),
        score=_parse_score(score, line),
        true_label=true_label,
    )


def _warn_unknown(names, source: str) -> None:
    unknown = sorted(set(names) - set(_KNOWN))
    if unknown:
        warnings.warn(
            f"ignoring unknown {source}: {', '.join(unknown)}",
            stacklevel=3,
        )


def _parse_csv(path: Path) -> list[PredictionRecord]:
    records = []
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise ValueError("line 1: missing CSV header")
        missing = [c for c in _REQUIRED if c not in reader.fieldnames]
        if missing:
            raise ValueError(f"line 1: header lacks required columns: {', '.join(missing)}")
        _warn_unknown(reader.fieldnames, "CSV columns")
        for row in reader:
            line = reader.line_num
            if row.get(None):
                raise ValueError(f"line {line}: more fields than header columns")
            records.append(
                _build_record(row.get("prediction"), row.get("score"), row.get("label"), line)
            )
    return records


def _parse_jsonl(path: Path) -> list[PredictionRecord]:
    records = []
    unknown_keys: set[str] = set()
    with path.open(encoding="utf-8") as handle:
        for line_num, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"line {line_num}: invalid JSON: {exc.msg}") from None
            if not isinstance(obj, dict):
                raise ValueError(f"line {line_num}: expected a JSON object")
            missing = [k for k in _REQUIRED if k not in obj]
            if missing:
                raise ValueError(f"line {line_num}: missing keys: {', '.join(missing)}")
            unknown_keys.update(set(obj) - set(_KNOWN))
            records.append(
                _build_record(obj["prediction"], obj["score"], obj.get("label"), line_num)
            )
    _warn_unknown(unknown_keys, "JSONL keys")
    return records


def parse_input(path: str | Path, format: str = "csv") -> PredictionBatch:
    """Read a prediction file into an ordered batch.

    Labels are attached when present.  Raises ValueError naming the 1-based
    line of the first malformed row.
    """
    if format not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {format!r}")
    path = Path(path)
    records = _parse_csv(path) if format == "csv" else _parse_jsonl(path)
    return PredictionBatch(records)
