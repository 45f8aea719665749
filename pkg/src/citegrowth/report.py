"""CSV/JSON writers that stamp every file with its provenance."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Iterable, Mapping, Sequence

NULL = "null"


def fmt(value) -> str:
    if value is None:
        return NULL
    if isinstance(value, float):
        if math.isnan(value):
            return NULL
        return repr(value)
    return str(value)


def csv_text(header: Sequence[str], rows: Iterable[Sequence], provenance: Mapping | None = None) -> str:
    buf = io.StringIO()
    for key, value in (provenance or {}).items():
        buf.write(f"# {key}={value}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def json_text(payload, provenance: Mapping | None = None) -> str:
    doc = {"provenance": dict(provenance or {}), "data": payload}
    return json.dumps(doc, indent=2, default=_jsonable, allow_nan=False) + "\n"


def _jsonable(obj):
    if hasattr(obj, "as_dict"):
        return obj.as_dict()
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def records(header: Sequence[str], rows: Iterable[Sequence]) -> list[dict]:
    out = []
    for row in rows:
        rec = {}
        for k, v in zip(header, row):
            rec[k] = None if isinstance(v, float) and math.isnan(v) else v
        out.append(rec)
    return out


def render(header, rows, provenance=None, fmt_name: str = "csv") -> str:
    rows = list(rows)
    if fmt_name == "json":
        return json_text(records(header, rows), provenance)
    return csv_text(header, rows, provenance)


def write(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path
