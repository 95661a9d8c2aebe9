"""Deterministic CSV/JSON report writing and schema validation.

CSV bodies are byte-reproducible for a fixed seed: RFC-4180 dialect (CRLF
row endings, minimal quoting), fixed column order, floats rendered by
shortest round-trip repr.  Timestamps and environment data are confined to
manifest.json.
"""

from __future__ import annotations

import csv
import json
import math
from importlib import resources

import numpy as np


def fmt_value(v):
    if isinstance(v, (np.floating,)):
        v = float(v)
    if isinstance(v, (np.integer,)):
        v = int(v)
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return repr(v)
    return v


def write_csv(path, fieldnames, rows):
    """rows: iterable of dicts keyed by fieldnames."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(fieldnames), lineterminator="\r\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: fmt_value(row.get(k)) for k in fieldnames})


def _json_default(obj):
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON-serializable: {type(obj)}")


def sanitize(obj):
    """Recursively coerce numpy scalars/arrays and NaN to JSON-safe values."""
    if isinstance(obj, dict):
        return {k: sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [sanitize(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        obj = float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, float) and math.isnan(obj):
        return None
    return obj


def write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(sanitize(obj), fh, indent=2, sort_keys=True, default=_json_default)
        fh.write("\n")


def report_dict(report):
    return {
        "name": report.name,
        "config": sanitize(report.config),
        "rows": sanitize(report.rows),
        "verdict": bool(report.verdict),
        "summary": sanitize(report.summary),
    }


def write_report(report, out_dir, csv_fields=None):
    """Write <name>.csv and <name>.json into out_dir; returns the two paths."""
    base = out_dir / report.name
    fields = csv_fields or (list(report.rows[0].keys()) if report.rows else [])
    csv_path = base.with_suffix(".csv")
    json_path = base.with_suffix(".json")
    write_csv(csv_path, fields, report.rows)
    write_json(json_path, report_dict(report))
    return csv_path, json_path


def load_schema(name):
    text = resources.files("bolab.schemas").joinpath(f"{name}.schema.json").read_text()
    return json.loads(text)


def validate_against_schema(obj, schema_name):
    import jsonschema

    jsonschema.validate(instance=sanitize(obj), schema=load_schema(schema_name))
