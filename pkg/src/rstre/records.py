"""Writing and reading result tables as CSV or JSON lines.

Floats are written with 17 significant digits so they read back exactly.
Each data file gets a ``<path>.meta.json`` sidecar with the config hash and
package version; nothing time-dependent is written unless asked for, so the
same config always produces the same bytes.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os

from . import __version__

FORMATS = ("csv", "jsonl")


def _as_row(rec) -> dict:
    return rec.as_row() if hasattr(rec, "as_row") else dict(rec)


def _float_text(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    text = format(x, ".17g")
    # keep floats recognisable as floats on the way back in
    return text if any(c in text for c in ".e") else text + ".0"


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _float_text(v)
    return str(v)


def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _float_text(v) if math.isfinite(v) else json.dumps(_float_text(v))
    if isinstance(v, int):
        return str(v)
    return json.dumps(v)


def render_records(records, fmt="csv", header=None, timing=False) -> str:
    """Text of the data file.  ``header`` fixes the column order (default:
    the first record's keys); ``elapsed_ms`` is blanked unless ``timing``."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    rows = [_as_row(r) for r in records]
    if header is None:
        header = list(rows[0]) if rows else []
    if not timing:
        for row in rows:
            if "elapsed_ms" in row:
                row["elapsed_ms"] = None
    buf = io.StringIO()
    if fmt == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(row.get(k)) for k in header])
    else:
        for row in rows:
            body = ", ".join(f"{json.dumps(k)}: {_json_value(row.get(k))}" for k in header)
            buf.write("{" + body + "}\n")
    return buf.getvalue()


def write_records(records, fmt, path, header=None, metadata=None, timing=False):
    """Write the data file and its metadata sidecar.

    I/O failures propagate as ``OSError`` whose message names the path.
    """
    text = render_records(records, fmt, header, timing)
    meta = {"artifact_version": __version__, "format": fmt, "record_count": len(records)}
    meta.update(metadata or {})
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        with open(f"{path}.meta.json", "w", encoding="utf-8") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write records: {exc.strerror}", os.fspath(path)) from exc


def _parse_cell(text):
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def read_records(path, fmt=None) -> list[dict]:
    """Rows as dictionaries with ints, floats, bools and None restored."""
    if fmt is None:
        fmt = "jsonl" if os.fspath(path).endswith(".jsonl") else "csv"
    with open(path, encoding="utf-8", newline="") as fh:
        if fmt == "csv":
            return [{k: _parse_cell(v) for k, v in row.items()} for row in csv.DictReader(fh)]
        out = []
        for line in fh:
            if line.strip():
                row = json.loads(line)
                out.append({k: float(v) if v in ("nan", "inf", "-inf") else v for k, v in row.items()})
        return out
