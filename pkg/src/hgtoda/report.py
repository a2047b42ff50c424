"""Report assembly and serialization (JSON and CSV)."""

from __future__ import annotations

import csv
import io
import json
import math
from importlib import metadata

import numpy as np

from .tjet import Jet


def versions() -> dict:
    try:
        artifact = metadata.version("artifact")
    except metadata.PackageNotFoundError:
        artifact = "0.1.0"
    return {"artifact": artifact, "numpy": np.__version__}


def _num(v: float):
    v = float(v)
    if math.isfinite(v):
        return v
    return "nan" if math.isnan(v) else ("inf" if v > 0 else "-inf")


def to_jsonable(obj):
    """Complex numbers become ``[re, im]``; non-finite floats become strings."""
    if isinstance(obj, Jet):
        obj = obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_num(obj.real), _num(obj.imag)]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def summarize(rows: list[dict]) -> dict:
    """Count every ``(residual, threshold)`` column pair in the rows."""
    checks = passed = 0
    worst = 0.0
    for row in rows:
        for key, val in row.items():
            if not key.endswith("residual") or val is None:
                continue
            thr = row.get(key.replace("residual", "threshold"))
            if thr is None:
                continue
            checks += 1
            r = float(val)
            ok = math.isfinite(r) and r <= thr
            passed += ok
            worst = max(worst, r) if not math.isnan(r) else math.inf
    return {"checks": checks, "passed": passed, "max_residual": worst}


def build(command: str, config: dict, rows: list[dict]) -> dict:
    return {
        "command": command,
        "config_echo": to_jsonable(config),
        "rows": to_jsonable(rows),
        "summary": to_jsonable(summarize(rows)),
        "versions": versions(),
    }


def _compact(obj) -> str:
    return json.dumps(obj, allow_nan=False, separators=(", ", ": "))


def render_json(report: dict) -> str:
    """Pretty at the top level, one line per row and per config entry."""
    lines = ["{"]
    keys = list(report)
    for n, key in enumerate(keys):
        val = report[key]
        end = "," if n < len(keys) - 1 else ""
        if isinstance(val, dict) and val:
            lines.append(f"  {json.dumps(key)}: {{")
            items = list(val.items())
            for k, (sk, sv) in enumerate(items):
                lines.append(f"    {json.dumps(sk)}: {_compact(sv)}" + ("," if k < len(items) - 1 else ""))
            lines.append("  }" + end)
        elif isinstance(val, list) and val:
            lines.append(f"  {json.dumps(key)}: [")
            for k, row in enumerate(val):
                lines.append(f"    {_compact(row)}" + ("," if k < len(val) - 1 else ""))
            lines.append("  ]" + end)
        else:
            lines.append(f"  {json.dumps(key)}: {_compact(val)}{end}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _flatten(prefix: str, val, out: dict):
    if isinstance(val, list) and len(val) == 2 and all(isinstance(v, (int, float)) for v in val) \
            and not isinstance(val[0], bool) and prefix not in ("pair", "m_range", "n_range"):
        out[f"{prefix}_re"], out[f"{prefix}_im"] = val
    elif isinstance(val, list):
        for k, v in enumerate(val):
            _flatten(f"{prefix}_{k}", v, out)
    elif isinstance(val, dict):
        out[prefix] = json.dumps(val, sort_keys=True, separators=(",", ":"))
    elif isinstance(val, bool):
        out[prefix] = "true" if val else "false"
    elif val is None:
        out[prefix] = ""
    else:
        out[prefix] = val


def render_csv(report: dict) -> str:
    """The row table only; complex columns split into ``_re``/``_im`` pairs."""
    flat = []
    for row in report["rows"]:
        out: dict = {}
        for key, val in row.items():
            _flatten(key, val, out)
        flat.append(out)
    fields: list[str] = []
    for row in flat:
        for k in row:
            if k not in fields:
                fields.append(k)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in flat:
        writer.writerow(row)
    return buf.getvalue()


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "csv":
        return render_csv(report)
    raise ValueError(f"unknown format {fmt!r}; use json or csv")
