"""CSV/JSON output, run manifests and flat config files."""

from __future__ import annotations

import hashlib
import io
import json
import math
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__


def format_number(value) -> str:
    if isinstance(value, (int,)) and not isinstance(value, bool):
        return str(value)
    v = float(value)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.11e}"


def csv_payload(columns, rows, footer=None) -> str:
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(format_number(v) for v in row) + "\n")
    if footer:
        for key, value in footer:
            buf.write(f"# {key},{format_number(value)}\n")
    return buf.getvalue()


def checksum(payload: str) -> str:
    return hashlib.sha256(payload.encode()).hexdigest()


@dataclass
class RunManifest:
    command: str
    config: dict
    version: str = __version__
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    checksum: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def write_output(payload_csv: str, columns, rows, manifest: RunManifest, out=None, fmt="csv", stream=None):
    """Write CSV (with a ``.manifest.json`` sidecar) or JSON with the manifest embedded."""
    manifest.checksum = checksum(payload_csv)
    if fmt == "json":
        text = json.dumps(
            {
                "manifest": manifest.to_dict(),
                "columns": list(columns),
                "rows": [[_json_value(v) for v in r] for r in rows],
            },
            indent=2,
        )
        text += "\n"
    else:
        text = payload_csv
    if out is None:
        stream.write(text)
        return
    path = Path(out)
    path.write_text(text)
    if fmt == "csv":
        Path(str(path) + ".manifest.json").write_text(json.dumps(manifest.to_dict(), indent=2) + "\n")


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def read_config(path) -> dict:
    """Read a flat ``key = value`` file; ``#`` starts a comment.

    Keys use underscores or dashes interchangeably. Values are parsed as
    JSON scalars where possible and left as strings otherwise.
    """
    result = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            key, value = line.split("=", 1)
        elif ":" in line:
            key, value = line.split(":", 1)
        else:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key = key.strip().replace("-", "_")
        value = value.strip()
        try:
            result[key] = json.loads(value)
        except json.JSONDecodeError:
            lowered = value.lower()
            if lowered in ("true", "yes", "on"):
                result[key] = True
            elif lowered in ("false", "no", "off"):
                result[key] = False
            else:
                result[key] = value
    return result
