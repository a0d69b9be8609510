"""Deterministic CSV/JSON emission shared by the command-line tools.

Files must be byte-identical across reruns with the same arguments, so: no
timestamps, floats are written with repr (shortest round-trip form, '.'
decimal point), line endings are LF, and every table carries two comment
lines, the canonical invocation and a hash of the full configuration, that
downstream consumers use to check that the files of a bundle belong together.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Iterable, Sequence

__all__ = ["config_hash", "write_csv", "write_json", "read_csv"]


def config_hash(config: dict) -> str:
    """Stable 16-hex-digit digest of a JSON-serializable configuration."""
    canon = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(float(value))
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    text = str(value)
    if any(ch in text for ch in ',"\n'):
        text = '"' + text.replace('"', '""') + '"'
    return text


def write_csv(
    path: str | Path,
    header: Sequence[str],
    rows: Iterable[Sequence],
    invocation: str,
    digest: str,
) -> None:
    lines = [f"# invocation: {invocation}", f"# config-hash: {digest}"]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", newline="\n")


def write_json(path: str | Path, payload: dict) -> None:
    Path(path).write_text(
        json.dumps(payload, sort_keys=True, indent=2) + "\n", newline="\n"
    )


def read_csv(path: str | Path):
    """Parse a table written by write_csv: (meta, header, rows-of-strings)."""
    meta = {}
    header: list[str] = []
    rows: list[list[str]] = []
    for line in Path(path).read_text().splitlines():
        if not line:
            continue
        if line.startswith("# "):
            key, _, val = line[2:].partition(": ")
            meta[key] = val
            continue
        cells = line.split(",")  # values written by _cell never need quoting here
        if not header:
            header = cells
        else:
            rows.append(cells)
    return meta, header, rows
