"""Deterministic CSV/JSON writers and the run manifest.

Numbers are written in full-precision scientific notation (17 significant
digits) so that repeated runs of the same experiment produce byte-identical
artifacts; manifests record a SHA-256 per output file.
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path


def fmt(x) -> str:
    """Full-precision scientific notation; NaN spelled out for CSV stability."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    return f"{x:.17e}"


def write_csv(path, header, rows):
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(cell if isinstance(cell, str) else fmt(cell) for cell in row)
                    + "\n")
    return path


def write_json(path, obj):
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as f:
        json.dump(obj, f, indent=2, sort_keys=True, allow_nan=True)
        f.write("\n")
    return path


def sha256_of(path) -> str:
    h = hashlib.sha256()
    with Path(path).open("rb") as f:
        for block in iter(lambda: f.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def write_manifest(out_dir, experiment: str, config: dict, files) -> Path:
    """Manifest of every artifact with content hashes, itself deterministic."""
    out_dir = Path(out_dir)
    entries = []
    for p in sorted(Path(f) for f in files):
        entries.append({
            "path": p.name,
            "sha256": sha256_of(p),
            "bytes": p.stat().st_size,
        })
    manifest = {"experiment": experiment, "config": config, "outputs": entries}
    return write_json(out_dir / "manifest.json", manifest)
