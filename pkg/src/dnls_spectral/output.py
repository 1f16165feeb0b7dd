"""Result serialization: CSV emission (17-significant-digit floats) and run manifests.

All files use LF line endings, a mandatory header row, and '.'-decimal float
formatting independent of the process locale, so identical inputs produce
byte-identical files across platforms.
"""

import json
import platform
import sys
from dataclasses import dataclass, field

import numpy as np

from .config import SCHEMA_VERSION

__all__ = [
    "format_float",
    "emit_convergence_csv",
    "emit_snapshot_csv",
    "emit_limit_csv",
    "read_csv",
    "RunManifest",
    "write_manifest",
]

CONVERGENCE_COLUMNS = ("resolution", "abs_error", "rel_error", "order")
SNAPSHOT_COLUMNS = ("x", "re_u", "im_u", "abs_u", "t", "run_label")
LIMIT_COLUMNS = ("param_value", "sup_L2_distance")


def format_float(value):
    """17 significant digits: enough for exact double round-trips."""
    return f"{float(value):.17g}"


def _write_rows(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def emit_convergence_csv(report, path):
    """Four-column table: resolution, abs_error, rel_error, order (order is nan on row 1)."""
    rows = [
        (format_float(r.resolution), format_float(r.abs_error), format_float(r.rel_error), format_float(r.order))
        for r in report.rows
    ]
    _write_rows(path, CONVERGENCE_COLUMNS, rows)
    return path


def emit_snapshot_csv(entries, path):
    """Physical profiles: one row per grid point, labelled by time and run.

    `entries` is an iterable of (run_label, t, field).
    """
    rows = []
    for label, t, f in entries:
        values = f.samples()
        for x, u in zip(f.grid.x, values):
            rows.append(
                (
                    format_float(x),
                    format_float(u.real),
                    format_float(u.imag),
                    format_float(abs(u)),
                    format_float(t),
                    str(label),
                )
            )
    _write_rows(path, SNAPSHOT_COLUMNS, rows)
    return path


def emit_limit_csv(report, path):
    """Sweep distances: param_value, sup_L2_distance (reference row included, distance 0)."""
    rows = [
        (format_float(v), format_float(d))
        for v, d in zip(report.values, report.distances)
    ]
    _write_rows(path, LIMIT_COLUMNS, rows)
    return path


def read_csv(path):
    """Read back a CSV written here: (header tuple, list of string rows)."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    header = tuple(lines[0].split(","))
    return header, [line.split(",") for line in lines[1:]]


@dataclass
class RunManifest:
    """Provenance of one CLI invocation (schema "dnls-1")."""

    config: dict
    files: list
    duration_s: float
    scheme: str
    schema: str = SCHEMA_VERSION
    platform: dict = field(default_factory=lambda: {
        "python": sys.version.split()[0],
        "numpy": np.__version__,
        "machine": platform.platform(),
    })


def write_manifest(manifest, path):
    doc = {
        "schema": manifest.schema,
        "config": manifest.config,
        "files": list(manifest.files),
        "duration_s": manifest.duration_s,
        "scheme": manifest.scheme,
        "platform": manifest.platform,
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    return path
