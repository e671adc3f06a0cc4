"""Shape persisted run records into plot-ready CSV tables (no rendering)."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .errors import SpecError
from .experiment import SCHEMA_VERSION, format_csv, read_record_files
from .params import ModelParams
from .predictors import largest_depth_window
from .qseries import qpochhammer_limit

KINDS = ("staircase", "windows", "intensity")

_KIND_ENGINE = {"staircase": "gillespie", "windows": "gillespie", "intensity": "brw"}


def _replica_staircases(rows: list[list[str]]) -> dict[int, list[tuple[float, int]]]:
    out: dict[int, list[tuple[float, int]]] = {}
    for row in rows:
        # columns: schema_version, replica, event_time, m_t, M_t
        out.setdefault(int(row[1]), []).append((float(row[2]), int(row[3])))
    return out


def emit_plotdata(in_path: str | Path, kind: str, out_path: str | Path) -> int:
    """Write the requested table; returns the number of data rows."""
    if kind not in KINDS:
        raise SpecError(f"kind must be one of {KINDS}, got {kind!r}")
    header, rows, meta = read_record_files(in_path)
    spec = meta.get("spec", {})
    engine = spec.get("engine")
    if engine != _KIND_ENGINE[kind]:
        raise SpecError(
            f"kind {kind!r} needs a {_KIND_ENGINE[kind]!r} record, got {engine!r}"
        )

    if kind == "staircase":
        columns = ("replica", "t", "value")
        out_rows = [
            (int(r[1]), float(r[2]), int(r[3])) for r in rows
        ]
    elif kind == "windows":
        params = ModelParams(int(spec["k"]), float(spec["alpha"]))
        t_end = float(spec["t_end"])
        columns = ("replica", "t", "m_t", "lo_int", "hi_int")
        out_rows = []
        for replica, stairs in sorted(_replica_staircases(rows).items()):
            times = np.array([t for t, _ in stairs])
            values = np.array([v for _, v in stairs])
            t = max(math.e * 1.05, times[0] if times.size else math.e * 1.05)
            while t <= t_end:
                i = int(np.searchsorted(times, t, side="right")) - 1
                window = largest_depth_window(params, t)
                out_rows.append(
                    (replica, t, int(values[max(i, 0)]), window.lo_int, window.hi_int)
                )
                t *= 1.05
    else:  # intensity
        points = meta.get("extras", {}).get("points_final_generation", {})
        q = ModelParams(int(spec["k"]), float(spec["alpha"])).q
        phi = qpochhammer_limit(q)
        floor = float(spec.get("floor", -5.0))
        edges = np.arange(math.floor(floor), 6.0)
        columns = ("s_lo", "s_hi", "mean_count", "expected_count")
        out_rows = []
        if points:
            replicas = sorted(points, key=int)
            for lo, hi in zip(edges[:-1], edges[1:]):
                counts = [
                    sum(1 for x in points[r] if lo <= x < hi) for r in replicas
                ]
                expected = (math.exp(-lo) - math.exp(-hi)) / phi
                out_rows.append(
                    (float(lo), float(hi), float(np.mean(counts)), expected)
                )

    Path(out_path).write_text(format_csv(columns, out_rows))
    return len(out_rows)


__all__ = ["KINDS", "emit_plotdata", "SCHEMA_VERSION"]
