"""Sweep evaluation and machine-readable reports.

Grid points are independent; evaluation is chunked and may run on several
threads (RELMACHINE_THREADS caps the pool), with results merged back in spec
order. Chunk boundaries are fixed, so the emitted rows are identical for any
thread count.
"""

from __future__ import annotations

import datetime as _dt
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .backend import COLUMNS, REGIME_NAMES, backend_name, kernels
from .config import ConfigError, RunConfig

__all__ = [
    "SweepSpec",
    "RunReport",
    "resolve_threads",
    "evaluate_points",
    "beta_eff_products",
    "write_csv",
    "write_json",
    "render",
]

# fixed chunk size: large enough to amortize dispatch, independent of the
# thread count so emitted rows never depend on scheduling
_CHUNK = 65536

SWEEP_VARIABLES = ("freq_ratio", "a_product", "b_product", "speed_A", "speed_B")


@dataclass(frozen=True)
class SweepSpec:
    """One swept variable over [lo, hi] with `count` points, rest held fixed."""

    variable: str
    lo: float
    hi: float
    count: int
    fixed: RunConfig

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ConfigError(f"sweep variable must be one of {SWEEP_VARIABLES}")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise ConfigError("sweep range needs lo < hi")
        if self.count < 2:
            raise ConfigError("sweep needs at least 2 points")
        if self.variable in ("speed_A", "speed_B"):
            if self.lo < 0.0 or self.hi >= 1.0:
                raise ConfigError("swept speed must stay inside [0, 1)")
        elif self.lo <= 0.0:
            raise ConfigError(f"swept {self.variable} must stay positive")

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)


@dataclass
class RunReport:
    """Ordered rows plus run metadata; the data block is deterministic."""

    command: str
    columns: tuple[str, ...]
    rows: list[list]
    metadata: dict[str, str] = field(default_factory=dict)

    def column(self, name: str) -> list:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]


def resolve_threads() -> int:
    raw = os.environ.get("RELMACHINE_THREADS", "").strip()
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ConfigError("RELMACHINE_THREADS must be an integer") from None
        return max(1, n)
    return max(1, min(4, os.cpu_count() or 1))


def _chunks(n: int):
    for start in range(0, n, _CHUNK):
        yield start, min(start + _CHUNK, n)


def evaluate_points(omega_A, omega_B, a, b, threads: int | None = None):
    """Cycle statistics for arrays of operating points.

    Returns a dict of named float columns (backend.COLUMNS) plus
    ``regime_code``; rows stay in input order regardless of scheduling.
    """
    wA, wB, a, b = (np.array(arr, dtype=np.float64) for arr in
                    np.broadcast_arrays(
                        np.asarray(omega_A, dtype=np.float64),
                        np.asarray(omega_B, dtype=np.float64),
                        np.asarray(a, dtype=np.float64),
                        np.asarray(b, dtype=np.float64)))
    n = a.shape[0]
    values = np.empty((n, len(COLUMNS)), dtype=np.float64)
    regimes = np.empty(n, dtype=np.int64)
    kernel = kernels()
    threads = resolve_threads() if threads is None else max(1, threads)

    def work(bounds):
        lo, hi = bounds
        v, r = kernel.eval_cycle(np.ascontiguousarray(wA[lo:hi]),
                                 np.ascontiguousarray(wB[lo:hi]),
                                 np.ascontiguousarray(a[lo:hi]),
                                 np.ascontiguousarray(b[lo:hi]))
        values[lo:hi] = v
        regimes[lo:hi] = r

    bounds = list(_chunks(n))
    if threads == 1 or len(bounds) == 1:
        for bo in bounds:
            work(bo)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, bounds))

    out = {name: values[:, i] for i, name in enumerate(COLUMNS)}
    out["regime_code"] = regimes
    return out


def beta_eff_products(products, speeds) -> np.ndarray:
    """beta_eff * omega for arrays of rest-frame products and speeds."""
    p = np.array(products, dtype=np.float64).ravel()
    v = np.array(np.broadcast_to(np.asarray(speeds, dtype=np.float64), p.shape),
                 dtype=np.float64)
    return kernels().beta_eff_products(p, v)


def regime_name(code: int) -> str:
    return REGIME_NAMES[int(code)]


def base_metadata(cfg: RunConfig, extra: dict[str, str] | None = None) -> dict[str, str]:
    meta = {
        "version": __version__,
        "created_utc": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "config_sha256": cfg.sha256(),
        "backend": backend_name(),
    }
    for key, value in cfg.items():
        meta[key] = "" if value is None else repr(value)
    meta.update(extra or {})
    return meta


def _format(value) -> str:
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.17g}"
    return str(value)


def write_csv(report: RunReport, fh) -> None:
    """`#`-prefixed key = value metadata block, then header and data rows."""
    fh.write(f"# relmachine {report.command}\n")
    for key, value in report.metadata.items():
        fh.write(f"# {key} = {value}\n")
    fh.write(",".join(report.columns) + "\n")
    for row in report.rows:
        fh.write(",".join(_format(v) for v in row) + "\n")


def write_json(report: RunReport, fh) -> None:
    payload = {
        "command": report.command,
        "metadata": report.metadata,
        "columns": list(report.columns),
        "rows": [[None if isinstance(v, float) and math.isnan(v) else v
                  for v in row] for row in report.rows],
    }
    json.dump(payload, fh, indent=1)
    fh.write("\n")


def render(report: RunReport, fmt: str) -> str:
    import io
    buf = io.StringIO()
    if fmt == "csv":
        write_csv(report, buf)
    elif fmt == "json":
        write_json(report, buf)
    else:
        raise ConfigError(f"unknown format {fmt!r} (use csv or json)")
    return buf.getvalue()
