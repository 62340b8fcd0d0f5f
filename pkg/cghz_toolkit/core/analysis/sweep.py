from __future__ import annotations

"""Parameter sweeps over (m, N, α) and their tabular output."""

import csv
import io
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, TextIO, Tuple

from cghz_toolkit.core.errors import InvalidParameterError, ResourceCapError
from cghz_toolkit.core.models import SWEEP_COLUMNS, CghzParams, SweepRow, SweepSpec
from cghz_toolkit.core.protocol.ecp import analytic_success, run_ecp
from cghz_toolkit.core.utils import format_float, parse_float

logger = logging.getLogger(__name__)

__all__ = [
    "FORMATS",
    "run_point",
    "run_sweep",
    "write_rows",
    "read_rows",
    "rows_to_text",
    "ScanResult",
    "optimal_alpha_scan",
]

FORMATS = ("csv", "json")
_INT_COLUMNS = {"m", "N"}


def run_point(
    m: int, n: int, alpha: float, *, timing: bool = True, max_mn: Optional[int] = None
) -> SweepRow:
    """Simulate one grid point; a point over the size cap becomes a skipped row."""
    params = CghzParams.from_alpha(m, n, alpha)
    p_analytic = analytic_success(params)
    start = time.perf_counter()
    try:
        report = run_ecp(params, max_mn=max_mn)
    except ResourceCapError as exc:
        logger.warning("Skipping m=%d N=%d alpha=%s: %s", m, n, alpha, exc)
        return SweepRow(m, n, alpha, p_analytic, None, None, None, 0.0, skipped_reason=str(exc))
    elapsed = (time.perf_counter() - start) * 1000.0 if timing else 0.0
    return SweepRow(
        m=m,
        n=n,
        alpha=alpha,
        p_analytic=p_analytic,
        p_simulated=report.success_probability,
        abs_error=abs(p_analytic - report.success_probability),
        min_fidelity=report.min_fidelity,
        runtime_ms=elapsed,
    )


def _run_point_args(args: Tuple[int, int, float, bool, Optional[int]]) -> SweepRow:
    m, n, alpha, timing, max_mn = args
    return run_point(m, n, alpha, timing=timing, max_mn=max_mn)


def run_sweep(
    spec: SweepSpec, *, workers: int = 1, timing: bool = True, max_mn: Optional[int] = None
) -> List[SweepRow]:
    """One row per grid point, ordered by (m, N, α) whatever the completion order."""
    if workers < 1:
        raise InvalidParameterError(f"workers must be ≥ 1, got {workers}")
    jobs = [(m, n, alpha, timing, max_mn) for m, n, alpha in spec.points()]
    logger.info("Sweep: %d points on %d worker(s)", len(jobs), workers)

    if workers == 1 or len(jobs) < 2:
        rows = [_run_point_args(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_point_args, jobs))

    rows.sort(key=lambda r: (r.m, r.n, r.alpha))
    skipped = sum(1 for r in rows if r.skipped)
    if skipped:
        logger.warning("Sweep finished with %d skipped point(s)", skipped)
    return rows


# ---------------------------------------------------------------------------
# Serialisation
# ---------------------------------------------------------------------------

def write_rows(
    rows: Iterable[SweepRow], stream: TextIO, fmt: str = "csv", columns: Sequence[str] = SWEEP_COLUMNS
) -> None:
    """Write *rows* as CSV (17 significant digits, LF endings) or a JSON array.

    The CSV header is fixed; JSON records of skipped rows also carry
    ``skipped_reason``.
    """
    if fmt not in FORMATS:
        raise InvalidParameterError(f"Unknown output format {fmt!r}; expected one of {FORMATS}")
    rows = list(rows)
    records = [{c: r.as_dict()[c] for c in columns} for r in rows]

    if fmt == "json":
        for row, record in zip(rows, records):
            if row.skipped:
                record["skipped_reason"] = row.skipped_reason or "skipped"
        json.dump(records, stream, indent=2)
        stream.write("\n")
        return

    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        writer.writerow(
            [str(v) if c in _INT_COLUMNS else format_float(v) for c, v in record.items()]
        )


def rows_to_text(rows: Iterable[SweepRow], fmt: str = "csv", columns: Sequence[str] = SWEEP_COLUMNS) -> str:
    buffer = io.StringIO()
    write_rows(rows, buffer, fmt, columns)
    return buffer.getvalue()


def _row_from_record(record: dict) -> SweepRow:
    return SweepRow(
        m=int(record["m"]),
        n=int(record["N"]),
        alpha=float(record["alpha"]),
        p_analytic=float(record["p_analytic"]),
        p_simulated=record.get("p_simulated"),
        abs_error=record.get("abs_error"),
        min_fidelity=record.get("min_fidelity"),
        runtime_ms=float(record.get("runtime_ms") or 0.0),
        skipped_reason=record.get("skipped_reason"),
    )


def read_rows(stream: TextIO, fmt: str = "csv") -> List[SweepRow]:
    """Parse rows written by :func:`write_rows` with the full column set."""
    if fmt not in FORMATS:
        raise InvalidParameterError(f"Unknown input format {fmt!r}; expected one of {FORMATS}")
    if fmt == "json":
        return [_row_from_record(record) for record in json.load(stream)]

    rows = []
    for record in csv.DictReader(stream):
        parsed = {
            key: (int(value) if key in _INT_COLUMNS else parse_float(value))
            for key, value in record.items()
        }
        rows.append(_row_from_record(parsed))
    return rows


# ---------------------------------------------------------------------------
# Optimal-alpha scan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScanResult:
    m: int
    n: int
    alphas: Tuple[float, ...]
    probabilities: Tuple[float, ...]

    @property
    def best_alpha(self) -> float:
        best = max(range(len(self.alphas)), key=lambda i: self.probabilities[i])
        return self.alphas[best]

    @property
    def best_probability(self) -> float:
        return max(self.probabilities)


def optimal_alpha_scan(
    m: int, n: int, count: int = 99, *, simulate: bool = True, max_mn: Optional[int] = None
) -> ScanResult:
    """Success probability over ``count`` evenly spaced alphas plus 1/√2.

    The maximum sits at the balanced point α = β = 1/√2, where it equals
    ``2^(1−(m−1)N)/4``.
    """
    spec = SweepSpec.evenly_spaced([m], [n], count)
    alphas = tuple(sorted(set(spec.alpha_grid) | {1.0 / math.sqrt(2.0)}))
    probabilities = []
    for alpha in alphas:
        params = CghzParams.from_alpha(m, n, alpha)
        if simulate:
            probabilities.append(run_ecp(params, max_mn=max_mn).success_probability)
        else:
            probabilities.append(analytic_success(params))
    return ScanResult(m, n, alphas, tuple(probabilities))
