"""
utils/trace_export.py
~~~~~~~~~~~~~~~~~~~~~~

Writes a MetricsTrace to CSV or JSON, one row per schedule step.

Columns: step, fidelity, purity, entropy, eig_0..eig_{D-1}, then Px/Py/Pz per
qubit, then the nine correlation entries per qubit pair (row-major).
Both formats share the same 6-significant-digit rendering, so they agree
numerically to the printed precision.
"""

from __future__ import annotations

import csv
import itertools
import json
import logging
from pathlib import Path
from typing import List, Union

from models import TraceFormat
from multiverse import MetricsTrace, StepMetrics

logger = logging.getLogger(__name__)

_AXES = "xyz"


def trace_header(nq: int) -> List[str]:
    columns = ["step", "fidelity", "purity", "entropy"]
    columns += [f"eig_{i}" for i in range(2 ** nq)]
    columns += [f"q{q}_P{axis}" for q in range(1, nq + 1) for axis in _AXES]
    for a, b in itertools.combinations(range(1, nq + 1), 2):
        columns += [f"c{a}_{b}_{i}{j}" for i, j in itertools.product(_AXES, repeat=2)]
    return columns


def _fmt(value: float) -> str:
    value = float(value)
    if abs(value) < 1e-12:
        return "0"
    return f"{value:.6g}"


def _row(record: StepMetrics, nq: int) -> List[str]:
    row = [str(record.step), _fmt(record.fidelity), _fmt(record.purity), _fmt(record.entropy)]
    row += [_fmt(v) for v in record.eigenvalues]
    row += [_fmt(v) for v in record.polarization.reshape(-1)]
    for pair in itertools.combinations(range(1, nq + 1), 2):
        row += [_fmt(v) for v in record.correlation[pair].reshape(-1)]
    return row


def trace_rows(trace: MetricsTrace) -> List[List[str]]:
    return [_row(record, trace.nq) for record in trace.records]


def write_trace(trace: MetricsTrace, path: Union[str, Path], fmt: TraceFormat = TraceFormat.csv) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = trace_header(trace.nq)
    rows = trace_rows(trace)

    if TraceFormat(fmt) is TraceFormat.json:
        payload = {
            "nq": trace.nq,
            "columns": header,
            "rows": [[int(row[0])] + [float(v) for v in row[1:]] for row in rows],
        }
        path.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
    else:
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)

    logger.info(f"wrote {len(rows)} trace rows to {path}")
    return path


def read_trace(path: Union[str, Path]) -> List[List[float]]:
    """Numeric rows of a CSV or JSON trace (header dropped)."""
    path = Path(path)
    if path.suffix == ".json":
        return [[float(v) for v in row] for row in json.loads(path.read_text(encoding="utf-8"))["rows"]]
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        next(reader, None)
        return [[float(v) for v in row] for row in reader]
