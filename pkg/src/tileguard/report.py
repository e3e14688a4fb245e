"""Inspection report serialization and plot-data emission.

A report is a list of per-(tile, method) rows plus the configuration
that produced them.  JSON output uses sorted keys and serializes an
infinite PSNR as the string "inf" so files stay standard JSON; CSV
output quotes per RFC 4180.  Reports are byte-identical across runs on
the same inputs except for the elapsed_seconds values.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Any

from .metrics import InspectionRecord

__all__ = [
    "REPORT_COLUMNS",
    "record_to_row",
    "write_json_report",
    "write_csv_report",
    "load_json_report",
    "emit_plot_data",
]

REPORT_COLUMNS = (
    "tile",
    "method",
    "reference_count",
    "test_count",
    "delta_d",
    "verdict",
    "mse",
    "psnr_db",
    "elapsed_seconds",
    "elementary_ops",
)

# one plot-data file per metric, mirroring the per-method bar charts
PLOT_FILES = {"psnr.csv": "psnr_db", "mse.csv": "mse", "time.csv": "elapsed_seconds"}


def record_to_row(tile: str, record: InspectionRecord) -> dict[str, Any]:
    """Flatten a record into a report row keyed by REPORT_COLUMNS."""
    return {
        "tile": tile,
        "method": record.method.value,
        "reference_count": record.reference_count,
        "test_count": record.test_count,
        "delta_d": record.delta_d,
        "verdict": record.verdict.value,
        "mse": record.mse,
        "psnr_db": record.psnr_db,
        "elapsed_seconds": record.elapsed_seconds,
        "elementary_ops": record.elementary_ops,
    }


def _jsonable(row: dict[str, Any]) -> dict[str, Any]:
    out = dict(row)
    if out.get("psnr_db") == math.inf:
        out["psnr_db"] = "inf"
    return out


def write_json_report(rows: list[dict[str, Any]], meta: dict[str, Any], path: Path | None) -> str:
    """Serialize rows plus config metadata; write to ``path`` if given.

    Returns the JSON text.  Key order is sorted, so output bytes are a
    pure function of the content.
    """
    document = dict(meta)
    document["records"] = [_jsonable(row) for row in rows]
    text = json.dumps(document, indent=2, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def load_json_report(path: str | Path) -> dict[str, Any]:
    """Read a JSON report back, restoring infinite PSNR values."""
    document = json.loads(Path(path).read_text(encoding="utf-8"))
    for row in document.get("records", []):
        if row.get("psnr_db") == "inf":
            row["psnr_db"] = math.inf
    return document


def write_csv_report(rows: list[dict[str, Any]], path: Path | None) -> str:
    """Serialize rows as CSV in REPORT_COLUMNS order."""
    import io as _io

    buf = _io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(REPORT_COLUMNS)
    for row in rows:
        writer.writerow([_csv_value(row[col]) for col in REPORT_COLUMNS])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8", newline="")
    return text


def _csv_value(value: Any) -> Any:
    if isinstance(value, float):
        return "inf" if value == math.inf else repr(value)
    return value


def emit_plot_data(rows: list[dict[str, Any]], out_dir: str | Path) -> list[Path]:
    """Write psnr.csv, mse.csv and time.csv pivoted as tile x method.

    One data row per tile, one value column per method, values at six
    significant digits.  Raises ValueError on an empty record set
    before creating anything.
    """
    if not rows:
        raise ValueError("cannot emit plot data from an empty record set")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    tiles = sorted({row["tile"] for row in rows})
    methods = sorted({row["method"] for row in rows})
    by_key = {(row["tile"], row["method"]): row for row in rows}

    written = []
    for filename, field in PLOT_FILES.items():
        path = out_dir / filename
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["tile"] + methods)
            for tile in tiles:
                cells: list[Any] = [tile]
                for method in methods:
                    row = by_key.get((tile, method))
                    cells.append("" if row is None else _sig6(row[field]))
                writer.writerow(cells)
        written.append(path)
    return written


def _sig6(value: float) -> str:
    if value == math.inf:
        return "inf"
    return format(float(value), ".6g")
