"""File formats used by the command-line tool.

Series CSV
    UTF-8, header row required. An optional first column named ``t`` holds
    timestamps; every other column is one series.

Coefficient CSV
    First line ``# csr-coefficients {json}`` with the basis metadata, then a
    header ``index,<labels...>`` and one row per basis index. Numbers are
    written with 17 significant digits so they round-trip exactly.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from .basis import BasisSpec
from .errors import ParseError
from .fit import CoefficientSet

__all__ = [
    "atomic_write",
    "read_series_csv",
    "write_series_csv",
    "write_coefficients",
    "read_coefficients",
    "dumps_json",
    "fmt",
    "COEF_MAGIC",
]

COEF_MAGIC = "# csr-coefficients "


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def atomic_write(path: str | os.PathLike, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _parse_rows(text: str, skip_comments: bool = False):
    reader = csv.reader(io.StringIO(text))
    rows = []
    for lineno, row in enumerate(reader, start=1):
        if not row or all(not c.strip() for c in row):
            continue
        if skip_comments and row[0].lstrip().startswith("#"):
            continue
        rows.append((lineno, [c.strip() for c in row]))
    return rows


def _to_float(cell: str, lineno: int, column: str) -> float:
    try:
        return float(cell)
    except ValueError:
        raise ParseError(f"non-numeric cell {cell!r}", line=lineno, column=column) from None


def read_series_csv(path: str | os.PathLike) -> tuple[NDArray[np.float64] | None, list[str], NDArray[np.float64]]:
    """Read a series CSV.

    Returns
    -------
    timestamps :
        The ``t`` column, or ``None`` if there is none.
    labels :
        Series names from the header.
    values :
        Array of shape (n, p).
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not UTF-8: {exc}") from None
    rows = _parse_rows(text)
    if not rows:
        raise ParseError(f"{path} is empty; a header row is required")
    header_line, header = rows[0]
    for name in header:
        try:
            float(name)
        except ValueError:
            continue
        raise ParseError(f"header row required, found numeric cell {name!r}", line=header_line)
    if len(set(header)) != len(header):
        raise ParseError("duplicate column names in header", line=header_line)
    has_t = header[0].lower() == "t"
    data = rows[1:]
    if not data:
        raise ParseError(f"{path} has a header but no data rows")
    values = np.empty((len(data), len(header)))
    for r, (lineno, row) in enumerate(data):
        if len(row) != len(header):
            raise ParseError(f"expected {len(header)} cells, found {len(row)}", line=lineno)
        for c, cell in enumerate(row):
            values[r, c] = _to_float(cell, lineno, header[c])
        bad = ~np.isfinite(values[r])
        if bad.any():
            raise ParseError("non-finite value", line=lineno, column=header[int(np.argmax(bad))])
    if has_t:
        return values[:, 0].copy(), header[1:], values[:, 1:].copy()
    return None, header, values


def write_series_csv(
    path: str | os.PathLike,
    labels: Sequence[str],
    values: NDArray[np.float64],
    t: NDArray[np.float64] | None = None,
) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow((["t"] if t is not None else []) + list(labels))
    for j in range(values.shape[0]):
        row = [fmt(t[j])] if t is not None else []
        w.writerow(row + [fmt(v) for v in values[j]])
    atomic_write(path, buf.getvalue())


def write_coefficients(path: str | os.PathLike, cs: CoefficientSet, meta: dict) -> None:
    meta = dict(meta, basis=cs.spec.family.value, degree=cs.spec.degree, m=cs.m, p=cs.p)
    buf = io.StringIO()
    buf.write(COEF_MAGIC + json.dumps(meta, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index"] + list(cs.labels))
    for r, l in enumerate(cs.spec.indices):
        w.writerow([str(int(l))] + [fmt(v) for v in cs.coeffs[r]])
    atomic_write(path, buf.getvalue())


def read_coefficients(path: str | os.PathLike) -> tuple[dict, CoefficientSet]:
    text = Path(path).read_text(encoding="utf-8")
    first, _, rest = text.partition("\n")
    if not first.startswith(COEF_MAGIC):
        raise ParseError(f"{path} is not a coefficient file (missing {COEF_MAGIC.strip()!r} line)", line=1)
    try:
        meta = json.loads(first[len(COEF_MAGIC):])
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad metadata JSON: {exc.msg}", line=1) from None
    spec = BasisSpec(meta["basis"], meta["degree"])
    rows = [(ln + 1, row) for ln, row in _parse_rows(rest)]
    if not rows:
        raise ParseError("coefficient file has no header", line=2)
    _, header = rows[0]
    labels = header[1:]
    coeffs = np.empty((len(rows) - 1, len(labels)))
    for r, (lineno, row) in enumerate(rows[1:]):
        if len(row) != len(header):
            raise ParseError(f"expected {len(header)} cells, found {len(row)}", line=lineno)
        for c, cell in enumerate(row[1:]):
            coeffs[r, c] = _to_float(cell, lineno, labels[c])
    if coeffs.shape[0] != spec.n_functions:
        raise ParseError(f"{coeffs.shape[0]} coefficient rows for {spec}, expected {spec.n_functions}")
    pre = meta.get("preprocess") or [[0.0, 1.0]] * len(labels)
    cs = CoefficientSet(coeffs, spec, meta.get("grid_id", ""), labels=labels, preprocess=[tuple(x) for x in pre])
    return meta, cs
