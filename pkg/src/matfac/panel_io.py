"""Long-format CSV serialization of panels and fitted artifacts.

A panel file is UTF-8 CSV with header ``t,i,j,value`` and one row per cell,
ordered t-major.  Values are written with 17 significant digits, which
round-trips float64 exactly, so write-then-read is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DuplicateCellError,
    MissingCellError,
    PanelIoError,
    PanelParseError,
)
from .model import validate_panel

__all__ = ["PanelFileHeader", "read_panel_csv", "write_panel_csv", "write_matrix_csv"]

FORMAT_VERSION = 1
_PANEL_HEADER = ("t", "i", "j", "value")


@dataclass(frozen=True)
class PanelFileHeader:
    """Shape metadata recovered while reading a panel file."""

    format_version: int
    t_len: int
    p1: int
    p2: int
    layout: str = "long"


def _parse_index(field: str, line_no: int) -> int:
    try:
        value = int(field)
    except ValueError:
        raise PanelParseError(
            f"line {line_no}: {field!r} is not an integer index", line=line_no
        ) from None
    if value < 0:
        raise PanelParseError(
            f"line {line_no}: negative index {value}", line=line_no
        )
    return value


def read_panel_csv(path) -> np.ndarray:
    """Read and validate a panel file; dimensions are inferred from indices.

    Every cell of the inferred ``T x p1 x p2`` grid must appear exactly once.
    """
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise PanelIoError(f"cannot read {path}: {exc}") from exc
    if not lines or tuple(lines[0].strip().split(",")) != _PANEL_HEADER:
        raise PanelParseError(
            "first line must be the header 't,i,j,value'", line=1
        )
    body = [(no, line) for no, line in enumerate(lines[1:], start=2) if line.strip()]
    if not body:
        raise PanelParseError("file contains no data rows", line=2)

    n = len(body)
    ts = np.empty(n, dtype=np.int64)
    is_ = np.empty(n, dtype=np.int64)
    js = np.empty(n, dtype=np.int64)
    vals = np.empty(n, dtype=np.float64)
    for pos, (no, line) in enumerate(body):
        parts = line.split(",")
        if len(parts) != 4:
            raise PanelParseError(
                f"line {no}: expected 4 fields, got {len(parts)}", line=no
            )
        ts[pos] = _parse_index(parts[0], no)
        is_[pos] = _parse_index(parts[1], no)
        js[pos] = _parse_index(parts[2], no)
        try:
            vals[pos] = float(parts[3])
        except ValueError:
            raise PanelParseError(
                f"line {no}: {parts[3]!r} is not a decimal real", line=no
            ) from None

    t_len, p1, p2 = int(ts.max()) + 1, int(is_.max()) + 1, int(js.max()) + 1
    lin = (ts * p1 + is_) * p2 + js
    order = np.argsort(lin, kind="stable")
    sorted_lin = lin[order]
    dup = np.nonzero(sorted_lin[1:] == sorted_lin[:-1])[0]
    if dup.size:
        cell = np.unravel_index(int(sorted_lin[dup[0]]), (t_len, p1, p2))
        cell = tuple(int(x) for x in cell)
        raise DuplicateCellError(f"cell {cell} appears more than once", cell=cell)
    present = np.zeros(t_len * p1 * p2, dtype=bool)
    present[lin] = True
    missing = np.nonzero(~present)[0]
    if missing.size:
        cell = tuple(int(x) for x in np.unravel_index(int(missing[0]), (t_len, p1, p2)))
        raise MissingCellError(f"cell {cell} is missing", cell=cell)

    panel = np.empty(t_len * p1 * p2, dtype=np.float64)
    panel[lin] = vals
    return validate_panel(panel.reshape(t_len, p1, p2))


def _write_long(path, arr: np.ndarray, header: tuple[str, str, str, str]) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(",".join(header) + "\n")
            t_len, d1, d2 = arr.shape
            for t in range(t_len):
                rows = [
                    f"{t},{i},{j},{arr[t, i, j]:.17g}"
                    for i in range(d1)
                    for j in range(d2)
                ]
                fh.write("\n".join(rows) + "\n")
    except OSError as exc:
        raise PanelIoError(f"cannot write {path}: {exc}") from exc


def write_panel_csv(panel, path) -> None:
    """Write a panel in long format, t-major row order, 17 significant digits."""
    _write_long(path, validate_panel(panel), _PANEL_HEADER)


def write_factors_csv(fpath, path) -> None:
    """Write a factor path in long format with header ``t,a,b,value``."""
    _write_long(path, validate_panel(fpath), ("t", "a", "b", "value"))


def write_matrix_csv(mat, path) -> None:
    """Write one matrix row-major, first line ``<rows> x <cols>``."""
    mat = np.asarray(mat, dtype=np.float64)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(f"{mat.shape[0]} x {mat.shape[1]}\n")
            for row in mat:
                fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
    except OSError as exc:
        raise PanelIoError(f"cannot write {path}: {exc}") from exc
