"""Flat-file interchange: record CSVs for benchmark output and a small
matrix/vector CSV format for feeding the command-line tools.

Record CSVs are written with one header row, one row per record, reals at
17 significant digits (which round-trips float64 exactly), and no quoting;
field values therefore must not contain commas or newlines. Matrix files
carry their dimensions in the first line as "rows,cols" followed by one
CSV line per matrix row; vectors are stored as single-column matrices.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import get_type_hints

import numpy as np


def fmt_float(x: float) -> str:
    return f"{float(x):.17g}"


def _format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return fmt_float(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    text = str(value)
    if "," in text or "\n" in text:
        raise ValueError(f"value {text!r} cannot be stored in a plain CSV")
    return text


def emit_csv(rows: list, path, fields: list[str] | None = None) -> None:
    """Write dataclass records as CSV: header plus one line per record.

    `fields` selects and orders columns; by default every declared field is
    written in declaration order. An empty row list produces a header-only
    file (the header then needs `fields` or at least one row's type).
    """
    path = Path(path)
    if fields is None:
        if not rows:
            raise ValueError("cannot infer a header from an empty row list")
        fields = [f.name for f in dataclasses.fields(rows[0])]
    lines = [",".join(fields)]
    for row in rows:
        lines.append(",".join(
            _format_value(getattr(row, name)) for name in fields
        ))
    path.write_text("\n".join(lines) + "\n")


def _parse_value(text: str, typ):
    if typ is float:
        return float(text)
    if typ is int:
        return int(text)
    if typ is bool:
        if text not in ("true", "false"):
            raise ValueError(f"bad boolean {text!r}")
        return text == "true"
    if typ is str:
        return text
    # optional string ("x | None" collapses to this branch)
    if text == "":
        return None
    return text


def parse_csv(path, cls) -> list:
    """Read records written by emit_csv back into dataclass instances.

    Columns missing from the file fall back to the dataclass defaults, so
    a CSV written with a field subset still parses.
    """
    path = Path(path)
    hints = get_type_hints(cls)
    lines = path.read_text().splitlines()
    if not lines:
        raise ValueError(f"{path} is empty")
    header = lines[0].split(",")
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = [h for h in header if h not in known]
    if unknown:
        raise ValueError(f"{path} has unknown columns {unknown}")
    rows = []
    for line in lines[1:]:
        values = line.split(",")
        if len(values) != len(header):
            raise ValueError(f"malformed row in {path}: {line!r}")
        kwargs = {}
        for name, text in zip(header, values):
            typ = hints[name]
            base = typ if typ in (float, int, bool, str) else _optional_base(typ)
            kwargs[name] = _parse_value(text, base)
        rows.append(cls(**kwargs))
    return rows


def _optional_base(typ):
    """Collapse `X | None` annotations to X for parsing purposes."""
    args = getattr(typ, "__args__", ())
    for arg in args:
        if arg is not type(None):
            return arg
    return str


def write_matrix_csv(path, matrix: np.ndarray) -> None:
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    rows, cols = matrix.shape
    lines = [f"{rows},{cols}"]
    for r in range(rows):
        lines.append(",".join(fmt_float(v) for v in matrix[r]))
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix_csv(path) -> np.ndarray:
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise ValueError(f"{path} is empty")
    try:
        rows, cols = (int(v) for v in lines[0].split(","))
    except ValueError:
        raise ValueError(f"{path}: first line must be 'rows,cols'")
    data = [
        [float(v) for v in line.split(",")]
        for line in lines[1 : rows + 1]
    ]
    matrix = np.array(data, dtype=float)
    if matrix.shape != (rows, cols):
        raise ValueError(
            f"{path}: header promises {rows}x{cols}, body is {matrix.shape}"
        )
    return matrix


def write_vector_csv(path, vector: np.ndarray) -> None:
    vector = np.asarray(vector, dtype=float).reshape(-1, 1)
    write_matrix_csv(path, vector)


def read_vector_csv(path) -> np.ndarray:
    matrix = read_matrix_csv(path)
    if 1 not in matrix.shape:
        raise ValueError(f"{path} holds a matrix, not a vector")
    return matrix.reshape(-1)
