"""Reader for the runner's CSV dialect.

Files start with ``# key = value`` metadata lines, then one header row, then
numeric rows. All body values parse as floats.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

__all__ = ["FigureError", "Table", "read_table"]


class FigureError(ValueError):
    """Raised for invalid figure specs or unresolvable data references."""


class Table:
    """One parsed CSV file: metadata, column names, numeric body.

    Parameters
    ----------
    name : str
        Display name used in error messages, normally the file basename.
    meta : dict
        Metadata keys and raw string values from the ``#`` header lines.
    columns : tuple of str
        Column names from the header row.
    data : ndarray
        Body values, shape (n_rows, n_columns), dtype float.
    """

    def __init__(self, name, meta, columns, data):
        self.name = name
        self.meta = dict(meta)
        self.columns = tuple(columns)
        data = np.asarray(data, dtype=float)
        if data.size == 0:
            data = data.reshape(0, len(self.columns))
        if data.ndim != 2 or data.shape[1] != len(self.columns):
            raise FigureError(
                f"body of {name} has shape {data.shape}, "
                f"expected (*, {len(self.columns)})"
            )
        self.data = data

    @property
    def n_rows(self):
        return self.data.shape[0]

    def column(self, name):
        """Return one column as a 1-D array.

        Raises
        ------
        FigureError
            If the column is not present in the header.
        """
        if name not in self.columns:
            available = ", ".join(self.columns)
            raise FigureError(
                f"column '{name}' not found in {self.name} "
                f"(available: {available})"
            )
        return self.data[:, self.columns.index(name)]


def read_table(path):
    """Read a runner CSV file into a Table.

    Metadata lines are ``# key = value`` with the value kept as a raw string;
    the split is on the first `` = `` so values may contain equals signs.
    """
    path = Path(path)
    meta = {}
    body = []
    with open(path, encoding="utf-8", newline="") as fh:
        for line in fh:
            if line.startswith("#"):
                entry = line[1:].strip()
                key, sep, value = entry.partition(" = ")
                if not sep:
                    raise FigureError(
                        f"malformed metadata line in {path.name}: {line.strip()!r}"
                    )
                meta[key] = value
            else:
                body.append(line)
    rows = list(csv.reader(io.StringIO("".join(body))))
    rows = [r for r in rows if r]
    if not rows:
        raise FigureError(f"no header row in {path.name}")
    columns = tuple(rows[0])
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(columns):
            raise FigureError(
                f"row {i} of {path.name} has {len(row)} fields, "
                f"expected {len(columns)}"
            )
    try:
        data = np.array([[float(v) for v in r] for r in rows[1:]], dtype=float)
    except ValueError as exc:
        raise FigureError(f"non-numeric body value in {path.name}: {exc}") from exc
    return Table(path.name, meta, columns, data)
