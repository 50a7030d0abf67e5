"""Schema-checked reading of trajectory CSV files.

Accepted files have the exact header ``t,s,i,r,d``, at least two data
rows, and finite numeric cells throughout. Anything else is rejected
with the offending file and row named.
"""

from __future__ import annotations

import csv
import math
import os

import numpy as np

HEADER = ("t", "s", "i", "r", "d")


class SchemaError(ValueError):
    """Input file does not match the trajectory CSV schema."""


def read_trajectory(path: str) -> np.ndarray:
    """Parse one trajectory file into an (n, 5) float array.

    Raises:
        SchemaError: On a missing file, wrong header, short file,
            ragged row, or non-numeric cell.
    """
    if not os.path.isfile(path):
        raise SchemaError(f"{path}: no such file")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file") from None
        if tuple(header) != HEADER:
            raise SchemaError(
                f"{path}: header {','.join(header)!r} does not match 't,s,i,r,d'"
            )
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 5:
                raise SchemaError(f"{path}:{lineno}: expected 5 columns, found {len(row)}")
            try:
                values = [float(cell) for cell in row]
            except ValueError:
                raise SchemaError(f"{path}:{lineno}: non-numeric cell") from None
            if not all(math.isfinite(v) for v in values):
                raise SchemaError(f"{path}:{lineno}: non-finite value")
            rows.append(values)
    if len(rows) < 2:
        raise SchemaError(f"{path}: need at least two data rows, found {len(rows)}")
    return np.asarray(rows, dtype=float)
