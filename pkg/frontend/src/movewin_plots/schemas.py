"""CSV/JSON input schemas and validation.

The renderer reads only the documented solver outputs:

* snapshot CSV, 1-D: columns ``x,re(u),im(u),|u|``
* snapshot CSV, 2-D: columns ``x,y,re(u),im(u),|u|``
* convergence table CSV: columns ``param,L,N,tau,error``
* sweep summary JSON: keys ``slope``, ``residual``, ``rows``

A schema violation raises SchemaError naming the offending column.
"""

import csv
import json

import numpy as np

SNAPSHOT_1D = ["x", "re(u)", "im(u)", "|u|"]
SNAPSHOT_2D = ["x", "y", "re(u)", "im(u)", "|u|"]
CONVERGENCE = ["param", "L", "N", "tau", "error"]


class SchemaError(ValueError):
    pass


def _read_csv(path, expected):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        for i, name in enumerate(expected):
            if i >= len(header) or header[i] != name:
                found = header[i] if i < len(header) else "<missing>"
                raise SchemaError(
                    f"{path}: column {i + 1} must be {name!r}, found "
                    f"{found!r}")
        extra = header[len(expected):]
        if extra:
            raise SchemaError(f"{path}: unexpected column {extra[0]!r}")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                rows.append([float(cell) for cell in row])
            except ValueError as exc:
                raise SchemaError(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    data = np.asarray(rows)
    if data.shape[1] != len(expected):
        raise SchemaError(f"{path}: rows do not match the header width")
    return {name: data[:, i] for i, name in enumerate(expected)}


def read_snapshot_1d(path):
    return _read_csv(path, SNAPSHOT_1D)


def read_snapshot_2d(path):
    cols = _read_csv(path, SNAPSHOT_2D)
    x = np.unique(cols["x"])
    y = np.unique(cols["y"])
    if x.size * y.size != cols["x"].size:
        raise SchemaError(f"{path}: rows do not form a full tensor grid")
    order = np.lexsort((cols["y"], cols["x"]))
    grid = cols["|u|"][order].reshape(x.size, y.size)
    return x, y, grid


def read_convergence(path):
    return _read_csv(path, CONVERGENCE)


def read_summary(path):
    with open(path) as fh:
        summary = json.load(fh)
    for key in ("slope", "rows"):
        if key not in summary:
            raise SchemaError(f"{path}: summary is missing {key!r}")
    return summary
