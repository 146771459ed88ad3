"""Field snapshot format and CSV import/export.

Snapshot format ("MWFIELD1"): a single JSON header line describing the grid
(d, L, N, representation="spectral", count) terminated by a newline, followed
by raw little-endian float64 pairs (re, im) of the coefficients in the
documented DFT storage order (per axis 0, 1, .., N, -N, .., -1; row-major
across axes).  The round trip is bit-exact.

CSV export carries the physical samples for plotting with columns
x[,y], re(u), im(u), |u| in ascending node order.
"""

import csv
import json

import numpy as np

from movewin.physics import InitialData, Potential
from movewin.spectral import Field, make_grid

MAGIC = "MWFIELD1"


def save_field(field, path):
    grid = field.grid
    header = {
        "format": MAGIC,
        "d": grid.d,
        "L": grid.L,
        "N": grid.N,
        "representation": "spectral",
        "count": int(field.coeffs.size),
    }
    with open(path, "wb") as fh:
        fh.write((json.dumps(header, sort_keys=True) + "\n").encode("ascii"))
        pairs = np.empty((field.coeffs.size, 2), dtype="<f8")
        flat = field.coeffs.ravel()
        pairs[:, 0] = flat.real
        pairs[:, 1] = flat.imag
        fh.write(pairs.tobytes())


def load_field(path):
    with open(path, "rb") as fh:
        header = json.loads(fh.readline().decode("ascii"))
        if header.get("format") != MAGIC:
            raise ValueError(f"{path}: not a {MAGIC} snapshot")
        if header.get("representation") != "spectral":
            raise ValueError(f"{path}: unsupported representation "
                             f"{header.get('representation')!r}")
        grid = make_grid(header["d"], header["L"], header["N"])
        count = header["count"]
        if count != grid.size:
            raise ValueError(f"{path}: coefficient count {count} does not "
                             f"match grid size {grid.size}")
        pairs = np.frombuffer(fh.read(count * 16), dtype="<f8").reshape(count, 2)
        coeffs = (pairs[:, 0] + 1j * pairs[:, 1]).reshape(grid.shape)
    return Field.from_coeffs(grid, coeffs)


def field_to_csv(field, path):
    grid = field.grid
    s = field.samples
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if grid.d == 1:
            writer.writerow(["x", "re(u)", "im(u)", "|u|"])
            for x, v in zip(grid.axis_nodes, s):
                writer.writerow([repr(float(x)), repr(float(v.real)),
                                 repr(float(v.imag)), repr(float(abs(v)))])
        else:
            writer.writerow(["x", "y", "re(u)", "im(u)", "|u|"])
            nodes = grid.axis_nodes
            for i, x in enumerate(nodes):
                for j, y in enumerate(nodes):
                    v = s[i, j]
                    writer.writerow([repr(float(x)), repr(float(y)),
                                     repr(float(v.real)), repr(float(v.imag)),
                                     repr(float(abs(v)))])


def _read_csv_columns(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [row for row in reader if row]
    cols = {name.strip(): i for i, name in enumerate(header)}
    data = np.array([[float(cell) for cell in row] for row in rows])
    return cols, data


def _pick(cols, *names):
    for name in names:
        if name in cols:
            return cols[name]
    return None


def load_field_csv(path, grid):
    """Rebuild a Field from an exported samples CSV on a known grid."""
    cols, data = _read_csv_columns(path)
    ix = _pick(cols, "x")
    ire = _pick(cols, "re(u)", "re")
    iim = _pick(cols, "im(u)", "im")
    if ix is None or ire is None:
        raise ValueError(f"{path}: need columns x and re(u)")
    values = data[:, ire] + (1j * data[:, iim] if iim is not None else 0.0)
    if grid.d == 1:
        coords = (data[:, ix],)
    else:
        iy = _pick(cols, "y")
        if iy is None:
            raise ValueError(f"{path}: 2-D grid needs a y column")
        coords = (data[:, ix], data[:, iy])
    samples = _samples_on_grid(coords, values, grid, path)
    return Field.from_samples(grid, samples)


def _samples_on_grid(coords, values, grid, path):
    """Verify tabulated coordinates cover the grid exactly; no interpolation."""
    if values.size != grid.size:
        raise ValueError(f"{path}: {values.size} rows, grid needs {grid.size}")
    nodes = grid.axis_nodes
    tol = 1e-9 * grid.spacing
    idx = []
    for c in coords:
        j = np.rint((c - nodes[0]) / grid.spacing).astype(int)
        if (j < 0).any() or (j >= grid.M).any() or \
                np.abs(nodes[np.clip(j, 0, grid.M - 1)] - c).max() > tol:
            raise ValueError(
                f"{path}: tabulated coordinates do not match the target grid "
                f"(d={grid.d}, L={grid.L}, N={grid.N}); interpolation is "
                "not performed")
        idx.append(j)
    samples = np.zeros(grid.shape, dtype=np.complex128)
    seen = np.zeros(grid.shape, dtype=bool)
    samples[tuple(idx)] = values
    seen[tuple(idx)] = True
    if not seen.all():
        raise ValueError(f"{path}: tabulated rows do not cover every grid node")
    return samples


def tabulated_initial(path, grid, id=None):
    """Wrap a tabulated CSV as initial data bound to one exact grid."""
    field = load_field_csv(path, grid)
    return InitialData(id or f"csv:{path}", grid.d, np.inf,
                       _grid_locked_fn(field, grid, path))


def tabulated_potential(path, grid, id=None):
    """Wrap a tabulated CSV as a potential bound to one exact grid."""
    field = load_field_csv(path, grid)
    if np.abs(field.samples.imag).max() > 0:
        raise ValueError(f"{path}: potential values must be real")
    fn = _grid_locked_fn(field, grid, path, real=True)
    return Potential(id or f"csv:{path}", grid.d, grid.L, fn)


def _grid_locked_fn(field, grid, path, real=False):
    """Evaluator that only answers at the exact node set of `grid`."""
    def fn(*coords):
        mesh = grid.meshgrid()
        ok = len(coords) == grid.d and all(
            np.shape(c) == grid.shape
            and np.allclose(c, m, rtol=0.0, atol=1e-9 * grid.spacing)
            for c, m in zip(coords, mesh))
        if not ok:
            raise ValueError(
                f"{path}: tabulated data is bound to grid (d={grid.d}, "
                f"L={grid.L}, N={grid.N}) and cannot be evaluated elsewhere")
        vals = field.samples
        return vals.real if real else vals
    return fn
