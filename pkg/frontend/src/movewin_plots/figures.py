"""Figure rendering from a JSON figure spec.

Spec fields: kind (snapshot-1d | snapshot-2d | convergence |
extension-compare), inputs (list of CSV paths), output (image path), and
optional title, xlabel, ylabel, labels (per input), reference_slopes
(convergence guides), summary (sweep summary JSON for the fitted-slope
annotation).

Rendering is deterministic: fixed figure geometry, no timestamps, and the
PNG writer's software tag suppressed.
"""

import json

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from movewin_plots import schemas  # noqa: E402

KINDS = ("snapshot-1d", "snapshot-2d", "convergence", "extension-compare")

_SAVE_KW = dict(dpi=120, metadata={"Software": None})


class FigureSpec:
    def __init__(self, kind, inputs, output, title=None, xlabel=None,
                 ylabel=None, labels=None, reference_slopes=None,
                 summary=None):
        if kind not in KINDS:
            raise schemas.SchemaError(f"unknown figure kind {kind!r}; "
                                      f"expected one of {KINDS}")
        if not inputs:
            raise schemas.SchemaError("figure spec needs at least one input")
        self.kind = kind
        self.inputs = list(inputs)
        self.output = output
        self.title = title
        self.xlabel = xlabel
        self.ylabel = ylabel
        self.labels = labels or [None] * len(self.inputs)
        self.reference_slopes = reference_slopes or []
        self.summary = summary

    @classmethod
    def from_json(cls, path):
        with open(path) as fh:
            raw = json.load(fh)
        known = {"kind", "inputs", "output", "title", "xlabel", "ylabel",
                 "labels", "reference_slopes", "summary"}
        unknown = set(raw) - known
        if unknown:
            raise schemas.SchemaError(
                f"{path}: unknown figure-spec field {sorted(unknown)[0]!r}")
        missing = {"kind", "inputs", "output"} - set(raw)
        if missing:
            raise schemas.SchemaError(
                f"{path}: figure spec is missing {sorted(missing)[0]!r}")
        return cls(**raw)


def render(spec):
    """Render the spec to its output path; returns the output path."""
    fig = plt.figure(figsize=(6.4, 4.8))
    try:
        ax = fig.add_subplot(111)
        _DISPATCH[spec.kind](spec, ax)
        if spec.title:
            ax.set_title(spec.title)
        if spec.xlabel:
            ax.set_xlabel(spec.xlabel)
        if spec.ylabel:
            ax.set_ylabel(spec.ylabel)
        fig.savefig(spec.output, **_SAVE_KW)
    finally:
        plt.close(fig)
    return spec.output


def _render_snapshot_1d(spec, ax):
    for path, label in zip(spec.inputs, spec.labels):
        cols = schemas.read_snapshot_1d(path)
        ax.plot(cols["x"], cols["|u|"], label=label or path)
    ax.set_xlabel("x")
    ax.set_ylabel("|u|")
    if len(spec.inputs) > 1 or spec.labels[0]:
        ax.legend()


def _render_snapshot_2d(spec, ax):
    x, y, grid = schemas.read_snapshot_2d(spec.inputs[0])
    mesh = ax.pcolormesh(x, y, grid.T, shading="nearest", cmap="viridis")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.figure.colorbar(mesh, ax=ax, label="|u|")


def _render_convergence(spec, ax):
    for path, label in zip(spec.inputs, spec.labels):
        cols = schemas.read_convergence(path)
        ax.loglog(cols["param"], cols["error"], "o-", label=label or path)
        anchor_x, anchor_y = cols["param"][0], cols["error"][0]
        for slope in spec.reference_slopes:
            guide = anchor_y * (cols["param"] / anchor_x) ** slope
            ax.loglog(cols["param"], guide, "--", color="gray",
                      label=f"slope {slope:g}")
    if spec.summary:
        summary = schemas.read_summary(spec.summary)
        ax.text(0.05, 0.05,
                f"fitted slope {summary['slope']:.3f}",
                transform=ax.transAxes)
    ax.set_xlabel("parameter")
    ax.set_ylabel("L2 error")
    ax.legend()


def _render_extension_compare(spec, ax):
    if len(spec.inputs) < 2:
        raise schemas.SchemaError(
            "extension-compare needs two snapshot inputs")
    styles = ["-", "--", ":", "-."]
    for (path, label), style in zip(zip(spec.inputs, spec.labels), styles):
        cols = schemas.read_snapshot_1d(path)
        ax.plot(cols["x"], cols["|u|"], style, label=label or path)
    ax.set_xlabel("x")
    ax.set_ylabel("|u|")
    ax.legend()


_DISPATCH = {
    "snapshot-1d": _render_snapshot_1d,
    "snapshot-2d": _render_snapshot_2d,
    "convergence": _render_convergence,
    "extension-compare": _render_extension_compare,
}
