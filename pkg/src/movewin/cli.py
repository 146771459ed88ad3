"""Command-line entry point.

Every configuration key mirrors a CLI flag; a JSON config file may supply any
subset of them and explicit flags win over file values.  Outputs land under
``<out>/<run-id>/`` where the run id is a short hash of the configuration
(append a timestamp only with --timestamped-id).

Exit codes: 0 success, 2 invalid configuration, 3 numerical abort (NaN/Inf),
4 partial convergence table.
"""

import json
import os
import sys

import click
import numpy as np

from movewin import harness
from movewin.config import SimConfig
from movewin.fieldio import field_to_csv, save_field
from movewin.physics import FreeGaussian
from movewin.spectral import l2_distance, l2_norm
from movewin.stepper import NumericsError, evolve
from movewin.window import boundary_indicator

EXIT_CONFIG = 2
EXIT_NUMERICS = 3
EXIT_PARTIAL = 4


def _config_options(fn):
    opts = [
        click.option("--config", "config_path", type=click.Path(exists=True),
                     default=None, help="JSON config file; flags override it."),
        click.option("--dim", type=int, default=None, help="Dimension (1 or 2)."),
        click.option("--half-width", type=float, default=None,
                     help="Initial window half-width L0."),
        click.option("--modes", type=int, default=None,
                     help="Initial mode cutoff N0 (2N0+1 nodes per axis)."),
        click.option("--tau", type=float, default=None, help="Time step."),
        click.option("--tmax", type=float, default=None, help="Final time T."),
        click.option("--potential", default=None,
                     help="Potential id (zero, tunnel-bump, lattice)."),
        click.option("--initial", default=None,
                     help="Initial-data id (free-gaussian, tunnel-I, ...)."),
        click.option("--plateau-fraction", type=float, default=None,
                     help="Cutoff plateau fraction a (default 0.5)."),
        click.option("--extend-eps", type=float, default=None,
                     help="Boundary threshold for window extension."),
        click.option("--no-extend", is_flag=True, default=False,
                     help="Disable dynamic window extension."),
        click.option("--dealias/--no-dealias", "dealias", default=None,
                     help="Exact (padded) potential products vs collocation."),
        click.option("--snapshot-every", type=int, default=None,
                     help="Steps between snapshots (0: first/last only)."),
        click.option("--out", "out_dir", default=None, help="Output directory."),
        click.option("--timestamped-id", is_flag=True, default=False,
                     help="Append a timestamp to the run id."),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _build_config(config_path, dim, half_width, modes, tau, tmax, potential,
                  initial, plateau_fraction, extend_eps, no_extend, dealias,
                  snapshot_every, out_dir):
    cfg = SimConfig()
    if config_path:
        with open(config_path) as fh:
            cfg = SimConfig.from_dict(json.load(fh))
    overrides = {}
    for key, val in [("d", dim), ("L0", half_width), ("N0", modes),
                     ("tau", tau), ("T", tmax), ("potential_id", potential),
                     ("initial_id", initial), ("plateau_a", plateau_fraction),
                     ("dealias", dealias), ("snapshot_every", snapshot_every),
                     ("out_dir", out_dir)]:
        if val is not None:
            overrides[key] = val
    if extend_eps is not None:
        overrides["window_eps"] = extend_eps
    if no_extend:
        overrides["window_enabled"] = False
    return cfg.with_overrides(**overrides)


def _run_dir(cfg, timestamped):
    run_id = cfg.run_id()
    if timestamped:
        import time
        run_id += time.strftime("-%Y%m%d%H%M%S")
    path = os.path.join(cfg.out_dir, run_id)
    os.makedirs(os.path.join(path, "snapshots"), exist_ok=True)
    return path


class _RunLogger:
    """Observer writing progress rows and snapshots during evolve()."""

    def __init__(self, cfg, run_dir, n_steps):
        self.cfg = cfg
        self.dir = run_dir
        self.n_steps = n_steps
        self.progress = open(os.path.join(run_dir, "progress.csv"), "w")
        self.progress.write("step,t,norm,boundary_indicator\n")
        self.snapshot_steps = {0, n_steps}
        if cfg.snapshot_every > 0:
            self.snapshot_steps.update(
                range(0, n_steps + 1, cfg.snapshot_every))

    def __call__(self, step, state, indicator):
        snap = step in self.snapshot_steps
        if snap or indicator is not None:
            if indicator is None:
                indicator = boundary_indicator(state.field)
            self.progress.write(f"{step},{state.t!r},{l2_norm(state.field)!r},"
                                f"{indicator!r}\n")
        if snap:
            stem = os.path.join(self.dir, "snapshots", f"step_{step:08d}")
            field_to_csv(state.field, stem + ".csv")
            save_field(state.field, stem + ".field")

    def close(self):
        self.progress.close()


def _write_extensions(events, path):
    with open(path, "w") as fh:
        fh.write("t,old_L,new_L,old_N,new_N,indicator\n")
        for e in events:
            fh.write(f"{e.t!r},{e.old_L!r},{e.new_L!r},{e.old_N},{e.new_N},"
                     f"{e.indicator!r}\n")


@click.group()
def main():
    """Moving-window spectral solver for the Schrodinger equation."""


@main.command("run")
@_config_options
def cmd_run(**kw):
    """Run a single simulation and write snapshots and logs."""
    timestamped = kw.pop("timestamped_id")
    try:
        cfg = _build_config(**kw).validated()
    except (ValueError, KeyError) as exc:
        click.echo(f"invalid configuration: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    run_dir = _run_dir(cfg, timestamped)
    with open(os.path.join(run_dir, "config.json"), "w") as fh:
        fh.write(cfg.to_json(indent=2) + "\n")
    n_steps = round(cfg.T / cfg.tau)
    logger = _RunLogger(cfg, run_dir, n_steps)
    try:
        result = evolve(cfg, observers=[logger])
    except NumericsError as exc:
        logger.close()
        click.echo(f"numerical abort: {exc}", err=True)
        sys.exit(EXIT_NUMERICS)
    logger.close()
    _write_extensions(result.extensions, os.path.join(run_dir, "extensions.csv"))
    summary = {
        "config": cfg.content_hash(),
        "final_t": result.state.t,
        "final_norm": l2_norm(result.state.field),
        "final_L": result.state.grid.L,
        "final_N": result.state.grid.N,
        "extensions": len(result.extensions),
    }
    with open(os.path.join(run_dir, "summary.json"), "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    click.echo(run_dir)


def _reference_for(cfg, ref_modes, ref_tau, ref_half_width, analytic):
    if analytic:
        if cfg.potential_id != "zero" or cfg.initial_id != "free-gaussian":
            raise ValueError("--analytic-reference requires the free Gaussian "
                             "setup (potential zero, initial free-gaussian)")
        return harness.analytic_reference(FreeGaussian(), "free-gaussian")
    defaults = harness.DEFAULT_REFERENCE[cfg.d]
    N = ref_modes or defaults["N"]
    tau = ref_tau or defaults["tau"]
    L = ref_half_width or harness.window_for_modes(N)
    ref_cfg = cfg.with_overrides(N0=int(N), L0=float(L), tau=float(tau))
    return harness.make_reference(ref_cfg)


def _sweep_common(fn):
    opts = [
        click.option("--ref-modes", type=int, default=None,
                     help="Reference mode cutoff (desk-scale default)."),
        click.option("--ref-tau", type=float, default=None,
                     help="Reference time step (desk-scale default)."),
        click.option("--ref-half-width", type=float, default=None,
                     help="Reference half-width (default sqrt(ref modes))."),
        click.option("--analytic-reference", is_flag=True, default=False,
                     help="Compare against the analytic free solution."),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _finish_sweep(table, cfg, name):
    out = os.path.join(cfg.out_dir, f"{name}-{cfg.content_hash()}")
    os.makedirs(out, exist_ok=True)
    table.to_csv(os.path.join(out, "table.csv"))
    table.to_json(os.path.join(out, "summary.json"))
    click.echo(out)
    if table.slope is not None:
        click.echo(f"fitted slope: {table.slope:.4f} "
                   f"(residual {table.residual:.2e})")
    if table.partial:
        click.echo("table is partial (a sweep run aborted)", err=True)
        sys.exit(EXIT_PARTIAL)


@main.command("conv-space")
@_config_options
@_sweep_common
@click.option("--sweep-modes", required=True,
              help="Comma-separated mode cutoffs, e.g. 128,256,512.")
def cmd_conv_space(sweep_modes, ref_modes, ref_tau, ref_half_width,
                   analytic_reference, **kw):
    """Spatial convergence sweep with the coupling L = sqrt(N)."""
    kw.pop("timestamped_id")
    try:
        cfg = _build_config(**kw).validated()
        Ns = [int(s) for s in sweep_modes.split(",")]
        reference = _reference_for(cfg, ref_modes, ref_tau, ref_half_width,
                                   analytic_reference)
        table = harness.sweep_space(cfg, Ns, reference)
    except (ValueError, KeyError) as exc:
        click.echo(f"invalid sweep: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    _finish_sweep(table, cfg, "conv-space")


@main.command("conv-time")
@_config_options
@_sweep_common
@click.option("--sweep-taus", required=True,
              help="Comma-separated time steps, e.g. 0.0625,0.03125.")
@click.option("--coupling", type=click.Choice(["fixed-N", "inverse-tau"]),
              default="fixed-N", show_default=True,
              help="fixed-N: gamma>=2 regime; inverse-tau: N=1/tau CFL regime.")
def cmd_conv_time(sweep_taus, coupling, ref_modes, ref_tau, ref_half_width,
                  analytic_reference, **kw):
    """Temporal convergence sweep."""
    kw.pop("timestamped_id")
    try:
        cfg = _build_config(**kw).validated()
        taus = [float(s) for s in sweep_taus.split(",")]
        if analytic_reference:
            reference = _reference_for(cfg, None, None, None, True)
        else:
            defaults = harness.DEFAULT_REFERENCE[cfg.d]
            tau_ref = ref_tau or defaults["tau"]
            if coupling == "inverse-tau":
                N = ref_modes or defaults["N"]
                L = ref_half_width or harness.window_for_modes(N)
            else:
                N, L = cfg.N0, cfg.L0  # share the sweep grid
            ref_cfg = cfg.with_overrides(N0=int(N), L0=float(L),
                                         tau=float(tau_ref))
            reference = harness.make_reference(ref_cfg)
        table = harness.sweep_time(cfg, taus, coupling, reference)
    except (ValueError, KeyError) as exc:
        click.echo(f"invalid sweep: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    _finish_sweep(table, cfg, "conv-time")


@main.command("extend-demo")
@_config_options
@click.option("--large-half-width", type=float, default=None,
              help="Half-width of the no-extension control run "
                   "(default 2*L0).")
def cmd_extend_demo(large_half_width, **kw):
    """Small window with extension vs large window without, plus distance."""
    timestamped = kw.pop("timestamped_id")
    try:
        cfg = _build_config(**kw).validated()
    except (ValueError, KeyError) as exc:
        click.echo(f"invalid configuration: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    L_big = large_half_width or 2.0 * cfg.L0
    ratio = L_big / cfg.L0
    N_big = int(round(cfg.N0 * ratio))
    small_cfg = cfg.with_overrides(window_enabled=True)
    big_cfg = cfg.with_overrides(L0=L_big, N0=N_big, window_enabled=False)
    run_dir = _run_dir(cfg, timestamped)
    try:
        small = evolve(small_cfg)
        big = evolve(big_cfg)
    except NumericsError as exc:
        click.echo(f"numerical abort: {exc}", err=True)
        sys.exit(EXIT_NUMERICS)
    for name, res in [("small", small), ("big", big)]:
        stem = os.path.join(run_dir, "snapshots", f"extend_demo_{name}")
        field_to_csv(res.state.field, stem + ".csv")
        save_field(res.state.field, stem + ".field")
    _write_extensions(small.extensions,
                      os.path.join(run_dir, "extensions.csv"))
    dist = l2_distance(small.state.field, big.state.field)
    rel = dist / l2_norm(big.state.field)
    summary = {
        "config": cfg.content_hash(),
        "distance_l2": dist,
        "distance_rel": rel,
        "small_final_L": small.state.grid.L,
        "big_L": L_big,
        "extensions": [[e.t, e.old_L, e.new_L, e.old_N, e.new_N, e.indicator]
                       for e in small.extensions],
    }
    with open(os.path.join(run_dir, "summary.json"), "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    click.echo(run_dir)
    click.echo(f"relative L2 distance: {rel:.3e}")


if __name__ == "__main__":
    main()
