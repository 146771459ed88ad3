"""plots: render figures from a JSON figure spec."""

import sys

import click

from movewin_plots.figures import FigureSpec, render
from movewin_plots.schemas import SchemaError


@click.group()
def main():
    """Figure rendering for solver CSV/JSON outputs."""


@main.command("render")
@click.argument("spec_path", type=click.Path(exists=True))
def cmd_render(spec_path):
    """Render the figure described by SPEC_PATH (a figure-spec JSON)."""
    try:
        spec = FigureSpec.from_json(spec_path)
        out = render(spec)
    except SchemaError as exc:
        click.echo(f"schema violation: {exc}", err=True)
        sys.exit(1)
    click.echo(out)


if __name__ == "__main__":
    main()
