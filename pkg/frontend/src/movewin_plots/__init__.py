"""Paper-style figures from movewin CSV/JSON outputs."""

from movewin_plots.figures import FigureSpec, render
from movewin_plots.schemas import SchemaError

__version__ = "0.1.0"

__all__ = ["FigureSpec", "render", "SchemaError", "__version__"]
