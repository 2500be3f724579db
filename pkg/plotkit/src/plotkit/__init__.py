"""Figure rendering for simulation result directories."""

from .figures import FIGURE_KINDS, render_figure
from .io import BatchData, PlotDataError, load_batch

__all__ = [
    "BatchData",
    "FIGURE_KINDS",
    "PlotDataError",
    "load_batch",
    "render_figure",
]

__version__ = "0.1.0"
