"""Figure renderer for epidemic trajectory CSV artifacts."""

from .reader import HEADER, SchemaError, read_trajectory
from .render import PlotSpec, render

__version__ = "0.1.0"
