"""Figure rendering for qmzi CSV sweeps."""

from .render import FigureSpec, SchemaError, load_table, render, rows_above_bound

__all__ = ["FigureSpec", "SchemaError", "load_table", "render", "rows_above_bound"]

__version__ = "0.1.0"
