"""Figure rendering for the slot-level random access simulator's CSV outputs."""

__version__ = "0.1.0"

from .figures import FigureSpec, SchemaError, compute_series, load_table, render

__all__ = ["FigureSpec", "SchemaError", "compute_series", "load_table", "render"]
