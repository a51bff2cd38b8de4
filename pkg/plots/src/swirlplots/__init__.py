from .figures import FIGURE_KINDS, FigureSpec, growth_envelope, render, render_all
from .schema import SchemaError, read_table

__version__ = "0.1.0"
__all__ = ["FIGURE_KINDS", "FigureSpec", "SchemaError", "growth_envelope",
           "read_table", "render", "render_all"]
