"""Figure rendering for HCSS CSV outputs.

Consumes the CSV contract of the `hcss` command line (header row, '.'
decimal separator, UTF-8, LF endings) and renders publication-style vector
figures.  Plotting only: every number on a figure exists in the input CSV.
"""

from .errors import SchemaMismatch
from .render import FIGURE_KINDS, render_figure

__all__ = ["FIGURE_KINDS", "SchemaMismatch", "render_figure"]
