"""Deterministic figure rendering for runner CSV output."""

from .csvio import FigureError, Table, read_table
from .figspec import (
    STYLES,
    FigureSpec,
    PanelSpec,
    SeriesSpec,
    check_inputs,
    figure_from_dict,
    figure_to_dict,
    load_figure_spec,
)
from .render import DPI, STYLE_KWARGS, draw, render

__all__ = [
    "DPI",
    "STYLES",
    "STYLE_KWARGS",
    "FigureError",
    "FigureSpec",
    "PanelSpec",
    "SeriesSpec",
    "Table",
    "check_inputs",
    "draw",
    "figure_from_dict",
    "figure_to_dict",
    "load_figure_spec",
    "read_table",
    "render",
]
