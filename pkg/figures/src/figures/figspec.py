"""Figure specifications: panels of series drawn from runner CSV files.

A figure spec names input CSV files, a rows-by-cols panel grid, and for each
panel the series to draw (file, x column, y column, style, label). Specs load
from YAML; file paths are interpreted relative to the spec file's directory.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from pathlib import Path

import yaml

from .csvio import FigureError, read_table

__all__ = [
    "STYLES",
    "FigureSpec",
    "PanelSpec",
    "SeriesSpec",
    "check_inputs",
    "figure_from_dict",
    "figure_to_dict",
    "load_figure_spec",
]

# exact: solid reference curve; trotter: dashed with markers, label carries l;
# line/markers: neutral styles for scans and scalar traces
STYLES = ("exact", "trotter", "line", "markers")


def _require_str(value, what):
    if not isinstance(value, str) or not value:
        raise FigureError(f"{what} must be a non-empty string, got {value!r}")


def _require_opt_str(value, what):
    if value is not None and not isinstance(value, str):
        raise FigureError(f"{what} must be a string or null, got {value!r}")


def _require_bool(value, what):
    if not isinstance(value, bool):
        raise FigureError(f"{what} must be a boolean, got {value!r}")


@dataclass(frozen=True)
class SeriesSpec:
    """One curve: y against x from a named CSV file."""

    file: str
    y: str
    x: str = "t"
    style: str = "line"
    label: str | None = None

    def __post_init__(self):
        _require_str(self.file, "series file")
        _require_str(self.y, "series y column")
        _require_str(self.x, "series x column")
        _require_opt_str(self.label, "series label")
        if self.style not in STYLES:
            raise FigureError(
                f"unknown series style {self.style!r}, expected one of {STYLES}"
            )


@dataclass(frozen=True)
class PanelSpec:
    """One axes cell in the figure grid."""

    series: tuple[SeriesSpec, ...]
    title: str | None = None
    xlabel: str | None = None
    ylabel: str | None = None
    logx: bool = False
    logy: bool = False
    legend: bool = True

    def __post_init__(self):
        object.__setattr__(self, "series", tuple(self.series))
        if not self.series:
            raise FigureError("panel must have at least one series")
        for s in self.series:
            if not isinstance(s, SeriesSpec):
                raise FigureError(f"panel series must be SeriesSpec, got {type(s)}")
        _require_opt_str(self.title, "panel title")
        _require_opt_str(self.xlabel, "panel xlabel")
        _require_opt_str(self.ylabel, "panel ylabel")
        _require_bool(self.logx, "panel logx")
        _require_bool(self.logy, "panel logy")
        _require_bool(self.legend, "panel legend")


@dataclass(frozen=True)
class FigureSpec:
    """A grid of panels rendered to one image file."""

    panels: tuple[PanelSpec, ...]
    rows: int = 1
    cols: int = 1
    output: str = "figure.png"
    title: str | None = None
    width: float = 8.0
    height: float = 5.0

    def __post_init__(self):
        object.__setattr__(self, "panels", tuple(self.panels))
        if not self.panels:
            raise FigureError("figure must have at least one panel")
        for p in self.panels:
            if not isinstance(p, PanelSpec):
                raise FigureError(f"figure panels must be PanelSpec, got {type(p)}")
        for name in ("rows", "cols"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise FigureError(f"{name} must be a positive integer, got {v!r}")
        if len(self.panels) > self.rows * self.cols:
            raise FigureError(
                f"{len(self.panels)} panels do not fit a "
                f"{self.rows}x{self.cols} grid"
            )
        _require_str(self.output, "output")
        if not self.output.endswith(".png"):
            raise FigureError(f"output must end with .png, got {self.output!r}")
        _require_opt_str(self.title, "figure title")
        for name in ("width", "height"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise FigureError(f"{name} must be a number, got {v!r}")
            if not math.isfinite(v) or v <= 0:
                raise FigureError(f"{name} must be positive and finite, got {v!r}")


def _check_keys(d, known, what):
    if not isinstance(d, dict):
        raise FigureError(f"{what} must be a mapping, got {type(d).__name__}")
    unknown = sorted(set(d) - set(known))
    if unknown:
        raise FigureError(f"unknown {what} keys: {unknown}")


def _series_from_dict(d):
    _check_keys(d, ("file", "x", "y", "style", "label"), "series")
    if "file" not in d or "y" not in d:
        raise FigureError("series needs 'file' and 'y' keys")
    return SeriesSpec(
        file=d["file"],
        y=d["y"],
        x=d.get("x", "t"),
        style=d.get("style", "line"),
        label=d.get("label"),
    )


def _panel_from_dict(d):
    _check_keys(
        d,
        ("series", "title", "xlabel", "ylabel", "logx", "logy", "legend"),
        "panel",
    )
    raw = d.get("series")
    if not isinstance(raw, list) or not raw:
        raise FigureError("panel needs a non-empty 'series' list")
    return PanelSpec(
        series=tuple(_series_from_dict(s) for s in raw),
        title=d.get("title"),
        xlabel=d.get("xlabel"),
        ylabel=d.get("ylabel"),
        logx=d.get("logx", False),
        logy=d.get("logy", False),
        legend=d.get("legend", True),
    )


def figure_from_dict(d):
    """Build a FigureSpec from a plain mapping, rejecting unknown keys."""
    _check_keys(
        d,
        ("panels", "rows", "cols", "output", "title", "width", "height"),
        "figure",
    )
    raw = d.get("panels")
    if not isinstance(raw, list) or not raw:
        raise FigureError("figure needs a non-empty 'panels' list")
    kwargs = {}
    for key in ("rows", "cols", "output", "title", "width", "height"):
        if key in d:
            kwargs[key] = d[key]
    return FigureSpec(panels=tuple(_panel_from_dict(p) for p in raw), **kwargs)


def figure_to_dict(spec):
    """Serialize a FigureSpec to a plain mapping, dropping null labels."""
    d = asdict(spec)
    d["panels"] = list(d["panels"])
    for panel in d["panels"]:
        panel["series"] = [
            {k: v for k, v in s.items() if v is not None} for s in panel["series"]
        ]
        for key in ("title", "xlabel", "ylabel"):
            if panel[key] is None:
                del panel[key]
    if d["title"] is None:
        del d["title"]
    return d


def load_figure_spec(path):
    """Load and validate a YAML figure spec file."""
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        try:
            raw = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise FigureError(f"invalid YAML in {path.name}: {exc}") from exc
    return figure_from_dict(raw)


def check_inputs(spec, base_dir):
    """Read every input file once and verify all referenced columns exist.

    Returns a dict mapping the series' file strings to Table objects. Raises
    FigureError naming the offending column or file when a reference does not
    resolve or a file has no data rows.
    """
    base_dir = Path(base_dir)
    tables = {}
    for panel in spec.panels:
        for s in panel.series:
            if s.file not in tables:
                tables[s.file] = read_table(base_dir / s.file)
            table = tables[s.file]
            if table.n_rows == 0:
                raise FigureError(f"no data rows in {table.name}")
            table.column(s.x)
            table.column(s.y)
    return tables
