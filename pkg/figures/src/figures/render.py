"""Deterministic matplotlib rendering of figure specs.

Rendering is a pure function of the spec and the CSV bytes: the rc state is
rebuilt from matplotlib's compiled-in defaults on every call, the Agg backend
rasterizes at a fixed dpi, and the PNG writer's software stamp is stripped, so
re-rendering the same spec over the same files reproduces the image byte for
byte.
"""

from __future__ import annotations

import os
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  backend must be set first

from .figspec import check_inputs

__all__ = ["DPI", "STYLE_KWARGS", "draw", "render"]

DPI = 144

# exact is the black reference curve; trotter series pick cycle colors and
# thin their markers so dense time grids stay readable
STYLE_KWARGS = {
    "exact": {"linestyle": "-", "marker": "", "color": "black", "linewidth": 1.6},
    "trotter": {"linestyle": "--", "marker": "o", "markersize": 2.6, "linewidth": 1.0},
    "line": {"linestyle": "-", "marker": "", "linewidth": 1.4},
    "markers": {"linestyle": "", "marker": "o", "markersize": 3.0},
}

_RC_PINS = {
    "figure.dpi": DPI,
    "savefig.dpi": DPI,
    "font.size": 9.0,
    "axes.titlesize": 10.0,
    "legend.fontsize": 8.0,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "grid.linewidth": 0.5,
}


def _rc():
    # start from compiled-in defaults so ambient rc files cannot leak in
    rc = dict(matplotlib.rcParamsDefault)
    rc.pop("backend", None)
    rc.update(_RC_PINS)
    return rc


def _draw_panel(ax, panel, tables):
    for s in panel.series:
        table = tables[s.file]
        x = table.column(s.x)
        y = table.column(s.y)
        kwargs = dict(STYLE_KWARGS[s.style])
        if s.style == "trotter":
            kwargs["markevery"] = max(1, len(x) // 32)
        ax.plot(x, y, label=s.label if s.label is not None else s.y, **kwargs)
    if panel.logx:
        ax.set_xscale("log")
    if panel.logy:
        ax.set_yscale("log")
    if panel.title:
        ax.set_title(panel.title)
    if panel.xlabel:
        ax.set_xlabel(panel.xlabel)
    if panel.ylabel:
        ax.set_ylabel(panel.ylabel)
    if panel.legend:
        ax.legend(loc="best")


def draw(spec, base_dir):
    """Build the matplotlib Figure for a spec without saving it.

    Input files are resolved relative to base_dir. All column references are
    checked up front; a bad reference raises FigureError naming the column.
    """
    tables = check_inputs(spec, base_dir)
    with matplotlib.rc_context(_rc()):
        fig, axes = plt.subplots(
            spec.rows,
            spec.cols,
            figsize=(spec.width, spec.height),
            squeeze=False,
        )
        flat = axes.ravel()
        for panel, ax in zip(spec.panels, flat):
            _draw_panel(ax, panel, tables)
        for ax in flat[len(spec.panels):]:
            ax.set_axis_off()
        if spec.title:
            fig.suptitle(spec.title)
            fig.tight_layout(rect=(0, 0, 1, 0.95))
        else:
            fig.tight_layout()
    return fig


def render(spec, base_dir, out=None):
    """Render a spec to a PNG file and return the written path.

    The output path defaults to the spec's own output field, interpreted
    relative to the current directory; out overrides it. Parent directories
    are created as needed.
    """
    out = Path(out) if out is not None else Path(spec.output)
    fig = draw(spec, base_dir)
    try:
        os.makedirs(out.parent, exist_ok=True)
        # rc context also pins save-time parameters such as savefig.bbox
        with matplotlib.rc_context(_rc()):
            fig.savefig(out, dpi=DPI, metadata={"Software": None})
    finally:
        plt.close(fig)
    return out
