"""Tests for figure spec parsing and validation."""

import re
from pathlib import Path

import pytest
import yaml

from figures.csvio import FigureError
from figures.figspec import (
    FigureSpec,
    PanelSpec,
    SeriesSpec,
    check_inputs,
    figure_from_dict,
    figure_to_dict,
    load_figure_spec,
)

PKG_ROOT = Path(__file__).resolve().parents[1]
FIXTURE_DIR = PKG_ROOT / "fixtures"
SPEC_PATHS = tuple(sorted((PKG_ROOT / "specs").glob("*.yaml")))


def minimal():
    return {"panels": [{"series": [{"file": "a.csv", "y": "v", "x": "u"}]}]}


class TestShippedSpecs:
    @pytest.mark.parametrize("path", SPEC_PATHS, ids=lambda p: p.stem)
    def test_loads_and_output_matches_stem(self, path):
        spec = load_figure_spec(path)
        assert spec.output == path.stem + ".png"

    @pytest.mark.parametrize("path", SPEC_PATHS, ids=lambda p: p.stem)
    def test_round_trips_through_dict(self, path):
        spec = load_figure_spec(path)
        assert figure_from_dict(figure_to_dict(spec)) == spec

    @pytest.mark.parametrize("path", SPEC_PATHS, ids=lambda p: p.stem)
    def test_all_referenced_columns_resolve(self, path):
        spec = load_figure_spec(path)
        tables = check_inputs(spec, path.parent)
        assert tables
        for table in tables.values():
            assert table.n_rows > 0

    def test_suite_covers_thirteen_specs(self):
        assert len(SPEC_PATHS) == 13

    def test_trotter_series_labels_carry_step_count(self):
        for path in SPEC_PATHS:
            spec = load_figure_spec(path)
            for panel in spec.panels:
                for s in panel.series:
                    if s.style == "trotter":
                        assert re.fullmatch(r"l = \d+", s.label), (path.stem, s)

    def test_to_dict_is_yaml_safe(self):
        spec = load_figure_spec(SPEC_PATHS[0])
        text = yaml.safe_dump(figure_to_dict(spec))
        assert figure_from_dict(yaml.safe_load(text)) == spec


class TestValidation:
    def test_defaults(self):
        spec = figure_from_dict(minimal())
        assert spec.rows == 1 and spec.cols == 1
        assert spec.output == "figure.png"
        assert spec.title is None
        assert (spec.width, spec.height) == (8.0, 5.0)
        panel = spec.panels[0]
        assert panel.legend is True
        assert panel.logx is False and panel.logy is False
        series = panel.series[0]
        assert series.style == "line"
        assert series.label is None

    def test_series_x_defaults_to_t(self):
        spec = figure_from_dict(
            {"panels": [{"series": [{"file": "a.csv", "y": "v"}]}]}
        )
        assert spec.panels[0].series[0].x == "t"

    def test_unknown_figure_key_rejected(self):
        d = minimal()
        d["color"] = "red"
        with pytest.raises(FigureError, match="unknown figure keys: \\['color'\\]"):
            figure_from_dict(d)

    def test_unknown_panel_key_rejected(self):
        d = minimal()
        d["panels"][0]["grid"] = True
        with pytest.raises(FigureError, match="unknown panel keys"):
            figure_from_dict(d)

    def test_unknown_series_key_rejected(self):
        d = minimal()
        d["panels"][0]["series"][0]["color"] = "red"
        with pytest.raises(FigureError, match="unknown series keys"):
            figure_from_dict(d)

    def test_non_mapping_root_rejected(self):
        with pytest.raises(FigureError, match="figure must be a mapping"):
            figure_from_dict([1, 2])

    def test_missing_panels_rejected(self):
        with pytest.raises(FigureError, match="non-empty 'panels' list"):
            figure_from_dict({})

    def test_empty_panels_rejected(self):
        with pytest.raises(FigureError, match="non-empty 'panels' list"):
            figure_from_dict({"panels": []})

    def test_empty_series_rejected(self):
        with pytest.raises(FigureError, match="non-empty 'series' list"):
            figure_from_dict({"panels": [{"series": []}]})

    def test_series_without_y_rejected(self):
        d = {"panels": [{"series": [{"file": "a.csv"}]}]}
        with pytest.raises(FigureError, match="needs 'file' and 'y'"):
            figure_from_dict(d)

    def test_series_without_file_rejected(self):
        d = {"panels": [{"series": [{"y": "v"}]}]}
        with pytest.raises(FigureError, match="needs 'file' and 'y'"):
            figure_from_dict(d)

    def test_unknown_style_rejected(self):
        d = minimal()
        d["panels"][0]["series"][0]["style"] = "dotted"
        with pytest.raises(FigureError, match="unknown series style 'dotted'"):
            figure_from_dict(d)

    def test_grid_too_small_rejected(self):
        d = minimal()
        d["panels"] = d["panels"] * 2
        with pytest.raises(FigureError, match="2 panels do not fit a 1x1 grid"):
            figure_from_dict(d)

    @pytest.mark.parametrize("rows", [0, -1, 2.0, True])
    def test_bad_rows_rejected(self, rows):
        d = minimal()
        d["rows"] = rows
        with pytest.raises(FigureError, match="rows must be a positive integer"):
            figure_from_dict(d)

    def test_non_png_output_rejected(self):
        d = minimal()
        d["output"] = "figure.svg"
        with pytest.raises(FigureError, match="output must end with .png"):
            figure_from_dict(d)

    @pytest.mark.parametrize("width", [0, -2.0, float("inf"), float("nan")])
    def test_bad_width_rejected(self, width):
        d = minimal()
        d["width"] = width
        with pytest.raises(FigureError, match="width must be"):
            figure_from_dict(d)

    def test_non_bool_logx_rejected(self):
        d = minimal()
        d["panels"][0]["logx"] = "yes"
        with pytest.raises(FigureError, match="panel logx must be a boolean"):
            figure_from_dict(d)

    def test_non_string_label_rejected(self):
        d = minimal()
        d["panels"][0]["series"][0]["label"] = 4
        with pytest.raises(FigureError, match="series label must be a string"):
            figure_from_dict(d)

    def test_direct_construction_validates_too(self):
        with pytest.raises(FigureError, match="at least one series"):
            PanelSpec(series=())
        with pytest.raises(FigureError, match="at least one panel"):
            FigureSpec(panels=())
        with pytest.raises(FigureError, match="unknown series style"):
            SeriesSpec(file="a.csv", y="v", style="bad")


class TestLoadErrors:
    def test_invalid_yaml_rejected(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("panels: [{{{\n")
        with pytest.raises(FigureError, match="invalid YAML in bad.yaml"):
            load_figure_spec(path)

    def test_missing_file_raises_oserror(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_figure_spec(tmp_path / "absent.yaml")


class TestCheckInputs:
    def test_missing_column_names_column_and_file(self):
        spec = figure_from_dict(
            {
                "panels": [
                    {
                        "series": [
                            {
                                "file": "fig1_upper__scan.csv",
                                "x": "l",
                                "y": "bogus",
                            }
                        ]
                    }
                ]
            }
        )
        with pytest.raises(
            FigureError,
            match=r"column 'bogus' not found in fig1_upper__scan.csv",
        ):
            check_inputs(spec, FIXTURE_DIR)

    def test_empty_table_rejected(self, tmp_path):
        (tmp_path / "empty.csv").write_text("t,v\n")
        spec = figure_from_dict(
            {"panels": [{"series": [{"file": "empty.csv", "y": "v"}]}]}
        )
        with pytest.raises(FigureError, match="no data rows in empty.csv"):
            check_inputs(spec, tmp_path)

    def test_missing_input_file_raises_oserror(self, tmp_path):
        spec = figure_from_dict(minimal())
        with pytest.raises(FileNotFoundError):
            check_inputs(spec, tmp_path)

    def test_each_file_read_once(self):
        path = next(p for p in SPEC_PATHS if p.stem == "fig1_upper")
        spec = load_figure_spec(path)
        tables = check_inputs(spec, path.parent)
        # three series, one shared input file, a single table entry
        assert set(tables) == {"../fixtures/fig1_upper__scan.csv"}
