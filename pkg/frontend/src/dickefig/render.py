"""CSV loading, recipe validation and matplotlib figure assembly.

The renderer draws exactly what the CSV contains: one curve per grouping
value, optional panels per a second grouping column, and horizontal dashed
reference lines taken from the CSV's ``ref_*`` columns on sensitivity plots.
Empty numeric cells (infinite sensitivity) parse as NaN, which breaks the
curve at that point.  Rendering uses the object-oriented Agg API with pinned
output metadata, so identical inputs produce identical bytes.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from pathlib import Path

import matplotlib

matplotlib.use("Agg", force=True)
matplotlib.rcParams["svg.hashsalt"] = "dickefig"

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

ROWS_SCHEMA_ID = "dickeprobe-rows-v1"
RECIPE_SCHEMA_ID = "dickefig-recipe-v1"

CSV_COLUMNS = ("schema", "probe", "hamiltonian", "N", "noise", "p",
               "axis_theta", "axis_phi", "fq", "dtheta",
               "ref_snl", "ref_hl", "ref_nlsnl", "ref_nlhl")
NUMERIC_COLUMNS = frozenset(CSV_COLUMNS) - {"schema", "probe", "hamiltonian",
                                            "noise"}
GROUP_COLUMNS = ("probe", "noise", "hamiltonian")
X_COLUMNS = ("N", "p")
Y_COLUMNS = ("fq", "dtheta")
REFERENCE_COLUMNS = {"snl": "ref_snl", "hl": "ref_hl",
                     "nlsnl": "ref_nlsnl", "nlhl": "ref_nlhl"}
REFERENCE_LABELS = {"snl": "SNL", "hl": "HL", "nlsnl": "NL-SNL",
                    "nlhl": "NL-HL"}
IMAGE_FORMATS = ("png", "svg")

_CURVE_COLORS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")
_REFERENCE_COLORS = ("#555555", "#999999", "#3a6ea5", "#a53a3a")


class RecipeError(ValueError):
    """Invalid recipe contents (unknown key, bad column, empty series)."""


class SchemaError(ValueError):
    """Input CSV does not carry the expected row schema."""


@dataclass(frozen=True)
class FigureRecipe:
    """Declarative description of one rendered figure."""

    figure: str
    csv: str
    x: str
    y: str
    curves: str = "probe"
    panels: str | None = None
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    log_y: bool = False
    reference_lines: tuple[str, ...] = ()
    out: str | None = None
    format: str = "png"

    def __post_init__(self):
        if not self.figure:
            raise RecipeError("recipe needs a figure id")
        if self.x not in X_COLUMNS:
            raise RecipeError(f"x must be one of {X_COLUMNS}, got {self.x!r}")
        if self.y not in Y_COLUMNS:
            raise RecipeError(f"y must be one of {Y_COLUMNS}, got {self.y!r}")
        if self.curves not in GROUP_COLUMNS:
            raise RecipeError(f"curves must be one of {GROUP_COLUMNS}, "
                              f"got {self.curves!r}")
        if self.panels is not None and self.panels not in GROUP_COLUMNS:
            raise RecipeError(f"panels must be one of {GROUP_COLUMNS}, "
                              f"got {self.panels!r}")
        if self.panels == self.curves:
            raise RecipeError("panels and curves must differ")
        unknown = sorted(set(self.reference_lines) - set(REFERENCE_COLUMNS))
        if unknown:
            raise RecipeError(f"unknown reference lines: {', '.join(unknown)}")
        if self.reference_lines and self.y != "dtheta":
            raise RecipeError("reference lines belong to sensitivity plots")
        if self.format not in IMAGE_FORMATS:
            raise RecipeError(f"format must be one of {IMAGE_FORMATS}, "
                              f"got {self.format!r}")
        object.__setattr__(self, "reference_lines",
                           tuple(self.reference_lines))

    _KEYS = ("schema", "figure", "csv", "x", "y", "curves", "panels", "title",
             "x_label", "y_label", "log_y", "reference_lines", "out", "format")

    @classmethod
    def from_mapping(cls, data) -> "FigureRecipe":
        if not isinstance(data, dict):
            raise RecipeError("recipe root must be a JSON object")
        unknown = sorted(set(data) - set(cls._KEYS))
        if unknown:
            raise RecipeError(f"unknown recipe keys: {', '.join(unknown)}")
        schema = data.get("schema", RECIPE_SCHEMA_ID)
        if schema != RECIPE_SCHEMA_ID:
            raise RecipeError(f"unsupported recipe schema {schema!r} "
                              f"(expected {RECIPE_SCHEMA_ID})")
        kwargs = {key: value for key, value in data.items() if key != "schema"}
        refs = kwargs.get("reference_lines")
        if refs is not None:
            if not isinstance(refs, (list, tuple)):
                raise RecipeError("reference_lines must be a list")
            kwargs["reference_lines"] = tuple(str(item) for item in refs)
        missing = [key for key in ("figure", "csv", "x", "y")
                   if key not in kwargs]
        if missing:
            raise RecipeError(f"recipe is missing keys: {', '.join(missing)}")
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise RecipeError(str(exc)) from exc

    def to_mapping(self) -> dict:
        return {
            "schema": RECIPE_SCHEMA_ID,
            "figure": self.figure,
            "csv": self.csv,
            "x": self.x,
            "y": self.y,
            "curves": self.curves,
            "panels": self.panels,
            "title": self.title,
            "x_label": self.x_label,
            "y_label": self.y_label,
            "log_y": self.log_y,
            "reference_lines": list(self.reference_lines),
            "out": self.out,
            "format": self.format,
        }

    def output_name(self) -> str:
        return self.out or f"{self.figure}.{self.format}"

    def with_format(self, fmt: str) -> "FigureRecipe":
        return replace(self, format=fmt,
                       out=self.out if self.out else None)


def _parse_cell(column: str, text: str) -> float | str:
    if column not in NUMERIC_COLUMNS:
        return text
    if text == "":
        return math.nan
    try:
        return float(text)
    except ValueError as exc:
        raise SchemaError(f"column {column!r}: non-numeric cell {text!r}") from exc


def read_rows(path: str | Path) -> list[dict]:
    """Load and validate a rows CSV; empty numeric cells become NaN."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{path}: empty file, expected a header row")
        missing = [c for c in CSV_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise SchemaError(f"{path}: schema mismatch, missing columns: "
                              f"{', '.join(missing)}")
        rows = []
        for raw in reader:
            if raw["schema"] != ROWS_SCHEMA_ID:
                raise SchemaError(f"{path}: row schema {raw['schema']!r} "
                                  f"does not match {ROWS_SCHEMA_ID}")
            rows.append({column: _parse_cell(column, raw[column])
                         for column in CSV_COLUMNS})
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def _grouped(rows: list[dict], key: str) -> dict[str, list[dict]]:
    """Group rows by a column, preserving first-appearance order."""
    groups: dict[str, list[dict]] = {}
    for row in rows:
        groups.setdefault(str(row[key]), []).append(row)
    return groups


def _panel_layout(count: int) -> tuple[int, int]:
    if count <= 3:
        return 1, count
    return 2, (count + 1) // 2


def _draw_panel(ax, recipe: FigureRecipe, rows: list[dict],
                panel_title: str) -> None:
    curves = _grouped(rows, recipe.curves)
    for index, (label, points) in enumerate(curves.items()):
        xs = [row[recipe.x] for row in points]
        ys = [row[recipe.y] for row in points]
        if not any(math.isfinite(y) for y in ys):
            raise RecipeError(f"series {label!r} in {recipe.figure} has no "
                              f"drawable points")
        ax.plot(xs, ys, color=_CURVE_COLORS[index % len(_CURVE_COLORS)],
                marker=".", markersize=3.5, linewidth=1.2, label=label)
    for index, name in enumerate(recipe.reference_lines):
        column = REFERENCE_COLUMNS[name]
        values = [row[column] for row in rows if math.isfinite(row[column])]
        if not values:
            continue
        ax.axhline(values[0], linestyle="--", linewidth=0.9,
                   color=_REFERENCE_COLORS[index % len(_REFERENCE_COLORS)],
                   label=REFERENCE_LABELS[name])
    if recipe.log_y:
        ax.set_yscale("log")
    ax.set_xlabel(recipe.x_label or recipe.x)
    ax.set_ylabel(recipe.y_label or recipe.y)
    if panel_title:
        ax.set_title(panel_title, fontsize=9)
    ax.legend(fontsize=7)
    ax.grid(True, linewidth=0.3, alpha=0.5)


def build_figure(recipe: FigureRecipe, rows: list[dict]) -> Figure:
    """Assemble the matplotlib figure for ``recipe`` from parsed rows."""
    if recipe.panels is None:
        panels = {"": rows}
    else:
        panels = _grouped(rows, recipe.panels)
    nrows, ncols = _panel_layout(len(panels))
    fig = Figure(figsize=(4.4 * ncols, 3.4 * nrows), dpi=110)
    FigureCanvasAgg(fig)
    axes = fig.subplots(nrows, ncols, squeeze=False)
    flat = [ax for row in axes for ax in row]
    for ax in flat[len(panels):]:
        ax.set_visible(False)
    for ax, (value, panel_rows) in zip(flat, panels.items()):
        title = f"{recipe.panels}: {value}" if recipe.panels else recipe.title
        _draw_panel(ax, recipe, panel_rows, title)
    if recipe.panels and recipe.title:
        fig.suptitle(recipe.title, fontsize=11)
    fig.tight_layout()
    return fig


def _metadata(fmt: str) -> dict:
    if fmt == "png":
        return {"Software": "dickefig"}
    return {"Date": None}  # strip the volatile SVG timestamp


def render(recipe: FigureRecipe, out_dir: str | Path,
           csv_path: str | Path | None = None) -> Path:
    """Render one recipe to ``out_dir`` and return the image path."""
    rows = read_rows(csv_path if csv_path is not None else recipe.csv)
    fig = build_figure(recipe, rows)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    target = out_dir / recipe.output_name()
    fig.savefig(target, format=recipe.format, metadata=_metadata(recipe.format))
    return target
