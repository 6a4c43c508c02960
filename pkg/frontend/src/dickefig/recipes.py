"""Packaged figure recipes for the standard benchmark sweeps.

Each recipe is a plain mapping in the ``dickefig-recipe-v1`` schema; the
``csv`` entry names the sweep file the companion benchmark CLI writes for
the preset of the same name.  ``load_recipe`` accepts either one of these
names or a path to a recipe JSON on disk.
"""

from __future__ import annotations

import json
from pathlib import Path

from .render import FigureRecipe, RecipeError

_QFI_LABEL = "quantum Fisher information"
_SENS_LABEL = "phase sensitivity"
_P_LABEL = "noise strength p"

PACKAGED: dict[str, dict] = {
    "fig1": {
        "figure": "fig1",
        "csv": "fig1.csv",
        "x": "N",
        "y": "fq",
        "curves": "probe",
        "title": "Noiseless QFI by probe family",
        "x_label": "number of qubits N",
        "y_label": _QFI_LABEL,
    },
    "fig2": {
        "figure": "fig2",
        "csv": "fig2.csv",
        "x": "p",
        "y": "fq",
        "curves": "probe",
        "panels": "noise",
        "title": "QFI under local and global noise, linear encoding",
        "x_label": _P_LABEL,
        "y_label": _QFI_LABEL,
    },
    "fig3": {
        "figure": "fig3",
        "csv": "fig3.csv",
        "x": "p",
        "y": "dtheta",
        "curves": "probe",
        "panels": "noise",
        "title": "Phase sensitivity under noise, linear encoding",
        "x_label": _P_LABEL,
        "y_label": _SENS_LABEL,
        "reference_lines": ["snl", "hl"],
    },
    "fig4": {
        "figure": "fig4",
        "csv": "fig4.csv",
        "x": "p",
        "y": "dtheta",
        "curves": "noise",
        "title": "Near-optimal two-body probe against each channel",
        "x_label": _P_LABEL,
        "y_label": _SENS_LABEL,
        "reference_lines": ["snl", "hl", "nlsnl", "nlhl"],
    },
    "fig5": {
        "figure": "fig5",
        "csv": "fig5.csv",
        "x": "p",
        "y": "dtheta",
        "curves": "probe",
        "title": "Depolarized sensitivity, quadratic encoding",
        "x_label": _P_LABEL,
        "y_label": _SENS_LABEL,
        "reference_lines": ["snl", "hl", "nlsnl", "nlhl"],
    },
    "fig6": {
        "figure": "fig6",
        "csv": "fig6.csv",
        "x": "p",
        "y": "fq",
        "curves": "probe",
        "panels": "hamiltonian",
        "title": "Dephasing across two-body encodings",
        "x_label": _P_LABEL,
        "y_label": _QFI_LABEL,
    },
    "fig7": {
        "figure": "fig7",
        "csv": "fig7.csv",
        "x": "p",
        "y": "dtheta",
        "curves": "probe",
        "panels": "hamiltonian",
        "title": "Dephased sensitivity across two-body encodings",
        "x_label": _P_LABEL,
        "y_label": _SENS_LABEL,
        "reference_lines": ["nlsnl", "nlhl"],
    },
}


def packaged_names() -> tuple[str, ...]:
    return tuple(PACKAGED)


def load_recipe(source: str) -> FigureRecipe:
    """Resolve a packaged recipe name or a recipe JSON file path."""
    if source in PACKAGED:
        return FigureRecipe.from_mapping(PACKAGED[source])
    path = Path(source)
    if not path.exists():
        raise RecipeError(f"no packaged recipe or file named {source!r} "
                          f"(packaged: {', '.join(PACKAGED)})")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise RecipeError(f"{path}: invalid JSON: {exc}") from exc
    return FigureRecipe.from_mapping(data)
