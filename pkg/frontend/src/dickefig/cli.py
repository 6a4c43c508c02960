"""Command line interface: render recipes, list and export them."""

from __future__ import annotations

import argparse
import json
import sys

from .recipes import load_recipe, packaged_names, PACKAGED
from .render import RecipeError, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dickefig",
        description="Render benchmark sweep CSVs into figures.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_render = sub.add_parser(
        "render", help="render one recipe to an image file")
    p_render.add_argument("--recipe", required=True,
                          help="packaged recipe name or recipe JSON path")
    p_render.add_argument("--csv", default=None,
                          help="override the CSV path named in the recipe")
    p_render.add_argument("--out", default=".",
                          help="output directory (default: current)")
    p_render.add_argument("--format", choices=("png", "svg"), default=None,
                          help="override the recipe's image format")

    sub.add_parser("recipes", help="list packaged recipe names")

    p_dump = sub.add_parser(
        "dump-recipe", help="print a packaged recipe as JSON")
    p_dump.add_argument("name", help="packaged recipe name")

    return parser


def _run_render(args) -> int:
    recipe = load_recipe(args.recipe)
    if args.format is not None and args.format != recipe.format:
        recipe = recipe.with_format(args.format)
    target = render(recipe, args.out, csv_path=args.csv)
    print(target)
    return 0


def _run_recipes() -> int:
    for name in packaged_names():
        print(name)
    return 0


def _run_dump_recipe(args) -> int:
    if args.name not in PACKAGED:
        raise RecipeError(f"no packaged recipe named {args.name!r} "
                          f"(packaged: {', '.join(packaged_names())})")
    recipe = load_recipe(args.name)
    print(json.dumps(recipe.to_mapping(), indent=2))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "render":
            return _run_render(args)
        if args.command == "recipes":
            return _run_recipes()
        return _run_dump_recipe(args)
    except (RecipeError, SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
