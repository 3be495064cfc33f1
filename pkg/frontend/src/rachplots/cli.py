"""Render one figure from a simulator CSV.

Usage: rachplot {per-slot|dp|load} INPUT_CSV OUTPUT_IMAGE [--title TITLE]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import SCHEMAS, FigureSpec, SchemaError, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="rachplot", description=__doc__)
    parser.add_argument("kind", choices=sorted(SCHEMAS))
    parser.add_argument("input_csv", type=Path)
    parser.add_argument("output_image", type=Path)
    parser.add_argument("--title")
    args = parser.parse_args(argv)

    spec = FigureSpec(
        input_csv=args.input_csv,
        kind=args.kind,
        output_path=args.output_image,
        title=args.title,
    )
    try:
        path = render(spec)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
