"""Command-line entry point: convert --in DIR --name cora|citeseer|pubmed --out DIR."""

from __future__ import annotations

import argparse
import sys

from .converter import EXPECTED_SHAPES, ConversionError, convert


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="planetoid-convert",
        description="Convert a raw pickled citation dataset to the plain directory layout.",
    )
    p.add_argument("--in", dest="input", required=True, help="directory with the ind.* files")
    p.add_argument("--name", required=True, choices=sorted(EXPECTED_SHAPES))
    p.add_argument("--out", required=True, help="output dataset directory")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = convert(args.input, args.name, args.out)
    except ConversionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print((out / "conversion.log").read_text(), end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())
