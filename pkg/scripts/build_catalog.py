#!/usr/bin/env python3
"""Build every named pair into a catalog directory of canonical JSON
entries (pair + verify report, hash-linked).

Usage: python scripts/build_catalog.py [outdir]
"""

import pathlib
import sys

from isopairs.cli import main as cli_main

SPECS = [
    "gl:1,0",
    "gl:1,1",
    "gl:2,1",
    "gl:2,2",
    "osp+:1,1",
    "osp-:1,1",
    "osp+:2,2",
    "osp-:2,2",
    "q:1",
    "q:2",
    "osq:1",
    "osq:2",
    "isoq",
    "magnetic:sl2",
    "magnetic:so3",
    "sym2:so3",
    "flip:gl:1,1",
    "wo:1,1",
]


def main():
    outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "catalog")
    outdir.mkdir(parents=True, exist_ok=True)
    status = 0
    for spec in SPECS:
        name = spec.replace(":", "_").replace(",", "x").replace("+", "p").replace("-", "m")
        out = outdir / f"{name}.json"
        code = cli_main(["make", spec, "-o", str(out)])
        status = max(status, code)
    print(f"catalog written to {outdir}/")
    return status


if __name__ == "__main__":
    sys.exit(main())
