#!/usr/bin/env python3
"""Run the acceptance suite and print the per-criterion table.

Usage: python scripts/run_acceptance.py [seed]
"""

import sys

from isopairs.acceptance import format_table, run_all


def main():
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 20260808
    results = run_all(seed=seed)
    print(format_table(results))
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
