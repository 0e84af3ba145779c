"""Run every builtin scenario and write its outputs under results/.

Usage: python scripts/run_all_scenarios.py [--out results] [--jobs N]
"""

import argparse
import sys

from rda.cli import main as cli_main
from rda.scenarios import BUILTIN_SCENARIOS


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()
    return cli_main(["run", *BUILTIN_SCENARIOS,
                     "--out", args.out, "--jobs", str(args.jobs)])


if __name__ == "__main__":
    sys.exit(main())
