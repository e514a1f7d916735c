"""Cross-check connectedness verdicts against the Whitehead-move oracle.

    python3 scripts/corpus_crosscheck.py [--random 200] [--seed 0] [--report out.json]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from cechpattern.cli import main

HERE = Path(__file__).resolve().parent.parent


def run(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--dir", default=str(HERE / "corpus"))
    p.add_argument("--random", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report")
    a = p.parse_args(argv)
    args = ["corpus", a.dir, "--random", str(a.random), "--seed", str(a.seed), "--jobs", str(a.jobs)]
    if a.report:
        args += ["--report", a.report]
    return main(args)


if __name__ == "__main__":
    sys.exit(run())
