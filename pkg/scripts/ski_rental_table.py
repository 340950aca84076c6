"""Tabulate optimal ski-rental weights three ways and compare them with brute force.

    python3 scripts/ski_rental_table.py --n-max 8 --y-max 8
"""

import argparse
import sys
import time
from dataclasses import dataclass, fields
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from kawt.equivalence import ski_case_study  # noqa: E402
from oracles import ski_runs_brute_force  # noqa: E402


@dataclass
class Config:
    n_max: int = 8
    y_max: int = 8


def run(cfg):
    header = ["n", "y", "brute", "theta{neq0}", "theta{!neq0}", "theta(runs)", "relational"]
    print(" ".join(f"{h:>12}" for h in header))
    disagree = {"theta{neq0}": 0, "theta(runs)": 0, "relational": 0}
    t = time.perf_counter()
    for n in range(cfg.n_max + 1):
        for y in range(cfg.y_max + 1):
            s = ski_case_study(n, y)
            best = ski_runs_brute_force(n, y)
            row = [n, y, best, s.theta_from_neq0, s.theta_from_not_neq0, s.theta_realizable, s.relational]
            print(" ".join(f"{c!s:>12}" for c in row))
            disagree["theta{neq0}"] += s.theta_from_neq0 != best
            disagree["theta(runs)"] += s.theta_realizable != best
            disagree["relational"] += s.relational != best
    cells = (cfg.n_max + 1) * (cfg.y_max + 1)
    print(f"\n{cells} cells in {time.perf_counter() - t:.2f}s; cells differing from brute force:")
    for k, v in disagree.items():
        print(f"  {k:<12} {v}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(Config):
        ap.add_argument("--" + f.name.replace("_", "-"), type=f.type, default=f.default)
    run(Config(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
