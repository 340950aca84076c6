"""Run every property suite at full sample size and print a one-line verdict per report.

    python3 scripts/run_axiom_suites.py --seed 0 --verbose
"""

import argparse
import time
from dataclasses import dataclass

from kawt.guarded import Alphabet, check_tau_iso
from kawt.psg import build_cart, build_gu, build_str, build_weak, check_psg_axioms, check_theorem1
from kawt.relational import check_lifted_laws
from kawt.semiring import MUTANT, SEMIRINGS, check_semiring_axioms


@dataclass
class Config:
    seed: int = 0
    semiring_samples: int = 1000
    lifted_samples: int = 500
    lifted_sizes: tuple = (1, 2, 3)
    thm1_samples: int = 300
    thm2_samples: int = 200
    thm2_bound: int = 3
    verbose: bool = False


def suites(cfg):
    alphabet = Alphabet(("b",), ("p",))
    for S in SEMIRINGS.values():
        yield True, lambda S=S: check_semiring_axioms(S, cfg.semiring_samples, cfg.seed)
    yield False, lambda: check_semiring_axioms(MUTANT, cfg.semiring_samples, cfg.seed)
    for S in SEMIRINGS.values():
        for n in cfg.lifted_sizes:
            yield True, lambda S=S, n=n: check_lifted_laws(n, S, cfg.lifted_samples, cfg.seed)
    yield False, lambda: check_lifted_laws(2, MUTANT, cfg.lifted_samples, cfg.seed)
    for P in (build_cart(3), build_gu(alphabet, 2), build_str("a", 3)):
        yield True, lambda P=P: check_psg_axioms(P)
    for P in (build_weak(), build_str("a", 3, restrict=False)):
        yield False, lambda P=P: check_psg_axioms(P)
    for P in (build_cart(3), build_gu(alphabet, 2)):
        for S in (SEMIRINGS["tropical"], SEMIRINGS["lukasiewicz"]):
            yield True, lambda P=P, S=S: check_theorem1(P, S, cfg.thm1_samples, cfg.seed)
    yield False, lambda: check_theorem1(build_weak(), SEMIRINGS["tropical"], cfg.thm1_samples, cfg.seed)
    yield True, lambda: check_tau_iso(alphabet, cfg.thm2_bound, cfg.thm2_samples, cfg.seed)


def run(cfg):
    surprises = 0
    for expect_ok, job in suites(cfg):
        t = time.perf_counter()
        rep = job()
        elapsed = time.perf_counter() - t
        params = " ".join(f"{k}={v}" for k, v in rep.params.items())
        verdict = "pass" if rep.ok else f"fail {rep.failed_laws()}"
        flag = "" if rep.ok == expect_ok else "  <-- unexpected"
        surprises += rep.ok != expect_ok
        print(f"{rep.name:<9} {params:<60} {elapsed:6.2f}s  {verdict}{flag}")
        if cfg.verbose and not rep.ok:
            print(rep.render(max_witnesses=2))
    print(f"\n{surprises} unexpected outcome(s)")
    return surprises


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()
    raise SystemExit(1 if run(Config(seed=args.seed, verbose=args.verbose)) else 0)


if __name__ == "__main__":
    main()
