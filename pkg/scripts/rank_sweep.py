"""Compare the inclusion-exclusion rank with the exact matrix rank.

    python3 scripts/rank_sweep.py --max-n 5 --samples-n6 200 --seed 1

Set MEMS_THREADS to spread the work over processes.
"""
import argparse
import time
from dataclasses import dataclass

from mems.hypergraph import enumerate_antichains
from mems.verify import sample_antichains, rank_formula_sweep, worker_count


@dataclass(frozen=True)
class SweepConfig:
    max_n: int = 5
    samples_n6: int = 200
    seed: int = 1


def main(cfg: SweepConfig) -> int:
    bad = 0
    for n in range(1, cfg.max_n + 1):
        t0 = time.perf_counter()
        res = rank_formula_sweep(list(enumerate_antichains(n)), f"n={n} exhaustive")
        print(f"{res.summary()}  {time.perf_counter() - t0:.1f}s")
        bad += len(res.failures)
    if cfg.samples_n6:
        t0 = time.perf_counter()
        res = rank_formula_sweep(sample_antichains(6, cfg.samples_n6, cfg.seed), f"n=6 seed={cfg.seed}")
        print(f"{res.summary()}  {time.perf_counter() - t0:.1f}s")
        bad += len(res.failures)
    print(f"workers={worker_count()} failures={bad}")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=SweepConfig.max_n)
    ap.add_argument("--samples-n6", type=int, default=SweepConfig.samples_n6)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    a = ap.parse_args()
    raise SystemExit(main(SweepConfig(a.max_n, a.samples_n6, a.seed)))
