"""Tabulate how many signals are sensitive to k-party entanglement.

    python3 scripts/sensitivity_table.py --max-n 7
"""
import argparse

from mems.hypergraph import k_uniform_complete
from mems.partitions import bell_number
from mems.reduction import signals
from mems.structure import count_sensitive


def main(max_n: int, check_up_to: int) -> None:
    print("n  B_n-1  " + " ".join(f"k={k:<4}" for k in range(2, max_n + 1)))
    for n in range(2, max_n + 1):
        row = [count_sensitive(n, k) for k in range(2, n + 1)]
        assert sum(row) == bell_number(n) - 1
        print(f"{n:<3}{bell_number(n) - 1:<7}" + " ".join(f"{c:<6}" for c in row))
    # cross-check against signal counts of k-uniform-complete classes
    for n in range(2, check_up_to + 1):
        counts = [bell_number(n) - 1] + [len(signals(k_uniform_complete(n, k))) for k in range(2, n + 1)]
        diffs = [a - b for a, b in zip(counts, counts[1:])]
        assert diffs == [count_sensitive(n, k) for k in range(2, n + 1)], n
    print(f"signal-count differences agree for n <= {check_up_to}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--check-up-to", type=int, default=5)
    a = ap.parse_args()
    main(a.max_n, a.check_up_to)
