"""Sample Sperner states, check the macro/micro decomposition, and show a violation.

    python3 scripts/quantum_demo.py --seeds 10
"""
import argparse
from dataclasses import dataclass

from mems.hypergraph import Hypergraph, k_uniform_complete
from mems.quantum import ghz_state, mems_point, evaluate_signals
from mems.reduction import signals
from mems.verify import quantum_runs


@dataclass(frozen=True)
class DemoConfig:
    seeds: int = 10
    qubits_per_factor: int = 1


def main(cfg: DemoConfig) -> None:
    graphs = {
        "triangle": Hypergraph.from_edges("ABC", ["AB", "AC", "BC"]),
        "3-uniform n=4": k_uniform_complete(4, 3),
        "2-uniform n=4": k_uniform_complete(4, 2),
    }
    print(f"{'class':<16}{'max residual':>14}{'max |signal|':>14}")
    for name, h in graphs.items():
        runs = quantum_runs(h, range(cfg.seeds), cfg.qubits_per_factor)
        print(f"{name:<16}{max(r.residual for r in runs):>14.2e}{max(r.max_signal for r in runs):>14.2e}")

    pt = mems_point(ghz_state(4))
    sig = signals(k_uniform_complete(4, 3))
    print("\nGHZ4 point:", " ".join(f"{lab}={v:.3f}" for lab, v in zip(pt.macro.labels(), pt.values)))
    for text, v in zip(sig.to_text().splitlines(), evaluate_signals(sig, pt)):
        print(f"{v:+.6f}  {text}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=DemoConfig.seeds)
    ap.add_argument("--qubits-per-factor", type=int, default=DemoConfig.qubits_per_factor)
    a = ap.parse_args()
    main(DemoConfig(a.seeds, a.qubits_per_factor))
