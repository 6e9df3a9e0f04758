"""Sweeps that check the structural results over many hypergraphs.

Parallelism is capped by the ``MEMS_THREADS`` environment variable
(default 1).  Work is mapped in order, so results are identical whatever
the worker count.
"""
from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, TypeVar

from .hypergraph import Hypergraph, enumerate_antichains, random_antichain
from .quantum import FactorLayout, build_sperner_state, evaluate_signals, mems_point, verify_decomposition
from .reduction import rank_by_formula, rank_by_matrix, signals
from .structure import recover_hypergraph, verify_lattice_correspondence

T = TypeVar("T")
R = TypeVar("R")


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("MEMS_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
    workers = worker_count()
    if workers == 1 or len(items) < 64:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.checked > 0

    def summary(self) -> str:
        return f"{self.name}: checked={self.checked} passed={self.checked - len(self.failures)} failed={len(self.failures)}"


def sample_antichains(n: int, samples: int, seed: int) -> list[Hypergraph]:
    rng = random.Random(seed)
    return [random_antichain(n, rng) for _ in range(samples)]


def hypergraphs_for(n: int, exhaustive: bool, samples: int, seed: int) -> list[Hypergraph]:
    if exhaustive:
        return list(enumerate_antichains(n))
    return sample_antichains(n, samples, seed)


def _rank_formula_case(h: Hypergraph) -> str | None:
    a, b = rank_by_matrix(h), rank_by_formula(h)
    return None if a == b else f"{h}: matrix={a} formula={b}"


def rank_formula_sweep(graphs: Sequence[Hypergraph], name: str = "rank formula") -> SweepResult:
    res = SweepResult(name, len(graphs))
    res.failures = [f for f in pmap(_rank_formula_case, graphs) if f]
    return res


def _roundtrip_case(h: Hypergraph) -> str | None:
    g = recover_hypergraph(signals(h))
    return None if g == h else f"{h} recovered as {g}"


def roundtrip_sweep(graphs: Sequence[Hypergraph], name: str = "recovery round-trip") -> SweepResult:
    res = SweepResult(name, len(graphs))
    res.failures = [f for f in pmap(_roundtrip_case, graphs) if f]
    return res


def _lattice_case(pair: tuple[Hypergraph, Hypergraph]) -> str | None:
    a, b = pair
    rep = verify_lattice_correspondence(a, b)
    if rep.ok:
        return None
    return f"{a} / {b}: join={'pass' if rep.join_ok else 'FAIL'} meet={'pass' if rep.meet_ok else 'FAIL'}"


def lattice_sweep(pairs: Sequence[tuple[Hypergraph, Hypergraph]], name: str = "lattice correspondence") -> SweepResult:
    res = SweepResult(name, len(pairs))
    res.failures = [f for f in pmap(_lattice_case, pairs) if f]
    return res


def sample_pairs(n: int, samples: int, seed: int) -> list[tuple[Hypergraph, Hypergraph]]:
    rng = random.Random(seed)
    return [(random_antichain(n, rng), random_antichain(n, rng)) for _ in range(samples)]


@dataclass(frozen=True)
class QuantumRun:
    seed: int
    residual: float
    max_signal: float


def quantum_runs(h: Hypergraph, seeds: Iterable[int], qubits_per_factor: int = 1) -> list[QuantumRun]:
    layout = FactorLayout.uniform(h, qubits_per_factor)
    sig = signals(h)
    out = []
    for s in seeds:
        residual = verify_decomposition(h, layout, s)
        vals = evaluate_signals(sig, mems_point(build_sperner_state(h, layout, s)))
        out.append(QuantumRun(s, residual, max((abs(v) for v in vals), default=0.0)))
    return out
