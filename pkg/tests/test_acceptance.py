"""Acceptance criteria, one test per criterion, each at its stated tolerance and time budget.

Every test records a PASS/FAIL line that is printed in the terminal summary.
"""
import itertools
import random
import time

import pytest

from mems.fixtures import check_codimensions, check_equalities, check_triangle, compare_table, load
from mems.hypergraph import Hypergraph, empty_hypergraph, enumerate_antichains, k_uniform_complete
from mems.linalg import RationalMatrix, rank, same_span, span_intersection
from mems.partitions import bell_number, enumerate_nontrivial_partitions
from mems.quantum import evaluate_signals, ghz_state, mems_point
from mems.reduction import signals
from mems.structure import count_sensitive, subspace_basis, subspace_sum, witness_pairing
from mems.verify import lattice_sweep, quantum_runs, roundtrip_sweep, sample_antichains, sample_pairs, rank_formula_sweep

pytestmark = pytest.mark.acceptance


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def test_01_table_one(record):
    with Timer() as t:
        c = compare_table(load("table1"))
    ok = c.ok and t.elapsed < 1.0
    record(1, "reduction matrix of the 3-uniform n=4 graph", ok, f"{c.detail} ({t.elapsed:.2f}s, budget 1s)")
    assert ok, c.detail


def test_02_table_two(record):
    with Timer() as t:
        c = compare_table(load("table2"))
    ok = c.ok and t.elapsed < 1.0
    record(2, "reduction matrix of the 2-uniform n=4 graph", ok, f"{c.detail} ({t.elapsed:.2f}s, budget 1s)")
    assert ok, c.detail


def test_03_codimensions(record):
    with Timer() as t:
        c = check_codimensions(load("equalities"))
        counts = (len(signals(k_uniform_complete(4, 3))), len(signals(k_uniform_complete(4, 2))))
    ok = c.ok and counts == (4, 8) and t.elapsed < 1.0
    record(3, "signal counts 4 and 8", ok, f"{c.detail} ({t.elapsed:.2f}s, budget 1s)")
    assert ok


def test_04_equality_spans(record):
    with Timer() as t:
        eqs = load("equalities")
        checks = [check_equalities(eqs, "k3n4"), check_equalities(eqs, "k2n4")]
    ok = all(c.ok for c in checks) and t.elapsed < 1.0
    record(4, "reference equalities span the signal space", ok, "; ".join(c.detail for c in checks) + f" ({t.elapsed:.2f}s)")
    assert ok


def test_05_triangle_signal(record):
    c = check_triangle(load("triangle"))
    rows = signals(Hypergraph.from_edges("ABC", ["AB", "AC", "BC"])).rows()
    # canonical order AB|C, AC|B, A|BC, A|B|C; proportional to (2,-1,-1,-1) over (A|B|C, A|BC, B|AC, C|AB)
    want = {"A|B|C": 2, "A|BC": -1, "AC|B": -1, "AB|C": -1}
    order = ["AB|C", "AC|B", "A|BC", "A|B|C"]
    scaled = [-2 * x for x in rows[0]] if len(rows) == 1 else None
    ok = c.ok and len(rows) == 1 and scaled == [2 * want[k] for k in order]
    record(5, "triangle signal", ok, f"{c.detail}; proportional to 2,-1,-1,-1")
    assert ok


def test_06_rank_formula_sweep(record):
    with Timer() as t:
        results = [rank_formula_sweep(list(enumerate_antichains(n)), f"n={n} exhaustive") for n in range(1, 6)]
        results.append(rank_formula_sweep(sample_antichains(6, 200, seed=20240601), "n=6 200 samples"))
    ok = all(r.ok for r in results) and t.elapsed < 300
    total = sum(r.checked for r in results)
    failed = sum(len(r.failures) for r in results)
    record(6, "rank formula equals matrix rank", ok, f"{total} hypergraphs, {failed} failures ({t.elapsed:.1f}s, budget 300s)")
    assert ok, [f for r in results for f in r.failures[:5]]


def test_07_recovery_roundtrip(record):
    with Timer() as t:
        results = [roundtrip_sweep(list(enumerate_antichains(n)), f"n={n}") for n in range(2, 5)]
        results.append(roundtrip_sweep(sample_antichains(5, 100, seed=7), "n=5 samples"))
    ok = all(r.ok for r in results) and t.elapsed < 120
    total = sum(r.checked for r in results)
    failed = sum(len(r.failures) for r in results)
    record(7, "hypergraph recovered from its signals", ok, f"{total} hypergraphs, {failed} failures ({t.elapsed:.1f}s, budget 120s)")
    assert ok, [f for r in results for f in r.failures[:5]]


def test_08_lattice_correspondence(record):
    with Timer() as t:
        n3 = list(enumerate_antichains(3))
        results = [
            lattice_sweep(list(itertools.product(n3, n3)), "n=3 all pairs"),
            lattice_sweep(sample_pairs(4, 100, seed=4), "n=4 samples"),
            lattice_sweep(sample_pairs(5, 100, seed=5), "n=5 samples"),
        ]
    ok = all(r.ok for r in results) and t.elapsed < 300
    record(8, "join and meet span identities", ok, ", ".join(r.summary() for r in results) + f" ({t.elapsed:.1f}s, budget 300s)")
    assert ok, [f for r in results for f in r.failures[:5]]


def _subsets(vs, lo=2, hi=None):
    hi = len(vs) if hi is None else hi
    return [c for k in range(lo, hi + 1) for c in itertools.combinations(vs, k)]


def _meet_pair_ok(s, t, vs):
    common = tuple(x for x in s if x in t)
    want = subspace_basis(common, vs).matrix if len(common) >= 2 else RationalMatrix([[]] * (bell_number(len(vs)) - 1), ncols=0)
    return same_span(span_intersection(subspace_basis(s, vs).matrix, subspace_basis(t, vs).matrix), want)


def _orbit_pairs(n):
    """One (S, T) per orbit of the symmetric group: determined by |S|, |T|, |S ∩ T|."""
    vs = tuple("ABCDEFGH"[:n])
    out = []
    for a in range(2, n + 1):
        for b in range(2, n + 1):
            for c in range(max(0, a + b - n), min(a, b) + 1):
                out.append((vs[:a], vs[:c] + vs[a:a + b - c]))
    return vs, out


def test_09_subspace_laws(record):
    failures = []
    with Timer() as t:
        # witness orthogonality and strict containment, all S with 3 <= |S| <= 6
        six = tuple("ABCDEF")
        witness_cases = 0
        for s in _subsets(six, 3):
            for tt in _subsets(s, 2, len(s) - 1):
                for tau in enumerate_nontrivial_partitions(tt):
                    witness_cases += 1
                    if witness_pairing(s, tt, tau) != 0:
                        failures.append(f"witness {s} {tt} {tau}")
        for k in range(3, 7):
            s = six[:k]
            r = rank(subspace_sum(_subsets(s, 2, k - 1), s))
            if not r < bell_number(k) - 1:
                failures.append(f"proper subspaces fill U_{''.join(s)}")
        # U_S ∩ U_T = U_{S∩T}: every pair at n=5, one pair per symmetry orbit at n=6
        five = tuple("ABCDE")
        pair_cases = 0
        for s in _subsets(five):
            for tt in _subsets(five):
                pair_cases += 1
                if not _meet_pair_ok(s, tt, five):
                    failures.append(f"pair meet {s} {tt}")
        vs6, reps = _orbit_pairs(6)
        for s, tt in reps:
            pair_cases += 1
            if not _meet_pair_ok(s, tt, vs6):
                failures.append(f"pair meet {s} {tt}")
        # U_S ∩ sum U_Ti and (sum U_Si) ∩ (sum U_Tj), seeded random families at n=5
        rng = random.Random(909)
        subs5 = _subsets(five)
        family_cases = 0
        for _ in range(40):
            s = rng.choice(subs5)
            ts = rng.sample(subs5, rng.randint(1, 3))
            lhs = span_intersection(subspace_basis(s, five).matrix, subspace_sum(ts, five))
            if not same_span(lhs, subspace_sum([[x for x in s if x in tt] for tt in ts], five)):
                failures.append(f"single-family meet {s} {ts}")
            ss = rng.sample(subs5, rng.randint(1, 3))
            ts = rng.sample(subs5, rng.randint(1, 3))
            lhs = span_intersection(subspace_sum(ss, five), subspace_sum(ts, five))
            rhs = subspace_sum([[x for x in a if x in b] for a in ss for b in ts], five)
            if not same_span(lhs, rhs):
                failures.append(f"double-family meet {ss} {ts}")
            family_cases += 2
    ok = not failures and t.elapsed < 60
    record(
        9,
        "indicator subspace laws",
        ok,
        f"{witness_cases} witness pairings, {pair_cases} pair meets, {family_cases} family meets, "
        f"{len(failures)} failures ({t.elapsed:.1f}s, budget 60s)",
    )
    assert ok, failures[:5]


def test_10_k_sensitivity(record):
    vals = tuple(count_sensitive(4, k) for k in (2, 3, 4))
    problems = []
    if vals != (6, 4, 4) or sum(vals) != bell_number(4) - 1:
        problems.append(f"count_sensitive(4,.) = {vals}")
    for n in range(2, 6):
        prev = len(signals(empty_hypergraph(n)))
        if prev != bell_number(n) - 1:
            problems.append(f"empty n={n}")
        for k in range(2, n + 1):
            cur = len(signals(k_uniform_complete(n, k)))
            if prev - cur != count_sensitive(n, k):
                problems.append(f"difference n={n} k={k}: {prev - cur} vs {count_sensitive(n, k)}")
            prev = cur
    for n in range(2, 8):
        if sum(count_sensitive(n, k) for k in range(2, n + 1)) != bell_number(n) - 1:
            problems.append(f"sum n={n}")
    ok = not problems
    record(10, "k-sensitive signal counts", ok, f"(6, 4, 4) -> {vals}; difference identity n<=5; sums n<=7; {len(problems)} problems")
    assert ok, problems


def test_11_quantum_vanishing(record):
    tol = 1e-9
    graphs = [Hypergraph.from_edges("ABC", ["AB", "AC", "BC"]), k_uniform_complete(4, 3), k_uniform_complete(4, 2)]
    worst_res = worst_sig = 0.0
    with Timer() as t:
        for h in graphs:
            for r in quantum_runs(h, range(10), qubits_per_factor=1):
                worst_res = max(worst_res, r.residual)
                worst_sig = max(worst_sig, r.max_signal)
    ok = worst_res < tol and worst_sig < tol and t.elapsed < 30
    record(11, "signals vanish on Sperner states", ok, f"3 graphs x 10 seeds, max residual {worst_res:.2e}, max signal {worst_sig:.2e} bits ({t.elapsed:.1f}s, budget 30s)")
    assert ok


def test_12_quantum_violation(record):
    with Timer() as t:
        sig = signals(k_uniform_complete(4, 3))
        vals = evaluate_signals(sig, mems_point(ghz_state(4)))
    best = max(abs(v) for v in vals)
    ok = best >= 1.9 and abs(best - 2.0) < 1e-6 and t.elapsed < 1.0
    record(12, "GHZ4 violates the 3-uniform class", ok, f"max |signal| = {best:.9f} bits (>= 1.9, 2.0 within 1e-6; {t.elapsed:.2f}s)")
    assert ok
