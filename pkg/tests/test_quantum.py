import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mems.hypergraph import Hypergraph, empty_hypergraph, k_uniform_complete, random_antichain
from mems.partitions import Partition, enumerate_nontrivial_partitions, extend_singleton
from mems.quantum import (
    FactorLayout,
    PureState,
    QuantumError,
    append_party,
    apply_local_unitaries,
    build_sperner_state,
    evaluate_signals,
    ghz_state,
    haar_state,
    haar_unitary,
    measure_sum_entropy,
    mems_point,
    product_state,
    random_pure_state,
    reduced_entropy,
    relabel,
    tensor_states,
    verify_decomposition,
)
from mems.reduction import signals

TOL = 1e-9
seeds = st.integers(0, 2**31)


def tri():
    return Hypergraph.from_edges("ABC", ["AB", "AC", "BC"])


def random_nonempty(count, n=4):
    out, rng = [], random.Random(2024)
    while len(out) < count:
        h = random_antichain(n, rng)
        if not h.is_empty():
            out.append(h)
    return out


def test_haar_unitary_is_unitary():
    u = haar_unitary(8, np.random.default_rng(0))
    assert np.allclose(u.conj().T @ u, np.eye(8), atol=1e-12)


def test_haar_reproducible():
    a = haar_state(4, np.random.default_rng(5))
    b = haar_state(4, np.random.default_rng(5))
    assert np.array_equal(a, b)


def test_entropy_oracles():
    g = ghz_state(3)
    assert reduced_entropy(g, "A") == pytest.approx(1.0, abs=1e-12)
    assert reduced_entropy(g, "AB") == pytest.approx(1.0, abs=1e-12)
    # maximally entangled pair of ququarts: 2 bits
    amp = np.eye(4, dtype=complex).reshape(-1) / 2
    assert reduced_entropy(PureState(("A", "B"), (4, 4), amp), "A") == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(QuantumError):
        reduced_entropy(g, "ABC")


def test_product_origin_exact():
    assert mems_point(product_state(4)).values == (0.0,) * 14


def test_ghz4_point():
    vals = mems_point(ghz_state(4)).values
    assert vals == pytest.approx((2.0,) * 7 + (3.0,) * 6 + (4.0,), abs=1e-12)


def test_state_validation():
    with pytest.raises(QuantumError, match="normalised"):
        PureState(("A",), (2,), np.array([1.0, 1.0], dtype=complex))
    with pytest.raises(QuantumError, match="no factors"):
        FactorLayout.uniform(empty_hypergraph(3))
    with pytest.raises(QuantumError, match="exceeds cap"):
        FactorLayout.uniform(k_uniform_complete(4, 2), qubits_per_factor=3)


@pytest.mark.parametrize("h", [tri(), k_uniform_complete(4, 3), k_uniform_complete(4, 2)] + random_nonempty(3), ids=str)
def test_decomposition_and_vanishing(h):
    layout = FactorLayout.uniform(h)
    sig = signals(h)
    for seed in range(10):
        assert verify_decomposition(h, layout, seed) < TOL
        vals = evaluate_signals(sig, mems_point(build_sperner_state(h, layout, seed)))
        assert max(map(abs, vals), default=0.0) < TOL


def test_two_qubits_per_factor():
    h = Hypergraph.from_edges("ABC", ["AB", "BC"])
    assert verify_decomposition(h, FactorLayout.uniform(h, 2), 3) < TOL


def test_local_dims_on_empty_hypergraph():
    h = empty_hypergraph(3)
    layout = FactorLayout.uniform(h, local_dims={"A": 2})
    psi = build_sperner_state(h, layout, 0)
    assert max(mems_point(psi).values) < TOL


def test_triangle_signal_degenerate_on_pure_states():
    sig = signals(tri())
    rng = np.random.default_rng(4)
    for _ in range(5):
        psi = random_pure_state("ABC", (2, 3, 2), rng)
        assert abs(evaluate_signals(sig, mems_point(psi))[0]) < TOL


# axioms of the measure ----------------------------------------------------

@settings(max_examples=15, deadline=None)
@given(seeds)
def test_additivity(seed):
    rng = np.random.default_rng(seed)
    a = random_pure_state("ABC", (2, 2, 2), rng)
    b = random_pure_state("ABC", (2, 3, 2), rng)
    ab = tensor_states(a, b)
    for p in enumerate_nontrivial_partitions("ABC"):
        assert abs(measure_sum_entropy(ab, p) - measure_sum_entropy(a, p) - measure_sum_entropy(b, p)) < TOL


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_local_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    a = random_pure_state("ABCD", (2, 2, 3, 2), rng)
    u = {v: haar_unitary(d, rng) for v, d in zip(a.parties, a.dims)}
    b = apply_local_unitaries(a, u)
    assert np.allclose(mems_point(a).values, mems_point(b).values, atol=TOL, rtol=0)


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_reducibility(seed):
    rng = np.random.default_rng(seed)
    a = random_pure_state("ABC", (2, 2, 2), rng)
    bigger = append_party(a, "D", haar_state(3, rng))
    for p in enumerate_nontrivial_partitions("ABC"):
        q = extend_singleton(p, "ABCD")
        assert abs(measure_sum_entropy(bigger, q) - measure_sum_entropy(a, p)) < TOL


@settings(max_examples=10, deadline=None)
@given(seeds, st.permutations("ABCD"))
def test_permutation_symmetry(seed, perm):
    rng = np.random.default_rng(seed)
    a = random_pure_state("ABCD", (2, 3, 2, 2), rng)
    mapping = dict(zip("ABCD", perm))
    b = relabel(a, mapping)
    for p in enumerate_nontrivial_partitions("ABCD"):
        q = Partition.from_blocks([[mapping[v] for v in blk] for blk in p.blocks])
        assert abs(measure_sum_entropy(a, p) - measure_sum_entropy(b, q)) < TOL
