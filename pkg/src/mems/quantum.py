"""Explicit Sperner states and a concrete measure evaluated on them.

The measure is the sum of von Neumann block entropies (base 2):
E_pi(psi) = sum over blocks b of pi of S(rho_b).  On globally pure states
it is additive, LU invariant, reducible and symmetric, which is all the
macro/micro decomposition needs.  Hyperedge states are pure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .hypergraph import Edge, Hypergraph
from .partitions import (
    Partition,
    VertexSet,
    default_vertices,
    partition_index,
    vertex_set,
)
from .reduction import SignalSet, build_reduction_matrix
from .structure import MemsPoint, signal_values

DIMENSION_CAP = 2**14


class QuantumError(ValueError):
    pass


@dataclass(frozen=True)
class PureState:
    """Normalised state vector on labelled parties with given local dimensions."""

    parties: VertexSet
    dims: tuple[int, ...]
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.parties != vertex_set(self.parties):
            raise QuantumError("parties must be sorted and distinct")
        if len(self.dims) != len(self.parties):
            raise QuantumError("one dimension per party required")
        if self.amplitudes.shape != (math.prod(self.dims),):
            raise QuantumError(f"amplitude vector has shape {self.amplitudes.shape}, expected ({math.prod(self.dims)},)")
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > 1e-12:
            raise QuantumError(f"state is not normalised (norm {norm!r})")

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)


@dataclass(frozen=True)
class FactorLayout:
    """Local factor dimensions d_{I,e} for every incidence of party I in edge e.

    ``local_dims`` adds an unentangled pure factor to a party; a party with no
    factors at all is one-dimensional.
    """

    hypergraph: Hypergraph
    dims: Mapping[tuple[str, Edge], int]
    local_dims: Mapping[str, int] = field(default_factory=dict)
    cap: int = DIMENSION_CAP

    def __post_init__(self) -> None:
        h = self.hypergraph
        want = {(v, e) for e in h.edges for v in e}
        if set(self.dims) != want:
            raise QuantumError("layout does not match the hypergraph incidences")
        if any(d < 2 for d in self.dims.values()):
            raise QuantumError("factor dimensions must be >= 2")
        if not set(self.local_dims) <= set(h.vertices) or any(d < 1 for d in self.local_dims.values()):
            raise QuantumError("invalid local dimensions")
        if not want and not self.local_dims:
            raise QuantumError("no factors: empty hypergraph needs explicit local dims")
        if self.total_dim > self.cap:
            raise QuantumError(f"total dimension {self.total_dim} exceeds cap {self.cap}")

    @classmethod
    def uniform(
        cls,
        h: Hypergraph,
        qubits_per_factor: int = 1,
        local_dims: Mapping[str, int] | None = None,
        cap: int = DIMENSION_CAP,
    ) -> "FactorLayout":
        d = 2**qubits_per_factor
        return cls(h, {(v, e): d for e in h.edges for v in e}, dict(local_dims or {}), cap)

    def legs(self) -> list[tuple[str, Edge | None, int]]:
        """Tensor legs before regrouping: edge-major, then local factors."""
        out = [(v, e, self.dims[(v, e)]) for e in self.hypergraph.edges for v in e]
        out += [(v, None, d) for v, d in sorted(self.local_dims.items())]
        return out

    def party_dims(self) -> tuple[int, ...]:
        dims = {v: 1 for v in self.hypergraph.vertices}
        for v, _, d in self.legs():
            dims[v] *= d
        return tuple(dims[v] for v in self.hypergraph.vertices)

    @property
    def total_dim(self) -> int:
        return math.prod(d for _, _, d in self.legs())


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random d x d unitary from the QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def haar_state(d: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


@dataclass(frozen=True)
class SpernerSample:
    state: PureState
    edge_states: tuple[PureState, ...]  # pre-unitary factor states, one per edge


def sample_sperner(h: Hypergraph, layout: FactorLayout, seed: int) -> SpernerSample:
    if layout.hypergraph != h:
        raise QuantumError("layout was built for a different hypergraph")
    rng = np.random.default_rng(seed)
    edge_states = []
    for e in h.edges:
        dims = tuple(layout.dims[(v, e)] for v in e)
        edge_states.append(PureState(e, dims, haar_state(math.prod(dims), rng)))
    legs = layout.legs()
    local = [np.eye(1, d, 0, dtype=complex)[0] for _, e, d in legs if e is None]
    psi = reduce(np.kron, [s.amplitudes for s in edge_states] + local, np.ones(1, dtype=complex))
    psi = psi.reshape([d for _, _, d in legs])
    # regroup legs party by party
    order = [i for v in h.vertices for i, leg in enumerate(legs) if leg[0] == v]
    psi = np.transpose(psi, order)
    pdims = layout.party_dims()
    psi = psi.reshape(pdims)
    for axis, d in enumerate(pdims):
        u = haar_unitary(d, rng)
        psi = np.moveaxis(np.tensordot(u, psi, axes=([1], [axis])), 0, axis)
    return SpernerSample(PureState(h.vertices, pdims, psi.reshape(-1)), tuple(edge_states))


def build_sperner_state(h: Hypergraph, layout: FactorLayout, seed: int) -> PureState:
    """Haar-random pure state per edge, tensored, then a Haar local unitary per party."""
    return sample_sperner(h, layout, seed).state


def reduced_entropy(psi: PureState, block: Iterable[str]) -> float:
    """Von Neumann entropy (bits) of the reduced state on ``block``."""
    b = set(block)
    if not b or not b < set(psi.parties):
        raise QuantumError("block must be a non-empty proper subset of the parties")
    return _block_entropy(psi, tuple(i for i, v in enumerate(psi.parties) if v in b))


def _block_entropy(psi: PureState, axes: tuple[int, ...]) -> float:
    rest = tuple(i for i in range(len(psi.parties)) if i not in axes)
    da = math.prod(psi.dims[i] for i in axes)
    db = math.prod(psi.dims[i] for i in rest)
    m = np.transpose(psi.tensor(), axes + rest).reshape(da, db)
    # same non-zero spectrum either way for a pure state; use the smaller side
    rho = m @ m.conj().T if da <= db else m.conj().T @ m
    return entropy_bits(np.linalg.eigvalsh(rho))


def entropy_bits(eigs: np.ndarray) -> float:
    lam = np.clip(np.real(eigs), 0.0, None)
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log2(lam))) + 0.0


def measure_sum_entropy(psi: PureState, p: Partition) -> float:
    if p.vertices != psi.parties:
        raise QuantumError(f"{p} is not a partition of {psi.parties}")
    if p.is_trivial():
        raise QuantumError("the measure is defined on nontrivial partitions only")
    return math.fsum(reduced_entropy(psi, b) for b in p.blocks)


def mems_point(psi: PureState) -> MemsPoint:
    """Evaluate the measure on every nontrivial partition, canonical order."""
    n = len(psi.parties)
    cache: dict[tuple[str, ...], float] = {}
    for k in range(1, n):
        for axes in combinations(range(n), k):
            block = tuple(psi.parties[i] for i in axes)
            cache[block] = _block_entropy(psi, axes)
    vals = [math.fsum(cache[b] for b in p.blocks) for p in partition_index(psi.parties)]
    return MemsPoint(psi.parties, tuple(vals))


@dataclass(frozen=True)
class MeasureValues:
    micro: dict[tuple[Edge, Partition], float]
    macro: dict[Partition, float]


def decomposition_values(h: Hypergraph, layout: FactorLayout, seed: int) -> MeasureValues:
    sample = sample_sperner(h, layout, seed)
    micro: dict[tuple[Edge, Partition], float] = {}
    for e, st in zip(h.edges, sample.edge_states):
        for p in partition_index(e):
            micro[(e, p)] = measure_sum_entropy(st, p)
    pt = mems_point(sample.state)
    macro = dict(zip(pt.macro.order, pt.values))
    return MeasureValues(micro, macro)


def verify_decomposition(h: Hypergraph, layout: FactorLayout, seed: int) -> float:
    """max_pi |V_macro - R(H) V_micro| in bits for one seeded Sperner state."""
    vals = decomposition_values(h, layout, seed)
    rm = build_reduction_matrix(h)
    micro = np.array([vals.micro[k] for k in rm.micro.entries], dtype=float)
    macro = np.array([vals.macro[p] for p in rm.macro.order], dtype=float)
    r = np.array([[float(x) for x in rm.matrix.row(i)] for i in range(rm.matrix.rows)], dtype=float)
    pred = r @ micro if micro.size else np.zeros(len(macro))
    return float(np.max(np.abs(macro - pred))) if macro.size else 0.0


def evaluate_signals(sig: SignalSet, p: MemsPoint) -> list[float]:
    return [float(v) for v in signal_values(sig, p)]


# named states ------------------------------------------------------------

def ghz_state(n: int, parties: Sequence[str] | None = None) -> PureState:
    vs = vertex_set(parties) if parties is not None else default_vertices(n)
    amp = np.zeros(2**n, dtype=complex)
    amp[0] = amp[-1] = 1 / math.sqrt(2)
    return PureState(vs, (2,) * n, amp)


def product_state(n: int, parties: Sequence[str] | None = None) -> PureState:
    vs = vertex_set(parties) if parties is not None else default_vertices(n)
    amp = np.zeros(2**n, dtype=complex)
    amp[0] = 1.0
    return PureState(vs, (2,) * n, amp)


NAMED_STATES = {
    "ghz3": lambda: ghz_state(3),
    "ghz4": lambda: ghz_state(4),
    "product": lambda: product_state(4),
}


# state manipulation used by the axiom checks -------------------------------

def tensor_states(a: PureState, b: PureState) -> PureState:
    """Party-wise tensor product: party I carries H_I(a) ⊗ H_I(b)."""
    if a.parties != b.parties:
        raise QuantumError("tensor_states needs identical party sets")
    n = len(a.parties)
    t = np.multiply.outer(a.tensor(), b.tensor())
    t = np.transpose(t, [x for i in range(n) for x in (i, n + i)])
    dims = tuple(x * y for x, y in zip(a.dims, b.dims))
    return PureState(a.parties, dims, t.reshape(-1))


def append_party(a: PureState, label: str, local: np.ndarray) -> PureState:
    """a ⊗ |local> with the new party inserted in sorted position."""
    local = np.asarray(local, dtype=complex)
    parties = a.parties + (label,)
    t = np.multiply.outer(a.tensor(), local.reshape(-1))
    order = sorted(range(len(parties)), key=lambda i: parties[i])
    dims = a.dims + (local.size,)
    return PureState(
        tuple(parties[i] for i in order), tuple(dims[i] for i in order), np.transpose(t, order).reshape(-1)
    )


def apply_local_unitaries(a: PureState, unitaries: Mapping[str, np.ndarray]) -> PureState:
    t = a.tensor()
    for axis, v in enumerate(a.parties):
        if v in unitaries:
            t = np.moveaxis(np.tensordot(unitaries[v], t, axes=([1], [axis])), 0, axis)
    return PureState(a.parties, a.dims, t.reshape(-1))


def relabel(a: PureState, mapping: Mapping[str, str]) -> PureState:
    """Rename parties; axes are re-sorted to keep parties in canonical order."""
    new = [mapping.get(v, v) for v in a.parties]
    order = sorted(range(len(new)), key=lambda i: new[i])
    return PureState(
        tuple(new[i] for i in order),
        tuple(a.dims[i] for i in order),
        np.transpose(a.tensor(), order).reshape(-1),
    )


def random_pure_state(parties: Sequence[str], dims: Sequence[int], rng: np.random.Generator) -> PureState:
    return PureState(vertex_set(parties), tuple(dims), haar_state(math.prod(dims), rng))
