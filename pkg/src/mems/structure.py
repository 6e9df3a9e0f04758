"""Indicator subspaces, hypergraph recovery, lattice checks and classification.

For a subset S of the vertices, U_S is the span of the indicator vectors
1_{S,sigma} over nontrivial partitions sigma of S; the column space of R(H)
is the sum of U_e over the edges.  Everything here is exact except
:func:`classify_point`, which compares floating measure values against a
tolerance.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import comb, factorial
from typing import Any, Iterable, Sequence

from .hypergraph import Hypergraph, antichain_normalize, dominates, enumerate_antichains, join, meet
from .linalg import LinalgError, RationalMatrix, same_span, span_intersection
from .partitions import (
    Partition,
    PartitionIndex,
    VertexSet,
    bell_number,
    enumerate_nontrivial_partitions,
    partition_index,
    restrict,
    vertex_set,
)
from .reduction import SignalSet, build_reduction_matrix, restriction_table, signals

CLASSIFY_LIMIT = 5


class StructureError(ValueError):
    pass


def _subset(s: Iterable[str] | str, vertices: VertexSet) -> tuple[str, ...]:
    sub = vertex_set(s)
    if not set(sub) <= set(vertices):
        raise StructureError(f"{sub} is not a subset of {vertices}")
    return sub


@dataclass(frozen=True)
class IndicatorVector:
    subset: tuple[str, ...]
    sigma: Partition
    vector: tuple[int, ...]


def indicator_vector(s: Iterable[str] | str, sigma: Partition, vertices: Iterable[str] | str) -> IndicatorVector:
    """0/1 vector over Pi*(V): 1 where the partition restricted to S equals sigma."""
    vs = vertex_set(vertices)
    sub = _subset(s, vs)
    if len(sub) < 2:
        raise StructureError("indicator vectors need |S| >= 2")
    if sigma.vertices != sub:
        raise StructureError(f"{sigma} is not a partition of {sub}")
    vec = tuple(int(restrict(p, sub) == sigma) for p in partition_index(vs))
    return IndicatorVector(sub, sigma, vec)


@dataclass(frozen=True)
class SubspaceBasis:
    subset: tuple[str, ...]
    matrix: RationalMatrix  # one column per sigma in Pi*(S)


def subspace_basis(s: Iterable[str] | str, vertices: Iterable[str] | str) -> SubspaceBasis:
    vs = vertex_set(vertices)
    sub = _subset(s, vs)
    if len(sub) < 2:
        raise StructureError("U_S is {0} for |S| < 2; no basis vectors")
    table = restriction_table(vs, sub)
    width = bell_number(len(sub)) - 1
    rows = [[int(pos == j) for j in range(width)] for pos in table]
    return SubspaceBasis(sub, RationalMatrix(rows, ncols=width))


def subspace_sum(subsets: Iterable[Iterable[str] | str], vertices: Iterable[str] | str) -> RationalMatrix:
    """Spanning columns of the sum of U_S over ``subsets`` (|S| <= 1 adds nothing)."""
    vs = vertex_set(vertices)
    out = RationalMatrix([[] for _ in range(bell_number(len(vs)) - 1)], ncols=0)
    for s in subsets:
        s = tuple(s)
        if len(set(s)) >= 2:
            out = out.hstack(subspace_basis(s, vs).matrix)
    return out


def _annihilates_subspace(rows: list[list[Fraction]], table: Sequence[int], width: int) -> bool:
    for r in rows:
        acc = [Fraction(0)] * width
        for c, pos in zip(r, table):
            if pos >= 0 and c:
                acc[pos] += c
        if any(acc):
            return False
    return True


def recover_hypergraph(sig: SignalSet) -> Hypergraph:
    """Rebuild the hypergraph whose signal space is ``sig``.

    D collects every S (|S| >= 2) whose indicator subspace is killed by all
    signals; its inclusion-maximal members are the edges.
    """
    vs = sig.vertices
    if len(vs) < 2:
        raise StructureError("recovery needs at least two vertices")
    if sig.coefficients.cols != bell_number(len(vs)) - 1:
        raise LinalgError("signal dimensions do not match the vertex set")
    rows = [list(sig.coefficients.row(i)) for i in range(sig.coefficients.rows)]
    d = []
    for k in range(2, len(vs) + 1):
        for s in itertools.combinations(vs, k):
            if _annihilates_subspace(rows, restriction_table(vs, s), bell_number(k) - 1):
                d.append(frozenset(s))
    return antichain_normalize(d, vs)


def witness(s: Iterable[str] | str) -> dict[Partition, int]:
    """w(pi) = (-1)^(|S|-|pi|) (|pi|-1)! on the nontrivial partitions of S."""
    sub = vertex_set(s)
    if len(sub) < 3:
        raise StructureError("witness needs |S| >= 3")
    n = len(sub)
    return {p: (-1) ** (n - len(p)) * factorial(len(p) - 1) for p in enumerate_nontrivial_partitions(sub)}


def witness_pairing(s: Iterable[str] | str, t: Iterable[str] | str, tau: Partition) -> int:
    """<w, 1bar_{T,tau}> over Pi*(S): sum of w(pi) over pi with pi|_T = tau."""
    sub = vertex_set(s)
    tt = _subset(t, sub)
    if tau.vertices != tt:
        raise StructureError(f"{tau} is not a partition of {tt}")
    w = _witness_vector(sub)
    # restriction_table marks a trivial restriction with -1
    target = -1 if tau.is_trivial() else partition_index(tt).index(tau)
    return sum(v for v, pos in zip(w, restriction_table(sub, tt)) if pos == target)


@lru_cache(maxsize=None)
def _witness_vector(sub: VertexSet) -> tuple[int, ...]:
    w = witness(sub)
    return tuple(w[p] for p in partition_index(sub))


def count_sensitive(n: int, k: int) -> int:
    """Number of independent signals sensitive to k-party but not (k-1)-party entanglement."""
    if not 2 <= k <= n:
        raise StructureError(f"need 2 <= k <= n, got n={n}, k={k}")
    return comb(n, k) * sum((-1) ** j * comb(k, j) * bell_number(k - j) for j in range(k + 1))


@dataclass(frozen=True)
class MemsPoint:
    """Measure values, one per nontrivial partition in canonical order."""

    vertices: VertexSet
    values: tuple[float | Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.values) != bell_number(len(self.vertices)) - 1:
            raise StructureError("MemsPoint length does not match the vertex set")
        if any(isinstance(v, float) and not math.isfinite(v) for v in self.values):
            raise StructureError("MemsPoint values must be finite")

    @property
    def macro(self) -> PartitionIndex:
        return partition_index(self.vertices)

    def to_json_dict(self) -> dict[str, Any]:
        return {"order": self.macro.labels(), "values": [float(v) for v in self.values]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict[str, Any], normalize: bool = False) -> "MemsPoint":
        try:
            labels = list(d["order"])
            vals = [float(v) for v in d["values"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise StructureError(f"malformed point JSON: {exc}") from exc
        if len(labels) != len(vals) or not labels:
            raise StructureError("order and values differ in length")
        parts = [Partition.parse(s, normalize=normalize) for s in labels]
        vs = vertex_set(parts[0].vertices)
        macro = partition_index(vs)
        if len(set(parts)) != len(parts) or set(parts) != set(macro.order):
            raise StructureError("order is not a permutation of the nontrivial partitions")
        lookup = dict(zip(parts, vals))
        return cls(vs, tuple(lookup[p] for p in macro.order))

    @classmethod
    def from_json(cls, text: str, normalize: bool = False) -> "MemsPoint":
        return cls.from_json_dict(json.loads(text), normalize=normalize)


def signal_values(sig: SignalSet, p: MemsPoint) -> list[float | Fraction]:
    """s . p per signal row; exact when every value is rational."""
    if sig.vertices != p.vertices:
        raise StructureError("signal set and point live on different vertex sets")
    exact = all(isinstance(v, (int, Fraction)) for v in p.values)
    out: list[float | Fraction] = []
    for r in sig.rows():
        if exact:
            out.append(sum((c * Fraction(v) for c, v in zip(r, p.values) if c), Fraction(0)))
        else:
            out.append(math.fsum(c * float(v) for c, v in zip(r, p.values) if c))
    return out


def classify_point(p: MemsPoint, tol: float = 1e-9) -> list[Hypergraph]:
    """Dominance-minimal hypergraphs whose every signal vanishes on ``p`` within ``tol``."""
    if tol < 0:
        raise StructureError("tolerance must be non-negative")
    if len(p.vertices) > CLASSIFY_LIMIT:
        raise StructureError(f"enumeration limit: n={len(p.vertices)} > {CLASSIFY_LIMIT}")
    fits = [h for h in enumerate_antichains(p.vertices) if all(abs(v) <= tol for v in signal_values(signals(h), p))]
    minimal = [h for h in fits if not any(g != h and dominates(h, g) for g in fits)]
    return minimal


@dataclass(frozen=True)
class LatticeReport:
    join: Hypergraph
    meet: Hypergraph
    join_ok: bool
    meet_ok: bool

    @property
    def ok(self) -> bool:
        return self.join_ok and self.meet_ok


def verify_lattice_correspondence(ha: Hypergraph, hb: Hypergraph) -> LatticeReport:
    """Check Col R(Ha v Hb) = Col R(Ha) + Col R(Hb) and Col R(Ha ^ Hb) = Col R(Ha) ∩ Col R(Hb)."""
    hj, hm = join(ha, hb), meet(ha, hb)
    ra = build_reduction_matrix(ha).matrix
    rb = build_reduction_matrix(hb).matrix
    join_ok = same_span(build_reduction_matrix(hj).matrix, ra.hstack(rb))
    meet_ok = same_span(build_reduction_matrix(hm).matrix, span_intersection(ra, rb))
    return LatticeReport(hj, hm, join_ok, meet_ok)
