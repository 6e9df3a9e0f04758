"""Partition-reduction matrices, their ranks, and entanglement signals.

R(H) maps the per-hyperedge ("micro") measure values to the whole-system
("macro") values: entry (pi, (e, pi_e)) is 1 exactly when pi restricted to
e equals pi_e.  Linear relations obeyed by the macro vector are the left
nullspace of R(H); we call a basis of it the *signals* of H.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Any, Sequence

from .hypergraph import Edge, Hypergraph
from .linalg import LinalgError, RationalMatrix, left_nullspace, rank
from .partitions import (
    Partition,
    PartitionIndex,
    VertexSet,
    bell_number,
    partition_index,
    restrict,
    vertex_set,
)


@dataclass(frozen=True)
class MicroIndex:
    """Column labels of R(H): (edge, nontrivial partition of that edge)."""

    entries: tuple[tuple[Edge, Partition], ...]

    def __len__(self) -> int:
        return len(self.entries)

    def labels(self) -> list[str]:
        return [f"{_edge_str(e)}:{p}" for e, p in self.entries]


def _edge_str(e: Edge) -> str:
    return ("," if any(len(v) > 1 for v in e) else "").join(e)


def micro_index(h: Hypergraph) -> MicroIndex:
    return MicroIndex(tuple((e, p) for e in h.edges for p in partition_index(e)))


@lru_cache(maxsize=4096)
def restriction_table(vertices: VertexSet, subset: tuple[str, ...]) -> tuple[int, ...]:
    """For each pi in Pi*(V): position of pi|_subset in Pi*(subset), or -1 if trivial."""
    macro = partition_index(vertices)
    if len(subset) < 2:
        return tuple(-1 for _ in macro)
    local = partition_index(subset)
    out = []
    for p in macro:
        r = restrict(p, subset)
        out.append(-1 if r.is_trivial() else local.index(r))
    return tuple(out)


@dataclass(frozen=True)
class ReductionMatrix:
    hypergraph: Hypergraph
    macro: PartitionIndex
    micro: MicroIndex
    matrix: RationalMatrix


def _reduction_rows(h: Hypergraph) -> list[list[int]]:
    nrows = bell_number(h.n) - 1
    rows = [[] for _ in range(nrows)]
    for e in h.edges:
        width = bell_number(len(e)) - 1
        table = restriction_table(h.vertices, e)
        for i, pos in enumerate(table):
            block = [0] * width
            if pos >= 0:
                block[pos] = 1
            rows[i].extend(block)
    return rows


def build_reduction_matrix(h: Hypergraph) -> ReductionMatrix:
    macro = partition_index(h.vertices)
    micro = micro_index(h)
    m = RationalMatrix(
        _reduction_rows(h), ncols=len(micro), row_labels=macro.labels(), col_labels=micro.labels()
    )
    return ReductionMatrix(h, macro, micro, m)


def rank_by_matrix(h: Hypergraph) -> int:
    if not h.edges:
        return 0
    return rank(build_reduction_matrix(h).matrix)


def rank_by_formula(h: Hypergraph) -> int:
    """Inclusion-exclusion over non-empty edge families F of (B_k(F) - 1).

    Families are aggregated by their common intersection as edges are added
    one at a time, so the sum over 2^|E| families costs O(|E| * 2^n).
    Intersections of size <= 1 contribute B_k - 1 = 0 and stay that small
    under further intersection, so they are dropped early.
    """
    # signed count of families (with sign (-1)^{|F|+1}) per intersection set
    acc: dict[frozenset[str], int] = defaultdict(int)
    for e in h.edge_sets():
        new = defaultdict(int, acc)
        new[e] += 1
        for s, c in acc.items():
            t = s & e
            if len(t) >= 2 and c:
                new[t] -= c
        acc = new
    return sum(c * (bell_number(len(s)) - 1) for s, c in acc.items())


def rank_by_formula_naive(h: Hypergraph) -> int:
    """Literal sum over all non-empty subfamilies; exponential in |E|."""
    sets = h.edge_sets()
    total = 0
    for r in range(1, len(sets) + 1):
        for fam in combinations(sets, r):
            k = len(frozenset.intersection(*fam))
            total += (-1) ** (r + 1) * (bell_number(k) - 1)
    return total


@dataclass(frozen=True)
class SignalSet:
    """Independent integer linear functionals on MEMS coordinates.

    Rows are in canonical form: coprime integers, first non-zero entry
    positive, arranged as the reduced row echelon basis over ``macro``.
    """

    vertices: VertexSet
    macro: PartitionIndex
    coefficients: RationalMatrix

    def __post_init__(self) -> None:
        if self.coefficients.cols != len(self.macro):
            raise LinalgError(
                f"signal width {self.coefficients.cols} does not match {len(self.macro)} coordinates"
            )

    def __len__(self) -> int:
        return self.coefficients.rows

    def rows(self) -> list[list[int]]:
        return [[int(x) for x in self.coefficients.row(i)] for i in range(self.coefficients.rows)]

    def to_json_dict(self) -> dict[str, Any]:
        return {"macro_order": self.macro.labels(), "signals": self.rows()}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    def to_text(self) -> str:
        return "\n".join(signal_to_text(r, self.macro) for r in self.rows())

    @classmethod
    def from_json_dict(cls, d: dict[str, Any], normalize: bool = False) -> "SignalSet":
        """Read a signal set; columns are permuted into canonical order.

        The rows are kept as given (they need not be canonical), so that
        arbitrary user-supplied functionals can be fed to recovery.
        """
        try:
            labels = list(d["macro_order"])
            rows = [[Fraction(x) for x in r] for r in d["signals"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise LinalgError(f"malformed signal JSON: {exc}") from exc
        parts = [Partition.parse(s, normalize=normalize) for s in labels]
        if not parts:
            raise LinalgError("empty macro_order")
        vs = vertex_set(parts[0].vertices)
        macro = partition_index(vs)
        if len(set(parts)) != len(parts) or set(parts) != set(macro.order):
            raise LinalgError("macro_order is not a permutation of the nontrivial partitions")
        if any(len(r) != len(parts) for r in rows):
            raise LinalgError("signal row length does not match macro_order")
        perm = [parts.index(p) for p in macro.order]
        coeffs = RationalMatrix(([r[j] for j in perm] for r in rows), ncols=len(macro))
        return cls(vs, macro, coeffs)

    @classmethod
    def from_json(cls, text: str, normalize: bool = False) -> "SignalSet":
        return cls.from_json_dict(json.loads(text), normalize=normalize)


@lru_cache(maxsize=8192)
def signals(h: Hypergraph) -> SignalSet:
    rm = build_reduction_matrix(h)
    return SignalSet(h.vertices, rm.macro, left_nullspace(rm.matrix))


def signal_to_text(s: Sequence[int | Fraction], idx: PartitionIndex) -> str:
    """Render a functional as ``"2*E3(A|B|C) - E2(A|BC) ... = 0"``."""
    if len(s) != len(idx):
        raise LinalgError(f"signal length {len(s)} does not match {len(idx)} coordinates")
    terms = []
    for c, p in zip(s, idx):
        c = Fraction(c)
        if c == 0:
            continue
        mag = abs(c)
        coef = "" if mag == 1 else (f"{mag.numerator}*" if mag.denominator == 1 else f"({mag})*")
        name = f"{coef}E{len(p)}({p})"
        if not terms:
            terms.append(name if c > 0 else f"-{name}")
        else:
            terms.append(f"+ {name}" if c > 0 else f"- {name}")
    return (" ".join(terms) if terms else "0") + " = 0"
