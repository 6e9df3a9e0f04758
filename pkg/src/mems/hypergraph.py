"""Antichain ("Sperner") hypergraphs and their lattice operations."""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Any, Iterable, Iterator

from .partitions import VertexSet, vertex_set

Edge = tuple[str, ...]

ENUMERATION_LIMIT = 6


class HypergraphError(ValueError):
    pass


def _edge_key(e: Edge) -> tuple[int, Edge]:
    return (-len(e), e)


def _sorted_edges(edges: Iterable[Iterable[str]]) -> tuple[Edge, ...]:
    return tuple(sorted({tuple(sorted(e)) for e in edges}, key=_edge_key))


@dataclass(frozen=True)
class Hypergraph:
    """Vertex set plus an antichain of hyperedges, each of size >= 2.

    Edges are kept sorted by size (descending), then lexicographically.
    """

    vertices: VertexSet
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.vertices != vertex_set(self.vertices):
            raise HypergraphError(f"vertex labels must be sorted and distinct: {self.vertices!r}")
        vs = set(self.vertices)
        for e in self.edges:
            if len(e) < 2:
                raise HypergraphError(f"edge {e!r} has fewer than two vertices")
            if not set(e) <= vs:
                raise HypergraphError(f"edge {e!r} is not inside the vertex set")
        if self.edges != _sorted_edges(self.edges) or len(set(self.edges)) != len(self.edges):
            raise HypergraphError("edges are not in canonical order")
        sets = [frozenset(e) for e in self.edges]
        for a, b in itertools.permutations(sets, 2):
            if a < b:
                raise HypergraphError(f"not an antichain: {sorted(a)} is inside {sorted(b)}")

    @classmethod
    def from_edges(cls, vertices: Iterable[str] | str, edges: Iterable[Iterable[str]]) -> "Hypergraph":
        """Build from edges that already form an antichain (any order)."""
        return cls(vertex_set(vertices), _sorted_edges(edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge_sets(self) -> list[frozenset[str]]:
        return [frozenset(e) for e in self.edges]

    def is_empty(self) -> bool:
        return not self.edges

    def __str__(self) -> str:
        inner = ", ".join(_fmt_edge(e) for e in self.edges)
        return "{" + inner + "}"

    # serialisation ---------------------------------------------------------

    def to_json_dict(self) -> dict[str, Any]:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict[str, Any], normalize: bool = False) -> "Hypergraph":
        try:
            vertices = vertex_set(list(d["vertices"]))
            edges = [list(e) for e in d["edges"]]
        except (KeyError, TypeError) as exc:
            raise HypergraphError(f"malformed hypergraph JSON: {exc}") from exc
        if normalize:
            return antichain_normalize(edges, vertices)
        return cls.from_edges(vertices, edges)

    @classmethod
    def from_json(cls, text: str, normalize: bool = False) -> "Hypergraph":
        return cls.from_json_dict(json.loads(text), normalize=normalize)

    def to_dot(self) -> str:
        lines = ["graph hypergraph {"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for e in self.edges:
            if len(e) == 2:
                lines.append(f'  "{e[0]}" -- "{e[1]}";')
            else:
                name = "e_" + "_".join(e)
                lines.append(f'  "{name}" [shape=point, xlabel="{_fmt_edge(e)}"];')
                for v in e:
                    lines.append(f'  "{name}" -- "{v}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _fmt_edge(e: Edge) -> str:
    return ("," if any(len(v) > 1 for v in e) else "").join(e)


def antichain_normalize(edges: Iterable[Iterable[str]], vertices: Iterable[str] | str | None = None) -> Hypergraph:
    """Drop edges of size <= 1 and every edge contained in another one."""
    sets = {frozenset(e) for e in edges}
    if vertices is None:
        vertices = sorted(set().union(*sets)) if sets else []
    vs = vertex_set(vertices)
    if sets and not set().union(*sets) <= set(vs):
        raise HypergraphError("edge outside the vertex set")
    sets = {s for s in sets if len(s) >= 2}
    maximal = [s for s in sets if not any(s < t for t in sets)]
    return Hypergraph(vs, _sorted_edges(maximal))


def _same_vertices(a: Hypergraph, b: Hypergraph) -> None:
    if a.vertices != b.vertices:
        raise HypergraphError(f"vertex-set mismatch: {a.vertices} vs {b.vertices}")


def dominates(h1: Hypergraph, h2: Hypergraph) -> bool:
    """True iff every edge of ``h2`` sits inside some edge of ``h1``."""
    _same_vertices(h1, h2)
    big = h1.edge_sets()
    return all(any(e <= f for f in big) for e in h2.edge_sets())


def join(ha: Hypergraph, hb: Hypergraph) -> Hypergraph:
    _same_vertices(ha, hb)
    return antichain_normalize(ha.edge_sets() + hb.edge_sets(), ha.vertices)


def meet(ha: Hypergraph, hb: Hypergraph) -> Hypergraph:
    _same_vertices(ha, hb)
    return antichain_normalize(
        (e & f for e in ha.edge_sets() for f in hb.edge_sets() if len(e & f) >= 2), ha.vertices
    )


def k_uniform_complete(vertices: Iterable[str] | str | int, k: int) -> Hypergraph:
    vs = _coerce_vertices(vertices)
    if not 2 <= k <= len(vs):
        raise HypergraphError(f"k={k} out of range for n={len(vs)}")
    return Hypergraph(vs, _sorted_edges(itertools.combinations(vs, k)))


def empty_hypergraph(vertices: Iterable[str] | str | int) -> Hypergraph:
    return Hypergraph(_coerce_vertices(vertices), ())


def full_hypergraph(vertices: Iterable[str] | str | int) -> Hypergraph:
    vs = _coerce_vertices(vertices)
    return Hypergraph(vs, (vs,)) if len(vs) >= 2 else Hypergraph(vs, ())


def _coerce_vertices(vertices: Iterable[str] | str | int) -> VertexSet:
    if isinstance(vertices, int):
        from .partitions import default_vertices

        return default_vertices(vertices)
    return vertex_set(vertices)


def candidate_edges(vertices: VertexSet) -> list[Edge]:
    """All subsets of size >= 2 in canonical edge order."""
    subs = [c for k in range(2, len(vertices) + 1) for c in itertools.combinations(vertices, k)]
    return sorted(subs, key=_edge_key)


def enumerate_antichains(vertices: Iterable[str] | str | int) -> Iterator[Hypergraph]:
    """Every antichain of size->=2 subsets, the empty one first, each exactly once."""
    vs = _coerce_vertices(vertices)
    if len(vs) > ENUMERATION_LIMIT:
        raise HypergraphError(f"enumeration limit: n={len(vs)} > {ENUMERATION_LIMIT}")
    cands = candidate_edges(vs)
    cand_sets = [frozenset(c) for c in cands]
    chosen: list[int] = []

    def rec(start: int) -> Iterator[Hypergraph]:
        yield Hypergraph(vs, tuple(cands[i] for i in chosen))
        for i in range(start, len(cands)):
            s = cand_sets[i]
            # candidates come in size-descending order, so only s ⊂ chosen can occur
            if any(s <= cand_sets[j] for j in chosen):
                continue
            chosen.append(i)
            yield from rec(i + 1)
            chosen.pop()

    yield from rec(0)


def random_antichain(vertices: Iterable[str] | str | int, rng: random.Random, max_edges: int | None = None) -> Hypergraph:
    """Sample an antichain by normalising a random family of subsets.

    The family size and each subset size are uniform, which spreads samples
    across sparse and dense overlap patterns.
    """
    vs = _coerce_vertices(vertices)
    if len(vs) < 2:
        return Hypergraph(vs, ())
    m = rng.randint(0, max_edges if max_edges is not None else 2 * len(vs))
    fam = []
    for _ in range(m):
        k = rng.randint(2, len(vs))
        fam.append(rng.sample(vs, k))
    return antichain_normalize(fam, vs)
