"""Set partitions of a small labelled vertex set.

Partitions are stored in canonical block form: vertices sorted inside each
block, blocks sorted by their smallest member.  Over a sorted vertex list
this coincides with the restricted-growth-string (RGS) normalisation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

VertexSet = tuple[str, ...]


class PartitionError(ValueError):
    pass


def vertex_set(labels: Iterable[str] | str) -> VertexSet:
    """Normalise labels into a sorted tuple of distinct names.

    A plain string such as ``"ABCD"`` is read one character per vertex.
    """
    if isinstance(labels, str):
        labels = list(labels.split(",")) if "," in labels else list(labels)
    out = tuple(sorted(labels))
    if not out:
        raise PartitionError("vertex set must be non-empty")
    if len(set(out)) != len(out):
        raise PartitionError(f"duplicate vertex labels in {out!r}")
    for label in out:
        if not label or "|" in label or "," in label:
            raise PartitionError(f"invalid vertex label {label!r}")
    return out


def default_vertices(n: int) -> VertexSet:
    """The first ``n`` uppercase letters, or ``V0..V{n-1}`` beyond 26."""
    if n < 1:
        raise PartitionError("vertex set must be non-empty")
    if n <= 26:
        return tuple(chr(ord("A") + i) for i in range(n))
    width = len(str(n - 1))
    return tuple(f"V{i:0{width}d}" for i in range(n))


@lru_cache(maxsize=None)
def bell_number(n: int) -> int:
    """Bell number B_n via the Bell triangle."""
    if n < 0:
        raise ValueError("n must be non-negative")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


@dataclass(frozen=True, order=False)
class Partition:
    """A set partition in canonical block form."""

    blocks: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for b in self.blocks:
            if not b:
                raise PartitionError("empty block")
            if seen.intersection(b) or len(set(b)) != len(b):
                raise PartitionError("blocks are not disjoint")
            seen.update(b)
        if self.blocks != _canonical_blocks(self.blocks):
            raise PartitionError(f"non-canonical partition {self.blocks!r}")

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[str]]) -> "Partition":
        return cls(_canonical_blocks(tuple(tuple(b) for b in blocks)))

    @classmethod
    def from_rgs(cls, vertices: Sequence[str], rgs: Sequence[int]) -> "Partition":
        groups: dict[int, list[str]] = {}
        for v, g in zip(vertices, rgs):
            groups.setdefault(g, []).append(v)
        return cls.from_blocks(groups.values())

    @classmethod
    def parse(cls, text: str, normalize: bool = False) -> "Partition":
        """Parse ``"AB|C|D"`` (or ``"V1,V2|V3"`` for multi-character labels)."""
        text = text.strip()
        if not text:
            raise PartitionError("empty partition string")
        multi = "," in text
        blocks = []
        for chunk in text.split("|"):
            members = [m for m in chunk.split(",")] if multi else list(chunk)
            if not members or any(not m for m in members):
                raise PartitionError(f"malformed partition string {text!r}")
            blocks.append(tuple(members))
        blocks_t = tuple(blocks)
        canon = _canonical_blocks(blocks_t)
        if canon != blocks_t and not normalize:
            raise PartitionError(
                f"non-canonical partition {text!r}; canonical form is "
                f"{format_blocks(canon)!r}"
            )
        return cls.from_blocks(blocks_t)

    @property
    def vertices(self) -> VertexSet:
        return tuple(sorted(v for b in self.blocks for v in b))

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return format_blocks(self.blocks)

    def __repr__(self) -> str:
        return f"Partition({str(self)!r})"

    @property
    def rgs(self) -> tuple[int, ...]:
        where = {v: i for i, b in enumerate(self.blocks) for v in b}
        return tuple(where[v] for v in self.vertices)

    def is_trivial(self) -> bool:
        return len(self.blocks) == 1

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.blocks), self.rgs)


def _canonical_blocks(blocks: tuple[tuple[str, ...], ...]) -> tuple[tuple[str, ...], ...]:
    return tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))


def format_blocks(blocks: Iterable[Iterable[str]]) -> str:
    blocks = [tuple(b) for b in blocks]
    sep = "," if any(len(v) > 1 for b in blocks for v in b) else ""
    return "|".join(sep.join(b) for b in blocks)


def block_count(p: Partition) -> int:
    return len(p.blocks)


def trivial_partition(vertices: Iterable[str]) -> Partition:
    return Partition.from_blocks([tuple(vertices)])


def _rgs_strings(n: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length n in lexicographic order."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i: int, top: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(a)
            return
        for g in range(top + 2):
            a[i] = g
            yield from rec(i + 1, max(top, g))

    a[0] = 0
    yield from rec(1, 0)


def enumerate_partitions(vertices: Iterable[str]) -> list[Partition]:
    """All partitions of ``vertices`` (trivial one included), canonical order."""
    vs = vertex_set(tuple(vertices))
    parts = [Partition.from_rgs(vs, s) for s in _rgs_strings(len(vs))]
    parts.sort(key=Partition.sort_key)
    return parts


@lru_cache(maxsize=64)
def _nontrivial(vs: VertexSet) -> tuple[Partition, ...]:
    return tuple(p for p in enumerate_partitions(vs) if not p.is_trivial())


def enumerate_nontrivial_partitions(vertices: Iterable[str]) -> list[Partition]:
    """Pi*(V) ordered by block count, then by restricted growth string."""
    return list(_nontrivial(vertex_set(tuple(vertices))))


@dataclass(frozen=True)
class PartitionIndex:
    """Fixed ordering of the nontrivial partitions of a vertex set."""

    vertices: VertexSet
    order: tuple[Partition, ...]
    positions: dict[Partition, int] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.order)

    def __getitem__(self, i: int) -> Partition:
        return self.order[i]

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.order)

    def index(self, p: Partition) -> int:
        try:
            return self.positions[p]
        except KeyError:
            raise PartitionError(f"{p} is not a nontrivial partition of {self.vertices}") from None

    @cached_property
    def _labels(self) -> tuple[str, ...]:
        return tuple(str(p) for p in self.order)

    def labels(self) -> list[str]:
        return list(self._labels)


@lru_cache(maxsize=64)
def _index(vs: VertexSet) -> PartitionIndex:
    order = _nontrivial(vs)
    return PartitionIndex(vs, order, {p: i for i, p in enumerate(order)})


def partition_index(vertices: Iterable[str]) -> PartitionIndex:
    return _index(vertex_set(tuple(vertices)))


def restrict(p: Partition, subset: Iterable[str]) -> Partition:
    """Intersect each block with ``subset`` and drop empty intersections."""
    s = set(subset)
    if not s:
        raise PartitionError("empty restriction target")
    missing = s.difference(p.vertices)
    if missing:
        raise PartitionError(f"restriction target not contained in vertex set: {sorted(missing)}")
    return Partition.from_blocks(kept for b in p.blocks if (kept := tuple(v for v in b if v in s)))


def extend_singleton(p: Partition, superset: Iterable[str]) -> Partition:
    """Add every vertex of ``superset`` not covered by ``p`` as a singleton block."""
    big = set(superset)
    own = set(p.vertices)
    if not own <= big:
        raise PartitionError("not a superset")
    return Partition.from_blocks(list(p.blocks) + [(v,) for v in big - own])
