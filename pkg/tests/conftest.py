"""Shared strategies and independent oracles for the test-suite."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from mems.hypergraph import antichain_normalize, random_antichain
from mems.partitions import Partition, default_vertices


def textbook_rank(rows) -> int:
    """Plain Gaussian elimination over Fractions, kept apart from the package's fraction-free code."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    r = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def brute_partitions(items):
    """All set partitions by inserting each element into an existing block or a new one."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in brute_partitions(rest):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]
        yield [[first]] + p


def brute_antichains(vertices):
    """Every antichain of subsets of size >= 2, by filtering the full power set of candidates."""
    cands = [frozenset(c) for k in range(2, len(vertices) + 1) for c in itertools.combinations(vertices, k)]
    out = []
    for mask in range(1 << len(cands)):
        fam = [c for i, c in enumerate(cands) if mask >> i & 1]
        if all(not (a < b) for a in fam for b in fam):
            out.append(fam)
    return out


@st.composite
def partitions(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    vs = default_vertices(n)
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    blocks: dict[int, list[str]] = {}
    for v, b in zip(vs, labels):
        blocks.setdefault(b, []).append(v)
    return Partition.from_blocks(blocks.values())


@st.composite
def hypergraphs(draw, min_n=2, max_n=5):
    n = draw(st.integers(min_n, max_n))
    vs = default_vertices(n)
    cands = [c for k in range(2, n + 1) for c in itertools.combinations(vs, k)]
    fam = draw(st.lists(st.sampled_from(cands), max_size=6))
    return antichain_normalize(fam, vs)


@st.composite
def hypergraph_pairs(draw, min_n=2, max_n=4):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    return random_antichain(n, rng), random_antichain(n, rng)


# acceptance summary -----------------------------------------------------------

ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line[1])


@pytest.fixture
def record(request):
    """record(num, title, ok, detail) adds one pass/fail line to the acceptance summary."""

    def add(num: int, title: str, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {num:>2}. {title}: {detail}"
        request.config.stash[ACCEPTANCE].append((num, line))
        print(line)

    return add
