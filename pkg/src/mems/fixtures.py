"""Golden fixtures: the reference n=4 reduction matrices, equalities and the
triangle relation, compared against what this package computes.

Table fixtures keep the reference row/column label order together with a
permutation into canonical order (``row_permutation[i]`` is the canonical
row index of reference row ``i``), so comparison is bit-exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .hypergraph import Hypergraph
from .linalg import RationalMatrix, same_span
from .partitions import Partition, partition_index
from .reduction import build_reduction_matrix, signals


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str


def load(name: str, data_dir: str | Path | None = None) -> dict[str, Any]:
    if data_dir is not None:
        return json.loads((Path(data_dir) / f"{name}.json").read_text(encoding="utf-8"))
    return json.loads(resources.files("mems.data").joinpath(f"{name}.json").read_text(encoding="utf-8"))


def _check_permutation(fx: dict[str, Any], h: Hypergraph) -> str | None:
    macro = partition_index(h.vertices)
    want_rows = [macro.index(Partition.parse(s, normalize=True)) for s in fx["row_labels"]]
    if want_rows != fx["row_permutation"]:
        return "row_permutation disagrees with row_labels"
    offsets, o = {}, 0
    for e in h.edges:
        offsets["".join(e)] = o
        o += len(partition_index(e))
    want_cols = []
    for edge, lab in fx["col_labels"]:
        e = "".join(sorted(edge))
        want_cols.append(offsets[e] + partition_index(e).index(Partition.parse(lab, normalize=True)))
    if want_cols != fx["col_permutation"]:
        return "col_permutation disagrees with col_labels"
    return None


def compare_table(fx: dict[str, Any]) -> Check:
    """Bit-exact comparison of a reference table against R(H), in its own label order."""
    name = fx.get("name", "table")
    h = Hypergraph.from_json_dict(fx["hypergraph"])
    problem = _check_permutation(fx, h)
    if problem:
        return Check(name, False, problem)
    m = build_reduction_matrix(h).matrix
    ours = m.permute(fx["row_permutation"], fx["col_permutation"])
    expected = fx["entries"]
    if ours.shape != (len(expected), len(expected[0]) if expected else 0):
        return Check(name, False, f"shape {ours.shape} differs from reference table")
    for i, row in enumerate(expected):
        for j, val in enumerate(row):
            if ours[i, j] != val:
                rl = fx["row_labels"][i]
                cl = "e{}:{}".format(*fx["col_labels"][j])
                return Check(name, False, f"first mismatch at row {rl}, column {cl}: reference {val}, computed {ours[i, j]}")
    return Check(name, True, f"{ours.rows}x{ours.cols} matrix matches bit-exactly")


def equality_matrix(data: dict[str, Any], keys: list[str]) -> RationalMatrix:
    """Reference equalities as rows over the canonical MEMS coordinates."""
    macro = partition_index(data["vertices"])
    rows = []
    for k in keys:
        row = [Fraction(0)] * len(macro)
        for label, coef in data["equalities"][k].items():
            row[macro.index(Partition.parse(label, normalize=True))] += Fraction(coef)
        rows.append(row)
    return RationalMatrix(rows, ncols=len(macro))


def check_equalities(data: dict[str, Any], key: str) -> Check:
    entry = data[key]
    h = Hypergraph.from_json_dict(entry["hypergraph"])
    eqs = equality_matrix(data, entry["equalities"])
    sig = signals(h).coefficients
    ok = same_span(eqs.transpose(), sig.transpose())
    label = f"({entry['equalities'][0]})-({entry['equalities'][-1]})"
    return Check(f"{key} equalities", ok, f"span of equalities {label} {'equals' if ok else 'differs from'} computed signal span")


def check_codimensions(data: dict[str, Any]) -> Check:
    parts, ok = [], True
    for key in ("k3n4", "k2n4"):
        h = Hypergraph.from_json_dict(data[key]["hypergraph"])
        c = len(signals(h))
        ok &= c == data[key]["codimension"]
        parts.append(f"{key}: {c}")
    return Check("codimensions", ok, ", ".join(parts))


def check_triangle(fx: dict[str, Any]) -> Check:
    h = Hypergraph.from_json_dict(fx["hypergraph"])
    macro = partition_index(h.vertices)
    want = [Fraction(0)] * len(macro)
    for label, coef in fx["signal"].items():
        want[macro.index(Partition.parse(label, normalize=True))] = Fraction(coef)
    sig = signals(h)
    ok = len(sig) == 1 and same_span(
        RationalMatrix([want], ncols=len(macro)).transpose(), sig.coefficients.transpose()
    )
    return Check("triangle signal", ok, sig.to_text() if len(sig) else "no signal")


def fixture_report(data_dir: str | Path | None = None) -> list[Check]:
    eqs = load("equalities", data_dir)
    return [
        compare_table(load("table1", data_dir)),
        compare_table(load("table2", data_dir)),
        check_triangle(load("triangle", data_dir)),
        check_equalities(eqs, "k3n4"),
        check_equalities(eqs, "k2n4"),
        check_codimensions(eqs),
    ]
