"""``mems`` command-line entry point.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

from . import fixtures
from .hypergraph import ENUMERATION_LIMIT, Hypergraph, join, k_uniform_complete, meet
from .linalg import format_rational
from .partitions import bell_number, default_vertices, enumerate_nontrivial_partitions, vertex_set
from .quantum import DIMENSION_CAP, NAMED_STATES, FactorLayout, build_sperner_state, mems_point
from .reduction import SignalSet, build_reduction_matrix, rank_by_formula, rank_by_matrix, signals
from .structure import CLASSIFY_LIMIT, MemsPoint, classify_point, count_sensitive, recover_hypergraph, verify_lattice_correspondence
from .verify import hypergraphs_for, quantum_runs, rank_formula_sweep


class CheckFailed(Exception):
    """A verification ran and did not hold."""


@dataclass(frozen=True)
class Config:
    tolerance: float = 1e-9
    classify_limit: int = CLASSIFY_LIMIT
    sweep_limit: int = ENUMERATION_LIMIT
    seed: int = 0
    output_format: str = "json"
    dimension_cap: int = DIMENSION_CAP
    normalize: bool = False

    def __post_init__(self) -> None:
        if self.tolerance < 0:
            raise ValueError("tolerance must be non-negative")
        if self.classify_limit < 1 or self.sweep_limit < 1 or self.dimension_cap < 1:
            raise ValueError("limits must be positive")


def _read_json(path: str) -> Any:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return json.loads(text)


def _graph(path: str, cfg: Config) -> Hypergraph:
    return Hypergraph.from_json_dict(_read_json(path), normalize=cfg.normalize)


def _emit_graph(h: Hypergraph, fmt: str) -> str:
    return h.to_dot().rstrip("\n") if fmt == "dot" else h.to_json()


def _vertices(spec: str):
    return default_vertices(int(spec)) if spec.isdigit() else vertex_set(spec)


# subcommands --------------------------------------------------------------

def cmd_partitions(args, cfg: Config) -> list[str]:
    parts = enumerate_nontrivial_partitions(_vertices(args.vertices))
    if cfg.output_format == "json":
        return [json.dumps([str(p) for p in parts])]
    return [str(p) for p in parts]


def cmd_matrix(args, cfg: Config) -> list[str]:
    rm = build_reduction_matrix(_graph(args.graph, cfg))
    if cfg.output_format == "json":
        return [rm.matrix.to_json()]
    m = rm.matrix
    width = max([len(s) for s in rm.macro.labels()] + [1])
    out = [" " * width + "  " + " ".join(rm.micro.labels())]
    for i, lab in enumerate(rm.macro.labels()):
        out.append(lab.ljust(width) + "  " + " ".join(format_rational(x) for x in m.row(i)))
    return out


def cmd_rank(args, cfg: Config) -> list[str]:
    h = _graph(args.graph, cfg)
    dim = bell_number(h.n) - 1
    parts = []
    vals = []
    if args.method in ("matrix", "both"):
        r = rank_by_matrix(h)
        parts.append(f"matrix={r}")
        vals.append(r)
    if args.method in ("formula", "both"):
        r = rank_by_formula(h)
        parts.append(f"formula={r}")
        vals.append(r)
    parts.append(f"codim={dim - vals[0]}")
    line = " ".join(parts)
    if len(set(vals)) > 1:
        raise CheckFailed(line)
    return [line]


def cmd_signals(args, cfg: Config) -> list[str]:
    sig = signals(_graph(args.graph, cfg))
    if cfg.output_format == "text":
        return sig.to_text().splitlines()
    return [sig.to_json()]


def cmd_join(args, cfg: Config) -> list[str]:
    return [_emit_graph(join(_graph(args.a, cfg), _graph(args.b, cfg)), cfg.output_format)]


def cmd_meet(args, cfg: Config) -> list[str]:
    return [_emit_graph(meet(_graph(args.a, cfg), _graph(args.b, cfg)), cfg.output_format)]


def cmd_recover(args, cfg: Config) -> list[str]:
    sig = SignalSet.from_json_dict(_read_json(args.signals), normalize=cfg.normalize)
    return [_emit_graph(recover_hypergraph(sig), cfg.output_format)]


def cmd_classify(args, cfg: Config) -> list[str]:
    p = MemsPoint.from_json_dict(_read_json(args.point), normalize=cfg.normalize)
    if len(p.vertices) > cfg.classify_limit:
        raise ValueError(f"enumeration limit: n={len(p.vertices)} > {cfg.classify_limit}")
    classes = classify_point(p, cfg.tolerance)
    if cfg.output_format == "text":
        return [str(h) for h in classes]
    return [json.dumps({"classes": [h.to_json_dict() for h in classes]})]


def cmd_k_complete(args, cfg: Config) -> list[str]:
    return [_emit_graph(k_uniform_complete(args.n, args.k), cfg.output_format)]


def cmd_count_sensitive(args, cfg: Config) -> list[str]:
    return [str(count_sensitive(args.n, args.k))]


def cmd_verify_theorem1(args, cfg: Config) -> list[str]:
    if args.n > cfg.sweep_limit:
        raise ValueError(f"enumeration limit: n={args.n} > {cfg.sweep_limit}")
    exhaustive = args.exhaustive or (args.samples is None and args.n <= 5)
    graphs = hypergraphs_for(args.n, exhaustive, args.samples or 200, cfg.seed)
    res = rank_formula_sweep(graphs, name=f"n={args.n} {'exhaustive' if exhaustive else f'samples seed={cfg.seed}'}")
    lines = [res.summary()] + [f"FAIL {f}" for f in res.failures]
    if not res.ok:
        raise CheckFailed("\n".join(lines))
    return lines


def cmd_verify_lattice(args, cfg: Config) -> list[str]:
    rep = verify_lattice_correspondence(_graph(args.a, cfg), _graph(args.b, cfg))
    lines = [
        f"join {rep.join}: {'pass' if rep.join_ok else 'FAIL'}",
        f"meet {rep.meet}: {'pass' if rep.meet_ok else 'FAIL'}",
    ]
    if not rep.ok:
        raise CheckFailed("\n".join(lines))
    return lines


def cmd_verify_quantum(args, cfg: Config) -> list[str]:
    h = _graph(args.graph, cfg)
    FactorLayout.uniform(h, args.qubits_per_factor, cap=cfg.dimension_cap)
    runs = quantum_runs(h, range(cfg.seed, cfg.seed + args.seeds), args.qubits_per_factor)
    lines, bad = [], 0
    for r in runs:
        ok = r.residual < cfg.tolerance and r.max_signal < cfg.tolerance
        bad += not ok
        lines.append(f"seed={r.seed} residual={r.residual:.3e} max_signal={r.max_signal:.3e} {'pass' if ok else 'FAIL'}")
    lines.append(f"{h}: {len(runs) - bad}/{len(runs)} seeds within tol={cfg.tolerance:g}")
    if bad:
        raise CheckFailed("\n".join(lines))
    return lines


def cmd_fixtures(args, cfg: Config) -> list[str]:
    checks = fixtures.fixture_report(args.data_dir)
    width = max(len(c.name) for c in checks)
    lines = [f"{c.name.ljust(width)}  {'pass' if c.ok else 'FAIL'}  {c.detail}" for c in checks]
    if not all(c.ok for c in checks):
        raise CheckFailed("\n".join(lines))
    return lines


def cmd_point(args, cfg: Config) -> list[str]:
    if args.state:
        psi = NAMED_STATES[args.state]()
    else:
        h = _graph(args.graph, cfg)
        layout = FactorLayout.uniform(h, args.qubits_per_factor, cap=cfg.dimension_cap)
        psi = build_sperner_state(h, layout, cfg.seed)
    return [mems_point(psi).to_json()]


# parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mems", description=__doc__.splitlines()[0])
    p.add_argument("--normalize", action="store_true", help="accept non-canonical partition strings and edge lists")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, fn: Callable, help: str, formats: Sequence[str] = ()) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=fn)
        if formats:
            sp.add_argument("--format", choices=list(formats), default=formats[0])
        return sp

    sp = add("partitions", cmd_partitions, "list nontrivial partitions in canonical order", ("text", "json"))
    sp.add_argument("vertices", help="vertex labels (e.g. ABCD) or a count n")

    sp = add("matrix", cmd_matrix, "partition-reduction matrix R(H)", ("json", "text"))
    sp.add_argument("graph")

    sp = add("rank", cmd_rank, "rank of R(H)")
    sp.add_argument("graph")
    sp.add_argument("--method", choices=["matrix", "formula", "both"], default="both")

    sp = add("signals", cmd_signals, "canonical signal basis (left nullspace of R(H))", ("json", "text"))
    sp.add_argument("graph")

    for name, fn in (("join", cmd_join), ("meet", cmd_meet)):
        sp = add(name, fn, f"{name} of two hypergraphs", ("json", "dot"))
        sp.add_argument("a")
        sp.add_argument("b")

    sp = add("recover", cmd_recover, "hypergraph whose signal space is the given set", ("json", "dot"))
    sp.add_argument("signals")

    sp = add("classify", cmd_classify, "minimal classes whose signals vanish on a point", ("json", "text"))
    sp.add_argument("point")
    sp.add_argument("--tol", type=float, default=1e-9)

    sp = add("k-complete", cmd_k_complete, "k-uniform-complete hypergraph", ("json", "dot"))
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)

    sp = add("count-sensitive", cmd_count_sensitive, "number of k-sensitive signals")
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)

    sp = add("verify-theorem1", cmd_verify_theorem1, "rank formula vs matrix rank sweep")
    sp.add_argument("--n", type=int, required=True)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("verify-lattice", cmd_verify_lattice, "check join/meet span identities")
    sp.add_argument("a")
    sp.add_argument("b")

    sp = add("verify-quantum", cmd_verify_quantum, "numeric decomposition and signal vanishing")
    sp.add_argument("graph")
    sp.add_argument("--qubits-per-factor", type=int, default=1)
    sp.add_argument("--seeds", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0, help="first seed")
    sp.add_argument("--tol", type=float, default=1e-9)

    sp = add("fixtures", cmd_fixtures, "regenerate and compare the reference n=4 fixtures")
    sp.add_argument("--data-dir", default=None, help="directory with table1/table2/triangle/equalities JSON")

    sp = add("point", cmd_point, "MEMS point of a named or sampled state")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--state", choices=sorted(NAMED_STATES))
    src.add_argument("--graph")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--qubits-per-factor", type=int, default=1)
    return p


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = Config(
            tolerance=getattr(args, "tol", 1e-9),
            seed=getattr(args, "seed", 0),
            output_format=getattr(args, "format", "text"),
            normalize=args.normalize,
        )
        lines = args.func(args, cfg)
    except CheckFailed as exc:
        print(str(exc), file=stdout)
        return 1
    except (ValueError, KeyError, TypeError, OSError) as exc:
        print(f"mems {args.command}: error: {exc}", file=stderr)
        return 2
    for line in lines:
        print(line, file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
