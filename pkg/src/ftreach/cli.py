"""Command-line entry point: ``ftreach gen|build|query|verify|bench``.

Exit status is 0 on success, 1 when verification finds a mismatch and 2 on
usage or input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import random
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from .dual_oracle import build_dual_oracle
from .dual_preserver import build_dual_preserver
from .errors import FtreachError, InputError
from .framework import Pair
from .graph import DiGraph, Subgraph, format_graph, format_pairs, parse_graph, parse_pairs, reaches
from .instances import gen_hard_dual, gen_hard_multi, gen_random_dag, gen_random_digraph
from .kftrs import KFtrsParams, build_k_ftrs
from .providers import Providers
from .serialize import STRUCTURES, SUBGRAPH_STRUCTURES, SubgraphQuery, dumps, loads
from .single_oracle import build_edge_ftro, build_vertex_ftro
from .skeleton import build_pair_skeleton
from .verify import DEFAULT_BUDGET, check_oracle, is_k_ftrs

BENCH_COLUMNS = ("structure", "n", "m", "pairs", "k", "words", "edges_kept", "build_ms", "seed")
BENCH_DEFAULT = ("dual-oracle", "ftro1-vertex", "ftro1-edge", "dual-preserver")
FAILURE_BUDGET = {"pair-skel": 2, "dual-oracle": 2, "dual-preserver": 2,
                  "ftro1-vertex": 1, "ftro1-edge": 1}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


# ---------------------------------------------------------------- builders


def skeleton_union(g: DiGraph, pairs: Sequence[Pair]) -> Subgraph:
    kept: set[int] = set()
    for s, t in dict.fromkeys(pairs):
        if reaches(g, s, t):
            kept |= build_pair_skeleton(g, s, t).kept_edges
    return Subgraph(g, frozenset(kept))


def build_structure(name: str, g: DiGraph, pairs: Sequence[Pair], *, k: int = 3,
                    ell: int | None = None, sample_c: float = 4.0, seed: int = 0,
                    provider: str = "baseline") -> Any:
    providers = Providers(provider)
    if name == "pair-skel":
        return skeleton_union(g, pairs)
    if name == "dual-oracle":
        return build_dual_oracle(g, pairs, providers)
    if name == "ftro1-vertex":
        return build_vertex_ftro(g, pairs)
    if name == "ftro1-edge":
        return build_edge_ftro(g, pairs)
    if name == "dual-preserver":
        return build_dual_preserver(g, pairs, providers)
    if name == "k-ftrs":
        return build_k_ftrs(g, pairs, KFtrsParams(k, ell, sample_c, seed), providers)
    raise InputError(f"unknown structure {name!r}")


def structure_words(obj: Any) -> int:
    if isinstance(obj, Subgraph):
        return 2 * len(obj)
    return obj.words()


def as_queryable(obj: Any) -> Any:
    if isinstance(obj, Subgraph):
        return SubgraphQuery(obj.as_digraph())
    return obj


# ---------------------------------------------------------------- commands


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _budget() -> int:
    raw = os.environ.get("FTREACH_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"FTREACH_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise InputError("FTREACH_BUDGET must be positive")
    return value


def cmd_gen(args) -> int:
    if args.family == "hard2":
        inst = gen_hard_dual(args.N, args.r)
        g, pairs = inst.graph, list(inst.pairs)
    elif args.family == "hardk":
        multi = gen_hard_multi(args.rho, args.k, args.N)
        g = multi.graph
        half = len(multi.hubs) // 2
        pairs = [(x, y) for x in multi.hubs[:half] for y in multi.hubs[half:]]
    elif args.family in ("gnp", "gnp-dag"):
        make = gen_random_digraph if args.family == "gnp" else gen_random_dag
        g = make(args.n, args.p, args.seed)
        rng = random.Random(args.seed + 1)
        pairs = [(rng.randrange(g.n), rng.randrange(g.n)) for _ in range(args.num_pairs)] if g.n else []
    else:
        raise UsageError(f"unknown family {args.family!r}")
    _write(args.graph, format_graph(g))
    if args.pairs:
        _write(args.pairs, format_pairs(pairs))
    return 0


def _load_inputs(args) -> tuple[DiGraph, list[Pair]]:
    g = parse_graph(_read(args.graph))
    pairs = parse_pairs(_read(args.pairs))
    for s, t in pairs:
        g.check_vertex(s)
        g.check_vertex(t)
    return g, pairs


def _build_from_args(args, g: DiGraph, pairs: list[Pair]) -> Any:
    return build_structure(args.structure, g, pairs, k=args.k, ell=args.ell,
                           sample_c=args.sample_c, seed=args.seed, provider=args.provider)


def cmd_build(args) -> int:
    g, pairs = _load_inputs(args)
    obj = _build_from_args(args, g, pairs)
    _write(args.out, dumps(args.structure, obj))
    return 0


def _parse_query(line: str, lineno: int) -> tuple[Pair, str, list]:
    tokens = line.split()
    try:
        nums = [int(x) for i, x in enumerate(tokens) if i != 2]
    except ValueError:
        raise InputError(f"query line {lineno}: bad token in {line!r}") from None
    if len(tokens) == 2:
        return (nums[0], nums[1]), "E", []
    if len(tokens) < 3 or tokens[2] not in ("E", "V"):
        raise InputError(f"query line {lineno}: expected 's t E ...' or 's t V x'")
    mode, rest = tokens[2], nums[2:]
    if mode == "V":
        if len(rest) != 1:
            raise InputError(f"query line {lineno}: vertex mode takes exactly one vertex")
        return (nums[0], nums[1]), mode, rest
    if len(rest) % 2:
        raise InputError(f"query line {lineno}: odd number of edge endpoints")
    return (nums[0], nums[1]), mode, [tuple(rest[i:i + 2]) for i in range(0, len(rest), 2)]


def cmd_query(args) -> int:
    name, obj = loads(_read(args.input))
    if args.structure and args.structure != name:
        raise InputError(f"file holds {name!r}, not {args.structure!r}")
    out = []
    for lineno, raw in enumerate(_read(args.queries).splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        pair, mode, failures = _parse_query(line, lineno)
        if (mode == "V") != (name == "ftro1-vertex") and failures:
            raise InputError(f"query line {lineno}: {mode} failures do not fit {name}")
        out.append("1" if obj.query(pair, *failures) else "0")
    _write(None, "".join(x + "\n" for x in out))
    return 0


def cmd_verify(args) -> int:
    g, pairs = _load_inputs(args)
    if args.input:
        name, obj = loads(_read(args.input))
        if name != args.structure:
            raise InputError(f"file holds {name!r}, not {args.structure!r}")
    else:
        obj = _build_from_args(args, g, pairs)
    budget = _budget()
    sample = None if args.exhaustive else (args.sample or budget)
    if args.structure in SUBGRAPH_STRUCTURES:
        k = args.k if args.structure == "k-ftrs" else FAILURE_BUDGET[args.structure]
        if isinstance(obj, SubgraphQuery):
            h = Subgraph(g, frozenset(g.edge_id(u, v) for u, v in obj.graph.edges))
        else:
            h = obj
        report = is_k_ftrs(g, h, pairs, k, budget, args.seed, sample)
    else:
        mode = "vertex" if args.structure == "ftro1-vertex" else "edge"
        report = check_oracle(obj, g, pairs, mode, FAILURE_BUDGET[args.structure],
                              budget, args.seed, sample)
    for line in report.lines():
        print(line)
    kind = "sampled" if report.sampled else "exhaustive"
    print(f"{args.structure}: {report.total_queries} queries ({kind}), "
          f"{len(report.mismatches)} mismatches", file=sys.stderr)
    return 0 if report.passed else 1


def parse_sizes(text: str) -> list[tuple[int, int]]:
    sizes = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            a, b = item.lower().split("x")
            sizes.append((int(a), int(b)))
        except ValueError:
            raise InputError(f"size {item!r} is not of the form NxR") from None
    if not sizes:
        raise InputError("no sizes given")
    return sizes


def bench_rows(family: str, sizes: Sequence[tuple[int, int]], seed: int = 0,
               structures: Sequence[str] = BENCH_DEFAULT, timing: bool = False,
               provider: str = "baseline") -> list[dict]:
    if family != "hard2":
        raise InputError(f"unknown bench family {family!r}")
    rows = []
    for N, r in sizes:
        inst = gen_hard_dual(N, r)
        g, pairs = inst.graph, list(inst.pairs)
        for name in structures:
            start = time.perf_counter()
            obj = build_structure(name, g, pairs, k=2, seed=seed, provider=provider)
            ms = int((time.perf_counter() - start) * 1000) if timing else 0
            rows.append({
                "structure": name,
                "n": g.n,
                "m": g.m,
                "pairs": len(pairs),
                "k": 2 if name == "k-ftrs" else FAILURE_BUDGET[name],
                "words": structure_words(obj),
                "edges_kept": len(obj) if isinstance(obj, Subgraph) else 0,
                "build_ms": ms,
                "seed": seed,
            })
    rows.sort(key=lambda row: (row["structure"], row["n"], row["m"], row["pairs"]))
    return rows


def format_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def cmd_bench(args) -> int:
    if args.suite != "scaling":
        raise UsageError(f"unknown suite {args.suite!r}")
    structures = tuple(args.structures.split(",")) if args.structures else BENCH_DEFAULT
    for name in structures:
        if name not in STRUCTURES:
            raise UsageError(f"unknown structure {name!r}")
    rows = bench_rows(args.family, parse_sizes(args.sizes), args.seed, structures,
                      args.timing, args.provider)
    _write(args.out, format_csv(rows))
    return 0


# ---------------------------------------------------------------- parser


def _add_build_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--structure", required=True, choices=STRUCTURES)
    p.add_argument("--graph", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--k", type=int, default=3, help="failure budget for k-ftrs")
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--sample-c", type=float, default=4.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--provider", choices=("baseline", "whole-graph"), default="baseline")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ftreach", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a graph and a pair file")
    p.add_argument("--family", required=True, choices=("hard2", "hardk", "gnp", "gnp-dag"))
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--rho", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--p", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--num-pairs", type=int, default=5)
    p.add_argument("--graph", default=None, help="graph output path (stdout if omitted)")
    p.add_argument("--pairs", default=None, help="pair output path")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("build", help="build a structure and save it")
    _add_build_options(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="answer queries against a saved structure")
    p.add_argument("--structure", choices=STRUCTURES, default=None)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--queries", required=True)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", help="compare a structure with brute force")
    _add_build_options(p)
    p.add_argument("--in", dest="input", default=None, help="saved structure (built if omitted)")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--sample", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="size scaling measurements as CSV")
    p.add_argument("--suite", default="scaling")
    p.add_argument("--family", default="hard2")
    p.add_argument("--sizes", required=True, help="comma-separated NxR list, e.g. 4x2,8x2")
    p.add_argument("--structures", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--provider", choices=("baseline", "whole-graph"), default="baseline")
    p.add_argument("--timing", action="store_true", help="record build_ms (breaks byte stability)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except FtreachError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


run_command = main
