"""Versioned text format for built structures.

Every file starts with ``FTREACH v1 <structure-name>``.  Subgraph
structures continue with the graph text format; oracles continue with one
line of canonical JSON (sorted keys, no whitespace).
"""
from __future__ import annotations

import json
from typing import Any, Sequence

from .dual_oracle import DualOracle
from .errors import InputError
from .graph import DiGraph, Subgraph, format_graph, parse_graph, reach_set
from .single_oracle import EdgeFailOracle, VertexFailOracle

MAGIC = "FTREACH"
VERSION = "v1"

SUBGRAPH_STRUCTURES = ("pair-skel", "dual-preserver", "k-ftrs")
ORACLE_STRUCTURES = {
    "dual-oracle": DualOracle,
    "ftro1-vertex": VertexFailOracle,
    "ftro1-edge": EdgeFailOracle,
}
STRUCTURES = SUBGRAPH_STRUCTURES + tuple(ORACLE_STRUCTURES)


class SubgraphQuery:
    """Answers pair queries by searching a stored subgraph directly."""

    def __init__(self, graph: DiGraph):
        self.graph = graph

    def query(self, pair: Sequence[int], *failures: Sequence[int]) -> bool:
        s, t = int(pair[0]), int(pair[1])
        self.graph.check_vertex(s)
        self.graph.check_vertex(t)
        banned = set()
        for f in failures:
            a, b = int(f[0]), int(f[1])
            if self.graph.has_edge(a, b):
                banned.add(self.graph.edge_id(a, b))
        return bool(reach_set(self.graph, s, banned)[t])

    def words(self) -> int:
        return 2 + 2 * self.graph.m


def dumps(name: str, obj: Any) -> str:
    if name not in STRUCTURES:
        raise InputError(f"unknown structure {name!r}")
    head = f"{MAGIC} {VERSION} {name}\n"
    if name in SUBGRAPH_STRUCTURES:
        if isinstance(obj, Subgraph):
            return head + format_graph(obj.parent, obj.edge_list())
        if isinstance(obj, SubgraphQuery):
            return head + format_graph(obj.graph)
        raise InputError(f"{name} expects a subgraph")
    body = json.dumps(obj.to_dict(), sort_keys=True, separators=(",", ":"))
    return head + body + "\n"


def loads(text: str) -> tuple[str, Any]:
    first, _, rest = text.partition("\n")
    parts = first.split()
    if len(parts) != 3 or parts[0] != MAGIC:
        raise InputError("missing structure header")
    if parts[1] != VERSION:
        raise InputError(f"unsupported format version {parts[1]!r}")
    name = parts[2]
    if name in SUBGRAPH_STRUCTURES:
        return name, SubgraphQuery(parse_graph(rest))
    if name in ORACLE_STRUCTURES:
        try:
            data = json.loads(rest)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed structure body: {exc}") from None
        return name, ORACLE_STRUCTURES[name].from_dict(data)
    raise InputError(f"unknown structure {name!r}")
