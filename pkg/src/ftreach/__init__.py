"""Fault-tolerant pairwise reachability preservers and oracles for digraphs."""
from .dual_oracle import DualOracle, build_dual_oracle
from .dual_preserver import build_dual_preserver
from .errors import (
    BudgetExceeded,
    ContractViolation,
    FtreachError,
    InputError,
    PreconditionError,
    RoutingError,
)
from .graph import DiGraph, Subgraph, parse_graph, parse_pairs, reachable
from .instances import gen_hard_dual, gen_hard_multi, gen_random_dag, gen_random_digraph
from .kftrs import KFtrsParams, build_k_ftrs
from .providers import Providers
from .single_oracle import build_cutset_apr, build_edge_ftro, build_vertex_ftro
from .skeleton import build_pair_skeleton, find_nice_path
from .verify import check_oracle, is_k_ftrs

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ContractViolation",
    "DiGraph",
    "DualOracle",
    "FtreachError",
    "InputError",
    "KFtrsParams",
    "PreconditionError",
    "Providers",
    "RoutingError",
    "Subgraph",
    "build_cutset_apr",
    "build_dual_oracle",
    "build_dual_preserver",
    "build_edge_ftro",
    "build_k_ftrs",
    "build_pair_skeleton",
    "build_vertex_ftro",
    "check_oracle",
    "find_nice_path",
    "gen_hard_dual",
    "gen_hard_multi",
    "gen_random_dag",
    "gen_random_digraph",
    "is_k_ftrs",
    "parse_graph",
    "parse_pairs",
    "reachable",
]
