"""Finite-field verification of the dual-code rank results."""

from .chain import ChainState, build_chain, check_chain_rank_bounds, chain_rank_bound, verify_chain_lemmas
from .gf import GFMatrix, column_basis, gf_rank, intersection_basis, nullspace, rref
from .hrepair import BlockMatrix, incremental_ranks, random_h_repair, validate_h_repair
from .layered import LayeredCode, construct_layered_code, h_repair_of, verify_layered_code

__all__ = [
    "BlockMatrix",
    "ChainState",
    "GFMatrix",
    "LayeredCode",
    "build_chain",
    "chain_rank_bound",
    "check_chain_rank_bounds",
    "column_basis",
    "construct_layered_code",
    "gf_rank",
    "h_repair_of",
    "incremental_ranks",
    "intersection_basis",
    "nullspace",
    "random_h_repair",
    "rref",
    "validate_h_repair",
    "verify_chain_lemmas",
    "verify_layered_code",
]
