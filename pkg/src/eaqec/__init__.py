"""Entanglement-assisted quantum error-correcting codes built from graph states."""

from .catalog import CodeRecord, coffeepot_code, reconstruct_adjacency, star_code, table1_regression
from .codesearch import (
    CodingClique,
    SearchProblem,
    candidate_subsets,
    codeword_basis,
    coverable_family,
    extract_stabilizer,
    purity_set,
    search,
)
from .gf2 import BinaryMatrix, in_span, members, nullspace_basis, vset
from .graphstate import Graph, basis_overlap, build_graph_state, graph_stabilizer, reduce_error, set_neighborhood
from .noise import NoiseModel, effective_coding_probability, infidelity, infidelity_curve, monte_carlo_pc
from .pauli import Pauli, commutes, pauli_multiply
from .verify import (
    VerificationReport,
    degenerate_pairs,
    hamming_bound,
    kl_verify_statevector,
    symplectic_verify,
    syndrome,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryMatrix",
    "CodeRecord",
    "CodingClique",
    "Graph",
    "NoiseModel",
    "Pauli",
    "SearchProblem",
    "VerificationReport",
    "basis_overlap",
    "build_graph_state",
    "candidate_subsets",
    "codeword_basis",
    "coffeepot_code",
    "commutes",
    "coverable_family",
    "degenerate_pairs",
    "effective_coding_probability",
    "extract_stabilizer",
    "graph_stabilizer",
    "hamming_bound",
    "in_span",
    "infidelity",
    "infidelity_curve",
    "kl_verify_statevector",
    "members",
    "monte_carlo_pc",
    "nullspace_basis",
    "pauli_multiply",
    "purity_set",
    "reconstruct_adjacency",
    "reduce_error",
    "search",
    "set_neighborhood",
    "star_code",
    "symplectic_verify",
    "syndrome",
    "table1_regression",
    "vset",
]
