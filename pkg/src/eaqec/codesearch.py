"""Purity sets, coverable families and the coding-clique / coding-group search."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .gf2 import (
    BinaryMatrix,
    VertexSet,
    combine,
    members,
    nullspace_basis,
    row_reduce,
    span,
    subsets_by_weight,
    subsets_of,
)
from .graphstate import Graph, graph_stabilizer, set_neighborhood
from .pauli import Pauli

log = logging.getLogger(__name__)

MAX_CLIQUE_VERTICES = 20


@dataclass(frozen=True)
class SearchProblem:
    graph: Graph
    distance: int
    mode: Literal["clique", "group"] = "group"
    # K (number of codewords) in clique mode, k (log2 K) in group mode
    target: int = 1
    maximum_only: bool = False
    limit: int | None = None

    def __post_init__(self) -> None:
        if not 1 <= self.distance <= max(self.graph.n_noisy, 1):
            raise ValueError(f"distance {self.distance} outside 1..{self.graph.n_noisy}")
        if self.mode not in ("clique", "group"):
            raise ValueError(f"unknown search mode {self.mode!r}")


@dataclass(frozen=True)
class CodingClique:
    members: tuple[VertexSet, ...]
    is_group: bool = False
    generators: tuple[VertexSet, ...] = field(default=())

    @classmethod
    def from_generators(cls, generators) -> CodingClique:
        rref = tuple(row_reduce(generators)[0])
        if len(rref) != len(generators):
            raise ValueError("coding-group generators are linearly dependent")
        return cls(tuple(span(rref)), True, tuple(generators))

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def k(self) -> int:
        return len(self.generators)

    def canonical_generators(self) -> tuple[VertexSet, ...]:
        return tuple(row_reduce(self.generators)[0])


def purity_set(g: Graph, d: int) -> list[VertexSet]:
    """Nonempty S with S and N_S avoiding the pure vertices and |S u N_S| < d."""
    out = []
    # |S u N_S| >= |S|, so only sets lighter than d can qualify
    for w in range(1, d):
        for s in subsets_by_weight(g.noisy, w):
            reach = s | set_neighborhood(g, s)
            if not reach & g.pure and reach.bit_count() < d:
                out.append(s)
    return sorted(out)


def coverable_family(g: Graph, d: int) -> set[VertexSet]:
    """All delta ^ N_omega with delta u omega on noisy vertices and |delta u omega| < d."""
    out = {0}
    for w in range(1, d):
        for supp in subsets_by_weight(g.noisy, w):
            # each vertex in the support carries X (omega only), Z (delta only) or Y (both)
            for omega in subsets_of(supp):
                n_omega = set_neighborhood(g, omega)
                rest = supp & ~omega
                for extra in subsets_of(omega):
                    out.add((rest | extra) ^ n_omega)
    return out


def is_uncoverable(s: VertexSet, coverable: set[VertexSet]) -> bool:
    return s not in coverable


def candidate_subsets(g: Graph, d: int) -> list[VertexSet]:
    """Every C with |S n C| even for all S in the purity set (includes the empty set)."""
    constraints = BinaryMatrix(tuple(purity_set(g, d)), g.n_vertices)
    return span(nullspace_basis(constraints))


def validate_clique(g: Graph, d: int, clique: CodingClique) -> list[str]:
    """Check conditions i-iii from scratch; returns the list of violations."""
    problems = []
    mem = list(clique.members)
    if 0 not in mem:
        problems.append("empty set missing")
    for s in purity_set(g, d):
        for c in mem:
            if (s & c).bit_count() % 2:
                problems.append(f"odd overlap between purity set {members(s)} and {members(c)}")
    cov = coverable_family(g, d)
    for i, a in enumerate(mem):
        for b in mem[i + 1:]:
            if a == b:
                problems.append(f"duplicate member {members(a)}")
            elif a ^ b in cov:
                problems.append(f"{members(a)} ^ {members(b)} is coverable")
    if clique.is_group and sorted(span(clique.generators)) != sorted(mem):
        problems.append("members are not the span of the generators")
    return problems


# ------------------------------------------------------------------ clique mode


def _greedy_color_bound(cand: int, adj: list[int]) -> int:
    """Number of colours in a greedy colouring of the candidate set (upper bound on clique size)."""
    colors = 0
    left = cand
    while left:
        colors += 1
        avail = left
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~adj[v] & ~(1 << v)
            left &= ~(1 << v)
    return colors


def _maximal_cliques(adj: list[int], min_size: int, limit: int | None) -> list[int]:
    """Bron-Kerbosch with pivoting over bitmask adjacency, pruned by a colouring bound.

    Returns maximal cliques (as bitmasks over node indices) with at least
    ``min_size`` nodes.
    """
    out: list[int] = []
    n = len(adj)

    def expand(r: int, r_size: int, p: int, x: int) -> bool:
        if limit is not None and len(out) >= limit:
            return False
        if not p:
            if not x and r_size >= min_size:
                out.append(r)
            return True
        if r_size + p.bit_count() < min_size:
            return True
        if r_size + _greedy_color_bound(p, adj) < min_size:
            return True
        # pivot: node of p|x with most neighbours in p, lowest index on ties
        best, pivot = -1, 0
        px = p | x
        while px:
            u = (px & -px).bit_length() - 1
            px ^= 1 << u
            c = (p & adj[u]).bit_count()
            if c > best:
                best, pivot = c, u
        todo = p & ~adj[pivot]
        while todo:
            v = (todo & -todo).bit_length() - 1
            todo ^= 1 << v
            bit = 1 << v
            if not expand(r | bit, r_size + 1, p & adj[v], x & adj[v]):
                return False
            p &= ~bit
            x |= bit
        return True

    expand(0, 0, (1 << n) - 1, 0)
    return out


def _clique_search(problem: SearchProblem) -> list[CodingClique]:
    g, d = problem.graph, problem.distance
    if g.n_vertices > MAX_CLIQUE_VERTICES:
        raise ValueError(f"clique mode refuses graphs over {MAX_CLIQUE_VERTICES} vertices")
    cov = coverable_family(g, d)
    # cliques through the empty set live inside its neighbourhood
    nodes = [c for c in candidate_subsets(g, d) if c and c not in cov]
    adj = [0] * len(nodes)
    for i, a in enumerate(nodes):
        for j in range(i + 1, len(nodes)):
            if a ^ nodes[j] not in cov:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    found = _maximal_cliques(adj, problem.target - 1, problem.limit)
    cliques = []
    for mask in found:
        mem = (0, *sorted(nodes[i] for i in members(mask)))
        cliques.append(CodingClique(mem))
    if problem.maximum_only and cliques:
        top = max(c.size for c in cliques)
        cliques = [c for c in cliques if c.size == top]
    cliques.sort(key=lambda c: (-c.size, c.members))
    return cliques


# ------------------------------------------------------------------- group mode


def _group_search(problem: SearchProblem) -> list[CodingClique]:
    """Maximal subspaces of the candidate space whose nonzero elements are all uncoverable.

    Each subspace is reached once, through its reduced row-echelon basis
    (pivot = lowest set bit, pivots increasing).  ``compat[v]`` marks the
    vectors v with v ^ w good for every w in the current subspace W; W is
    maximal exactly when no such v exists.
    """
    g, d = problem.graph, problem.distance
    n = g.n_vertices
    if n > MAX_CLIQUE_VERTICES:
        raise ValueError(f"group mode refuses graphs over {MAX_CLIQUE_VERTICES} vertices")
    size = 1 << n
    idx = np.arange(size, dtype=np.int64)
    good = np.zeros(size, dtype=bool)
    good[candidate_subsets(g, d)] = True
    good[list(coverable_family(g, d))] = False
    lowbit = np.full(size, -1, dtype=np.int64)
    lowbit[1:] = np.log2(idx[1:] & -idx[1:]).astype(np.int64)
    target = problem.target
    found: list[tuple[int, ...]] = []

    def grow(basis: list[int], compat: np.ndarray, last: int, support: int, pivots: int) -> bool:
        if problem.limit is not None and len(found) >= problem.limit:
            return False
        if not compat.any():
            if len(basis) >= target:
                found.append(tuple(basis))
            return True
        need = target - len(basis)
        # later basis vectors avoid current pivots and pivot on fresh bits above ``last``
        allowed = compat & (idx & pivots == 0) & (lowbit > last)
        if need > 0:
            fresh = ((size - 1) >> (last + 1) << (last + 1)) & ~support
            if fresh.bit_count() < need or np.count_nonzero(allowed) < (1 << need) - 1:
                return True
        allowed &= (support >> np.maximum(lowbit, 0) & 1) == 0
        for c in np.flatnonzero(allowed).tolist():
            p = c & -c
            if not grow(basis + [c], compat & compat[idx ^ c], p.bit_length() - 1, support | c, pivots | p):
                return False
        return True

    grow([], good.copy(), -1, 0, 0)
    groups = [CodingClique.from_generators(list(key)) for key in found]
    if problem.maximum_only and groups:
        top = max(c.k for c in groups)
        groups = [c for c in groups if c.k == top]
    groups.sort(key=lambda c: (-c.k, c.canonical_generators()))
    return groups


def search(problem: SearchProblem) -> list[CodingClique]:
    """Find coding cliques (or coding groups) meeting the size target.

    Returns maximal solutions only, largest first, then in canonical order.  An
    unreachable target yields an empty list.
    """
    if problem.mode == "clique":
        result = _clique_search(problem)
    else:
        result = _group_search(problem)
    log.debug("search %s d=%d: %d results", problem.mode, problem.distance, len(result))
    return result


def extract_stabilizer(g: Graph, clique: CodingClique) -> list[Pauli]:
    """Graph stabilizers G_S for a basis of {S : |S n C_i| even for every generator C_i}."""
    if not clique.is_group:
        raise ValueError("stabilizer extraction needs a coding group")
    constraints = BinaryMatrix(tuple(clique.generators), g.n_vertices)
    return [graph_stabilizer(g, s) for s in nullspace_basis(constraints)]


def stabilizer_supports(g: Graph, clique: CodingClique) -> list[VertexSet]:
    if not clique.is_group:
        raise ValueError("stabilizer extraction needs a coding group")
    return nullspace_basis(BinaryMatrix(tuple(clique.generators), g.n_vertices))


def codeword_basis(generators, mu) -> VertexSet:
    """Codeword label selected by the bit vector ``mu`` (XOR of chosen generators)."""
    return combine(list(generators), list(mu))
