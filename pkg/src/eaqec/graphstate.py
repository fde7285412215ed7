"""Graphs with pure vertices, graph-state stabilizers and a small state-vector simulator.

Amplitude indexing: vertex 0 is the most significant bit of the
computational-basis index, so on two qubits the order is |00>, |01>, |10>, |11>
with the left digit belonging to vertex 0.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from .gf2 import MAX_VERTICES, VertexSet, check_within, members, vset
from .pauli import Pauli

MAX_STATEVECTOR_QUBITS = 14
ZERO_TOL = 1e-9


class GraphFormatError(ValueError):
    def __init__(self, message: str, edge: int | None = None):
        super().__init__(message)
        self.edge = edge


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph stored as neighbourhood bitmasks, plus the pure vertices."""

    n_vertices: int
    neighbors: tuple[int, ...]
    pure: VertexSet = 0

    def __post_init__(self) -> None:
        if not 0 < self.n_vertices <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n_vertices} outside 1..{MAX_VERTICES}")
        if len(self.neighbors) != self.n_vertices:
            raise ValueError("one neighbourhood per vertex required")
        check_within(self.pure, self.n_vertices)
        for a, na in enumerate(self.neighbors):
            check_within(na, self.n_vertices)
            if na >> a & 1:
                raise ValueError(f"self-loop on vertex {a}")
            for b in members(na):
                if not self.neighbors[b] >> a & 1:
                    raise ValueError(f"adjacency not symmetric at ({a},{b})")

    @classmethod
    def from_edges(cls, n_vertices: int, edges, pure=()) -> Graph:
        nbrs = [0] * n_vertices
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop on vertex {a}")
            if not (0 <= a < n_vertices and 0 <= b < n_vertices):
                raise ValueError(f"edge ({a},{b}) outside 0..{n_vertices - 1}")
            nbrs[a] |= 1 << b
            nbrs[b] |= 1 << a
        return cls(n_vertices, tuple(nbrs), vset(pure))

    @classmethod
    def star(cls, n_vertices: int, pure=(0,)) -> Graph:
        return cls.from_edges(n_vertices, [(0, j) for j in range(1, n_vertices)], pure)

    @classmethod
    def empty(cls, n_vertices: int, pure=()) -> Graph:
        return cls.from_edges(n_vertices, [], pure)

    @property
    def all_vertices(self) -> VertexSet:
        return (1 << self.n_vertices) - 1

    @property
    def noisy(self) -> VertexSet:
        return self.all_vertices & ~self.pure

    @property
    def n_pure(self) -> int:
        return self.pure.bit_count()

    @property
    def n_noisy(self) -> int:
        return self.n_vertices - self.n_pure

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n_vertices) for b in members(self.neighbors[a]) if a < b]

    def with_pure(self, pure) -> Graph:
        return Graph(self.n_vertices, self.neighbors, pure if isinstance(pure, int) else vset(pure))

    def adjacency(self) -> np.ndarray:
        m = np.zeros((self.n_vertices, self.n_vertices), dtype=np.uint8)
        for a, b in self.edges():
            m[a, b] = m[b, a] = 1
        return m

    def to_json(self) -> dict:
        return {"vertices": self.n_vertices, "edges": [list(e) for e in self.edges()], "pure": members(self.pure)}


def parse_graph(data: dict) -> Graph:
    """Build a graph from the ``{"vertices", "edges", "pure"}`` mapping, rejecting loops and duplicates."""
    try:
        n = int(data["vertices"])
        edges = data.get("edges", [])
        pure = data.get("pure", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"graph record needs an integer 'vertices' field: {exc}") from exc
    seen = set()
    for i, edge in enumerate(edges):
        if not isinstance(edge, (list, tuple)) or len(edge) != 2:
            raise GraphFormatError(f"edge {i}: expected a pair, got {edge!r}", i)
        a, b = int(edge[0]), int(edge[1])
        if a == b:
            raise GraphFormatError(f"edge {i}: loop on vertex {a}", i)
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(f"edge {i}: ({a},{b}) outside 0..{n - 1}", i)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphFormatError(f"edge {i}: duplicate edge ({a},{b})", i)
        seen.add(key)
    for v in pure:
        if not 0 <= int(v) < n:
            raise GraphFormatError(f"pure vertex {v} outside 0..{n - 1}")
    if len(set(pure)) != len(pure):
        raise GraphFormatError("duplicate pure vertex")
    return Graph.from_edges(n, [tuple(map(int, e)) for e in edges], [int(v) for v in pure])


_PAIR = re.compile(r"\[\s*-?\d+\s*,\s*-?\d+\s*\]|\[[^\[\]]*\]")


def _edge_line(text: str, index: int) -> int:
    """Line number of the ``index``-th entry of the "edges" list, or 0 if not found."""
    start = text.find('"edges"')
    if start < 0:
        return 0
    body = text.index("[", start) + 1
    for i, m in enumerate(_PAIR.finditer(text, body)):
        if i == index:
            return text.count("\n", 0, m.start()) + 1
    return 0


def load_graph(path: str | Path) -> Graph:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}:{exc.lineno}: {exc.msg}") from exc
    try:
        return parse_graph(data)
    except GraphFormatError as exc:
        lineno = _edge_line(text, exc.edge) if exc.edge is not None else 0
        raise GraphFormatError(f"{path}:{lineno}: {exc}", exc.edge) from exc


def save_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(g.to_json(), indent=1) + "\n")


def set_neighborhood(g: Graph, s: VertexSet) -> VertexSet:
    """Symmetric difference of the neighbourhoods of the vertices in ``s``."""
    out = 0
    for a in members(s):
        out ^= g.neighbors[a]
    return out


def vertex_stabilizer(g: Graph, a: int) -> Pauli:
    return Pauli(g.n_vertices, 1 << a, g.neighbors[a])


def graph_stabilizer(g: Graph, s: VertexSet) -> Pauli:
    """Product of vertex stabilizers over ``s`` taken in ascending vertex order."""
    check_within(s, g.n_vertices)
    out = Pauli.identity(g.n_vertices)
    for a in members(s):
        out = out * vertex_stabilizer(g, a)
    return out


def reduce_error(g: Graph, omega: VertexSet, delta: VertexSet) -> VertexSet:
    """Phase-flip support Omega with X[omega] Z[delta] |Gamma_C> = lam (-1)^|omega n C| Z[Omega] |Gamma_C>.

    ``lam`` has modulus one and does not depend on C.
    """
    return delta ^ set_neighborhood(g, omega)


# ---------------------------------------------------------------- state vectors


def _check_feasible(n: int) -> None:
    if n > MAX_STATEVECTOR_QUBITS:
        raise ValueError(f"{n} qubits exceeds the state-vector limit of {MAX_STATEVECTOR_QUBITS}")


def index_mask(mask: VertexSet, n: int) -> int:
    """Translate a vertex bitmask into a computational-basis index mask (vertex 0 = MSB)."""
    out = 0
    for v in members(mask):
        out |= 1 << (n - 1 - v)
    return out


class _Basis:
    """Cached index arrays for one qubit count."""

    def __init__(self, n: int):
        self.n = n
        self.idx = np.arange(1 << n, dtype=np.int64)

    @cached_property
    def bits(self) -> np.ndarray:
        # bits[:, v] is the value of vertex v in each basis index
        shifts = np.array([self.n - 1 - v for v in range(self.n)], dtype=np.int64)
        return ((self.idx[:, None] >> shifts) & 1).astype(np.int64)

    def parity(self, index_mask: int) -> np.ndarray:
        return (np.bitwise_count(self.idx & index_mask) & 1).astype(np.int64)


_BASES: dict[int, _Basis] = {}


def _basis(n: int) -> _Basis:
    if n not in _BASES:
        _BASES[n] = _Basis(n)
    return _BASES[n]


def build_graph_state(g: Graph) -> np.ndarray:
    """Apply a controlled-phase for every edge to |+>^n."""
    n = g.n_vertices
    _check_feasible(n)
    basis = _basis(n)
    amp = np.full(1 << n, 2.0 ** (-n / 2), dtype=complex)
    bits = basis.bits
    for a, b in g.edges():
        amp[(bits[:, a] & bits[:, b]) == 1] *= -1
    return amp


def apply_pauli(p: Pauli, psi: np.ndarray) -> np.ndarray:
    """Return ``p |psi>``; ``psi`` may carry extra leading batch axes."""
    n = p.nqubits
    _check_feasible(n)
    basis = _basis(n)
    xm, zm = index_mask(p.x, n), index_mask(p.z, n)
    signs = 1 - 2 * basis.parity(zm)
    out = psi * signs
    out = out[..., basis.idx ^ xm]
    return out * (1j ** p.phase)


def codeword(g: Graph, c: VertexSet, gamma: np.ndarray | None = None) -> np.ndarray:
    """|Gamma_C> = Z[c] |Gamma>."""
    if gamma is None:
        gamma = build_graph_state(g)
    return apply_pauli(Pauli(g.n_vertices, 0, c), gamma)


def basis_overlap(g: Graph, c: VertexSet, e: Pauli, c2: VertexSet) -> complex:
    """<Gamma_c| e |Gamma_c2> from explicit state vectors."""
    gamma = build_graph_state(g)
    bra = codeword(g, c, gamma)
    ket = apply_pauli(e, codeword(g, c2, gamma))
    return complex(np.vdot(bra, ket))
