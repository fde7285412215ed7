"""Code families, adjacency reconstruction from stabilizer rows, and CodeRecord persistence."""

from __future__ import annotations

import json
import logging
import warnings
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations
from pathlib import Path

from .codesearch import CodingClique, codeword_basis, extract_stabilizer, validate_clique
from .gf2 import VertexSet, members, row_reduce, span, vset
from .graphstate import MAX_STATEVECTOR_QUBITS, Graph, graph_stabilizer, parse_graph
from .pauli import Pauli
from .verify import VerificationReport, degenerate_pairs, kl_verify_statevector, symplectic_verify

log = logging.getLogger(__name__)

# (omega, unsigned Pauli string) for the five stabilizer generators of the [[9,5,3;1]] code
COFFEEPOT_ROWS: list[tuple[tuple[int, ...], str]] = [
    ((0,), "XZZZIIZZZZ"),
    ((1, 5, 8), "IXIIZXIZXZ"),
    ((2, 4, 8, 9), "ZIXIXZZZYY"),
    ((3, 6, 9), "ZIZXZZXZIX"),
    ((1, 2, 6, 7), "IXXZIZYYII"),
]

# the coding-group generators as listed, and the variant read off the exponents of the
# explicit codeword basis (where mu_1 never touches vertex 7); the two disagree on vertex 7
COFFEEPOT_GENERATORS = ((1, 5, 7), (2, 4, 7), (3, 4, 9), (3, 6, 7), (4, 5, 8))
COFFEEPOT_GENERATORS_ALT = ((1, 5), (2, 4, 7), (3, 4, 9), (3, 6, 7), (4, 5, 8))

COFFEEPOT_FIXTURE = "coffeepot.json"


class AdjacencyConflict(UserWarning):
    """The rows cannot all come from one graph."""


class LargeSolutionSet(UserWarning):
    """The rows leave many graphs possible; the returned list may be truncated."""


@dataclass
class CodeRecord:
    name: str
    graph: Graph
    generators: list[VertexSet]
    stabilizer: list[Pauli]
    n: int
    k: int
    d: int
    e: int
    verification: list[VerificationReport] = field(default_factory=list)
    provenance: str = ""

    @property
    def verified(self) -> bool:
        return bool(self.verification) and all(r.passed for r in self.verification)

    @property
    def clique(self) -> CodingClique:
        return CodingClique.from_generators(self.generators)

    def check_params(self) -> None:
        g = self.graph
        if len(self.generators) != self.k:
            raise ValueError(f"{len(self.generators)} generators for k={self.k}")
        if len(self.stabilizer) != g.n_vertices - self.k:
            raise ValueError(f"{len(self.stabilizer)} stabilizer generators, expected {g.n_vertices - self.k}")
        if g.n_pure != self.e or g.n_noisy != self.n:
            raise ValueError("graph pure/noisy counts disagree with (n, e)")

    def verify(self, oracle: str = "both") -> list[VerificationReport]:
        reports = []
        if oracle in ("symplectic", "both"):
            reports.append(symplectic_verify(self.stabilizer, self.graph.noisy, self.d))
        if oracle in ("statevector", "both") and self.graph.n_vertices <= MAX_STATEVECTOR_QUBITS:
            reports.append(kl_verify_statevector(self.graph, self.clique, self.d))
        if oracle not in ("symplectic", "statevector", "both"):
            raise ValueError(f"unknown oracle {oracle!r}")
        return reports

    def to_json(self) -> dict:
        g = self.graph
        return {
            "name": self.name,
            "vertices": g.n_vertices,
            "edges": [list(e) for e in g.edges()],
            "pure": members(g.pure),
            "group_generators": [members(c) for c in self.generators],
            "stabilizer": [p.to_string() for p in self.stabilizer],
            "params": {"n": self.n, "k": self.k, "d": self.d, "e": self.e},
            "verified": self.verified,
            "verification": [r.to_json() for r in self.verification],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data: dict) -> CodeRecord:
        graph = parse_graph(data)
        params = data["params"]
        rec = cls(
            name=data["name"],
            graph=graph,
            generators=[vset(c) for c in data["group_generators"]],
            stabilizer=[Pauli.from_string(s) for s in data["stabilizer"]],
            n=params["n"],
            k=params["k"],
            d=params["d"],
            e=params["e"],
            verification=[VerificationReport.from_json(r) for r in data.get("verification", [])],
            provenance=data.get("provenance", ""),
        )
        rec.check_params()
        return rec

    def save(self, path: str | Path) -> None:
        if not self.verified:
            raise ValueError(f"refusing to store unverified record {self.name}")
        Path(path).write_text(json.dumps(self.to_json(), indent=1) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> CodeRecord:
        return cls.from_json(json.loads(Path(path).read_text()))


def record_from_group(
    name: str, g: Graph, generators, d: int, provenance: str = "", oracle: str = "both"
) -> CodeRecord:
    gens = [c if isinstance(c, int) else vset(c) for c in generators]
    clique = CodingClique.from_generators(gens)
    rec = CodeRecord(
        name=name,
        graph=g,
        generators=gens,
        stabilizer=extract_stabilizer(g, clique),
        n=g.n_noisy,
        k=len(gens),
        d=d,
        e=g.n_pure,
        provenance=provenance,
    )
    rec.check_params()
    rec.verification = rec.verify(oracle)
    return rec


# ----------------------------------------------------------------- star family


def star_code(n: int) -> CodeRecord:
    """The [[n,1,n;1]] code on the star graph with the centre pure."""
    if n < 2:
        raise ValueError("star codes need n >= 2")
    g = Graph.star(n + 1, pure=(0,))
    gens = [g.noisy]
    stab = [graph_stabilizer(g, 1)] + [graph_stabilizer(g, 0b10 | 1 << j) for j in range(2, n + 1)]
    rec = CodeRecord(
        name=f"star-{n}",
        graph=g,
        generators=gens,
        stabilizer=stab,
        n=n,
        k=1,
        d=n,
        e=1,
        provenance=f"star graph S_{n + 1}, centre vertex 0 pure, coding group generated by V-{{0}}",
    )
    rec.check_params()
    # the listed generators must agree with the ones extracted from the coding group
    if row_reduce([p.symplectic() for p in stab])[0] != row_reduce([p.symplectic() for p in extract_stabilizer(g, rec.clique)])[0]:
        raise AssertionError("star stabilizer differs from the extracted one")
    rec.verification = rec.verify("both")
    if not rec.verified:
        raise AssertionError(f"star code n={n} failed verification")
    return rec


# ---------------------------------------------------- adjacency reconstruction


def _edge_index(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def reconstruct_adjacency(rows, n_vertices: int | None = None, limit: int = 4096) -> list[Graph]:
    """Every graph whose stabilizers G_omega match the given Pauli strings.

    ``rows`` holds ``(omega, pauli_string)`` pairs.  The X part of each string
    must equal omega; its Z part (Y counting as Z) pins N_omega, which is linear
    in the edge indicators.  Solutions come back in numeric order of their
    free-variable assignment; at most ``limit`` are returned.
    """
    rows = [(vset(om) if not isinstance(om, int) else om, Pauli.from_string(s)) for om, s in rows]
    if n_vertices is None:
        if not rows:
            raise ValueError("vertex count needed when no rows are given")
        n_vertices = rows[0][1].nqubits
    n = n_vertices
    pairs = _edge_index(n)
    col = {p: i for i, p in enumerate(pairs)}
    m = len(pairs)
    rhs_bit = 1 << m

    equations: list[int] = []
    for r, (omega, p) in enumerate(rows):
        if p.nqubits != n:
            raise ValueError(f"row {r}: length {p.nqubits}, expected {n}")
        if p.x != omega:
            warnings.warn(f"row {r}: X part {members(p.x)} differs from {members(omega)}", AdjacencyConflict)
            return []
        for v in range(n):
            eq = 0
            for a in members(omega):
                if a != v:
                    eq |= 1 << col[(min(a, v), max(a, v))]
            if p.z >> v & 1:
                eq |= rhs_bit
            equations.append(eq)
        basis, _ = row_reduce(equations)
        if rhs_bit in basis:
            warnings.warn(f"row {r} ({p.letters()}) conflicts with earlier rows", AdjacencyConflict)
            return []

    basis, pivots = row_reduce(equations)
    pivot_set = set(pivots)
    free = [j for j in range(m) if j not in pivot_set]
    if not rows:
        warnings.warn(f"no rows: all {2 ** len(free)} graphs on {n} vertices qualify", LargeSolutionSet)
    elif 1 << len(free) > limit:
        warnings.warn(f"{2 ** len(free)} solutions; returning the first {limit}", LargeSolutionSet)

    def solve(assign: int) -> int:
        x = 0
        for i, j in enumerate(free):
            if assign >> i & 1:
                x |= 1 << j
        # back-substitute: each basis row fixes its pivot from the free columns and rhs
        for b, p in zip(basis, pivots):
            val = (b >> m) & 1
            val ^= ((b & ~(1 << p) & (rhs_bit - 1)) & x).bit_count() & 1
            if val:
                x |= 1 << p
        return x

    out = []
    for assign in range(min(1 << len(free), limit)):
        x = solve(assign)
        edges = [pairs[j] for j in range(m) if x >> j & 1]
        out.append(Graph.from_edges(n, edges))
    return out


def coffeepot_rows() -> list[tuple[VertexSet, str]]:
    return [(vset(om), s) for om, s in COFFEEPOT_ROWS]


def coffeepot_reference_stabilizer() -> list[Pauli]:
    return [Pauli.from_string(s) for _, s in COFFEEPOT_ROWS]


def spans_equal_up_to_phase(a: list[Pauli], b: list[Pauli]) -> bool:
    return row_reduce([p.symplectic() for p in a])[0] == row_reduce([p.symplectic() for p in b])[0]


# ------------------------------------------------------------------- coffeepot


@dataclass
class CoffeepotSelection:
    graph: Graph
    generators: tuple[tuple[int, ...], ...]
    candidates: int
    passing: int
    variant_results: dict[str, bool]


def select_coffeepot(max_candidates: int = 4096) -> CoffeepotSelection:
    """Pick the reference-row-consistent graph carrying a genuine d=3 coding group.

    A candidate must (a) satisfy the coding-clique conditions for the group,
    (b) pass both distance oracles at d=3 and (c) have an extracted stabilizer
    spanning the reference rows.  Among survivors the graph with the fewest
    edges, then the lexicographically smallest edge list, is chosen.
    """
    graphs = reconstruct_adjacency(coffeepot_rows(), limit=max_candidates)
    target = coffeepot_reference_stabilizer()
    variants = {"generator-list": COFFEEPOT_GENERATORS, "codeword-exponents": COFFEEPOT_GENERATORS_ALT}
    variant_ok = {name: False for name in variants}
    passing = []
    for g0 in graphs:
        g = g0.with_pure((0,))
        for name, gens in variants.items():
            clique = CodingClique.from_generators([vset(c) for c in gens])
            if validate_clique(g, 3, clique):
                continue
            stab = extract_stabilizer(g, clique)
            if not spans_equal_up_to_phase(stab, target):
                continue
            if not symplectic_verify(stab, g.noisy, 3).passed:
                continue
            variant_ok[name] = True
            passing.append((len(g.edges()), g.edges(), name, g, gens))
    passing.sort(key=lambda t: t[:3])
    # the state-vector oracle is slow, so only the preferred survivor is re-checked with it
    for _, _, _, g, gens in passing:
        if kl_verify_statevector(g, CodingClique.from_generators([vset(c) for c in gens]), 3).passed:
            break
    else:
        raise RuntimeError(
            "no reconstructed graph supports either coding-group variant "
            f"(generator list {COFFEEPOT_GENERATORS} vs codeword exponents {COFFEEPOT_GENERATORS_ALT})"
        )
    return CoffeepotSelection(g, gens, len(graphs), len(passing), variant_ok)


def _fixture_graph() -> tuple[Graph, list[VertexSet], str] | None:
    try:
        text = resources.files("eaqec").joinpath("data").joinpath(COFFEEPOT_FIXTURE).read_text()
    except FileNotFoundError:
        return None
    data = json.loads(text)
    return parse_graph(data), [vset(c) for c in data["group_generators"]], data.get("provenance", "")


def coffeepot_code(use_fixture: bool = True) -> CodeRecord:
    """The verified [[9,5,3;1]] code on the coffeepot-like graph."""
    fixture = _fixture_graph() if use_fixture else None
    if fixture is not None:
        g, gens, provenance = fixture
    else:
        sel = select_coffeepot()
        g, gens = sel.graph, [vset(c) for c in sel.generators]
        provenance = coffeepot_provenance(sel)
    rec = record_from_group("coffeepot-9-5-3-1", g, gens, 3, provenance)
    if not rec.verified:
        raise RuntimeError("coffeepot code failed verification")
    if not spans_equal_up_to_phase(rec.stabilizer, coffeepot_reference_stabilizer()):
        raise RuntimeError("coffeepot stabilizer does not span the reference rows")
    return rec


def coffeepot_provenance(sel: CoffeepotSelection) -> str:
    verdicts = ", ".join(f"{k}={'pass' if v else 'fail'}" for k, v in sel.variant_results.items())
    return (
        f"adjacency reconstructed from the five reference stabilizer rows ({sel.candidates} solutions, "
        f"{sel.passing} passing); fewest-edge graph kept; coding-group variants: {verdicts}; "
        f"generators used: {[list(c) for c in sel.generators]}"
    )


def write_coffeepot_fixture(path: str | Path) -> CoffeepotSelection:
    sel = select_coffeepot()
    data = sel.graph.to_json()
    data["group_generators"] = [list(c) for c in sel.generators]
    data["provenance"] = coffeepot_provenance(sel)
    Path(path).write_text(json.dumps(data, indent=1) + "\n")
    return sel


# ------------------------------------------------------------ best distances

# best distances for e=1, indexed [n+e][k]; starred cells improved on earlier constructions
BEST_DISTANCES = {
    3: ["2", "1", "1"],
    4: ["3*", "2", "1", "1"],
    5: ["4*", "2", "2", "1", "1"],
    6: ["5*", "3*", "2", "2", "1", "1"],
    7: ["6*", "3*", "2", "2", "2", "1", "1"],
    8: ["7*", "3", "3", "2", "2", "2", "1", "1"],
    9: ["8*", "3", "3", "3*", "2", "2", "2", "1", "1"],
    10: ["9*", "4", "3", "3", "3*", "2", "2", "2", "1", "1"],
}


@dataclass
class DistanceCell:
    size: int
    k: int
    d: int
    starred: bool
    reproduced: bool | None
    note: str = ""

    def line(self) -> str:
        mark = "*" if self.starred else ""
        if self.reproduced is None:
            status = "not reproduced (search out of desk scope)"
        else:
            status = "reproduced" if self.reproduced else "MISMATCH"
        return f"n+e={self.size} k={self.k} d={self.d}{mark}: {status}{' ' + self.note if self.note else ''}"


def table1_regression() -> list[DistanceCell]:
    cells = []
    coffee = None
    for size, row in BEST_DISTANCES.items():
        for k, entry in enumerate(row, start=1):
            d = int(entry.rstrip("*"))
            cell = DistanceCell(size, k, d, entry.endswith("*"), None)
            if k == 1:
                rec = star_code(size - 1)
                ok = rec.verified and rec.d == d
                ok = ok and not symplectic_verify(rec.stabilizer, rec.graph.noisy, d + 1).passed
                cell.reproduced = ok
                cell.note = f"via {rec.name}"
            elif size == 10 and k == 5:
                coffee = coffee or coffeepot_code()
                cell.reproduced = coffee.verified and coffee.d == d and coffee.k == 5
                cell.note = f"via {coffee.name}"
            cells.append(cell)
    return cells


def coffeepot_degenerate_pairs(rec: CodeRecord) -> list[list[str]]:
    groups = degenerate_pairs(rec.stabilizer, rec.graph.all_vertices)
    return [[_single_label(p) for p in grp] for grp in groups]


def _single_label(p: Pauli) -> str:
    q = p.support.bit_length() - 1
    return f"{p.letters()[q]}{q}"


def codeword_labels(generators) -> list[VertexSet]:
    """Codeword labels for every mu, with mu read as a binary number (mu_1 most significant)."""
    k = len(generators)
    return [codeword_basis(generators, [(i >> (k - 1 - j)) & 1 for j in range(k)]) for i in range(1 << k)]


def group_span(generators) -> list[VertexSet]:
    return span([vset(c) if not isinstance(c, int) else c for c in generators])
