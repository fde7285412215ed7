import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eaqec.gf2 import members, vset
from eaqec.graphstate import (
    Graph,
    GraphFormatError,
    apply_pauli,
    basis_overlap,
    build_graph_state,
    codeword,
    graph_stabilizer,
    load_graph,
    parse_graph,
    reduce_error,
    save_graph,
    set_neighborhood,
)
from eaqec.pauli import Pauli

from conftest import random_graph


def triangle() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


def test_set_neighborhood_examples(star4, coffeepot):
    assert set_neighborhood(triangle(), vset([0, 1])) == vset([0, 1])
    assert set_neighborhood(star4, vset([1, 2])) == 0
    assert set_neighborhood(coffeepot.graph, vset([0])) == vset([1, 2, 3, 6, 7, 8, 9])


def test_graph_stabilizer_examples(star4, coffeepot):
    assert graph_stabilizer(star4, vset([0])).to_string() == "+XZZZ"
    g13 = graph_stabilizer(star4, vset([1, 3]))
    assert g13.letters() == "IXIX" and g13.phase == 0
    assert graph_stabilizer(coffeepot.graph, vset([2, 4, 8, 9])).letters() == "ZIXIXZZZYY"


def test_reduce_error_examples(star4):
    assert reduce_error(star4, 0, vset([2, 3])) == vset([2, 3])
    assert reduce_error(star4, vset([1]), vset([0])) == 0
    assert reduce_error(star4, vset([1]), 0) == vset([0])


def test_two_vertex_states():
    assert np.allclose(build_graph_state(Graph.empty(2)), [0.5] * 4)
    assert np.allclose(build_graph_state(Graph.from_edges(2, [(0, 1)])), [0.5, 0.5, 0.5, -0.5])


def test_vertex_zero_is_most_significant():
    # Z on vertex 0 flips the sign of the upper half of the amplitudes
    psi = build_graph_state(Graph.empty(2))
    out = apply_pauli(Pauli.single(2, 0, "Z"), psi)
    assert np.allclose(out, [0.5, 0.5, -0.5, -0.5])


def test_star_state_is_stabilized(star4):
    psi = build_graph_state(star4)
    for a in range(4):
        assert np.vdot(psi, apply_pauli(graph_stabilizer(star4, 1 << a), psi)) == pytest.approx(1)


def test_overlap_examples(star4):
    assert basis_overlap(star4, 0b1110, Pauli.identity(4), 0b1110) == pytest.approx(1)
    assert abs(basis_overlap(star4, 0, Pauli.identity(4), 0b1110)) < 1e-12
    assert abs(basis_overlap(star4, 0, Pauli.single(4, 1, "X"), vset([1, 2, 3]))) < 1e-12


def test_state_vector_limit():
    with pytest.raises(ValueError):
        build_graph_state(Graph.empty(15))


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0b00))
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


def test_graph_json_round_trip(tmp_path, coffeepot):
    path = tmp_path / "g.json"
    save_graph(coffeepot.graph, path)
    assert load_graph(path) == coffeepot.graph


@pytest.mark.parametrize(
    "edges, message",
    [
        ("[[0, 1],\n  [1, 1]]", "loop"),
        ("[[0, 1],\n  [1, 0]]", "duplicate"),
        ("[[0, 1],\n  [1, 7]]", "outside"),
    ],
)
def test_loader_reports_line(tmp_path, edges, message):
    path = tmp_path / "bad.json"
    path.write_text('{"vertices": 3,\n "edges": ' + edges + ',\n "pure": [0]}\n')
    with pytest.raises(GraphFormatError) as exc:
        load_graph(path)
    assert message in str(exc.value)
    assert f"{path}:3:" in str(exc.value)


def test_loader_rejects_malformed_records():
    with pytest.raises(GraphFormatError):
        parse_graph({"edges": []})
    with pytest.raises(GraphFormatError):
        parse_graph({"vertices": 2, "pure": [0, 0]})
    with pytest.raises(GraphFormatError):
        parse_graph({"vertices": 2, "edges": [[0]]})


def test_loader_reports_json_syntax_line(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"vertices": 3,\n "edges": [[0, 1],,]}\n')
    with pytest.raises(GraphFormatError, match=":2:"):
        load_graph(path)


@pytest.mark.parametrize("seed", range(25))
def test_every_vertex_stabilizer_fixes_the_state(seed):
    g = random_graph(random.Random(seed), max_vertices=10)
    psi = build_graph_state(g)
    assert abs(np.linalg.norm(psi) - 1) < 1e-12
    for a in range(g.n_vertices):
        assert np.max(np.abs(apply_pauli(graph_stabilizer(g, 1 << a), psi) - psi)) < 1e-12


@pytest.mark.parametrize("seed", range(10))
def test_graph_basis_is_orthonormal(seed):
    g = random_graph(random.Random(100 + seed), max_vertices=6)
    gamma = build_graph_state(g)
    labels = range(1 << g.n_vertices)
    w = np.array([codeword(g, c, gamma) for c in labels])
    assert np.max(np.abs(w.conj() @ w.T - np.eye(len(w)))) < 1e-12


@given(st.integers(0, 10**6), st.integers(0, 255), st.integers(0, 255))
@settings(max_examples=60, deadline=None)
def test_reduction_to_phase_flips(seed, omega, delta):
    g = random_graph(random.Random(seed), max_vertices=8)
    mask = g.all_vertices
    omega, delta = omega & mask, delta & mask
    n = g.n_vertices
    err = Pauli(n, omega, delta)
    reduced = Pauli(n, 0, reduce_error(g, omega, delta))
    gamma = build_graph_state(g)
    scalars = []
    for c in random.Random(seed).sample(range(1 << n), min(6, 1 << n)):
        lhs = apply_pauli(err, codeword(g, c, gamma))
        rhs = apply_pauli(reduced, codeword(g, c, gamma))
        lam = np.vdot(rhs, lhs)
        assert abs(abs(lam) - 1) < 1e-9, members(c)
        assert np.allclose(lhs, lam * rhs, atol=1e-12)
        # the only C dependence is the sign picked up moving X past Z[C]
        scalars.append(lam * (-1) ** (omega & c).bit_count())
    assert np.allclose(scalars, scalars[0])
