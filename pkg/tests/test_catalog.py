import json

import pytest

from eaqec.catalog import (
    COFFEEPOT_GENERATORS,
    COFFEEPOT_GENERATORS_ALT,
    AdjacencyConflict,
    CodeRecord,
    LargeSolutionSet,
    coffeepot_degenerate_pairs,
    coffeepot_reference_stabilizer,
    coffeepot_rows,
    record_from_group,
    reconstruct_adjacency,
    select_coffeepot,
    spans_equal_up_to_phase,
    star_code,
    table1_regression,
)
from eaqec.codesearch import CodingClique, validate_clique
from eaqec.gf2 import members, vset
from eaqec.graphstate import graph_stabilizer, set_neighborhood
from eaqec.pauli import Pauli
from eaqec.verify import kl_verify_statevector


def test_star_three_is_the_small_code():
    rec = star_code(3)
    assert (rec.n, rec.k, rec.d, rec.e) == (3, 1, 3, 1)
    expected = [Pauli.from_string(s) for s in ["XZZZ", "IXXI", "IXIX"]]
    assert spans_equal_up_to_phase(rec.stabilizer, expected)
    assert [r.oracle for r in rec.verification] == ["symplectic", "statevector"]


@pytest.mark.parametrize("n", [4, 9])
def test_star_parameters(n):
    rec = star_code(n)
    assert (rec.n, rec.k, rec.d, rec.e) == (n, 1, n, 1)
    assert rec.verified


def test_star_needs_two_qubits():
    with pytest.raises(ValueError):
        star_code(1)


def test_single_row_pins_one_neighbourhood():
    with pytest.warns(LargeSolutionSet):
        graphs = reconstruct_adjacency([((0,), "XZZZIIZZZZ")], limit=64)
    assert len(graphs) == 64
    for g in graphs:
        assert set_neighborhood(g, 1) == vset([1, 2, 3, 6, 7, 8, 9])


def test_all_rows_reproduce_themselves():
    rows = coffeepot_rows()
    graphs = reconstruct_adjacency(rows)
    assert len(graphs) == 1024
    for g in graphs[::37]:
        for omega, text in rows:
            assert graph_stabilizer(g, omega).letters() == text


def test_fixture_graph_is_among_solutions(coffeepot):
    graphs = reconstruct_adjacency(coffeepot_rows())
    assert coffeepot.graph.with_pure(()) in graphs


def test_empty_rows_give_every_graph():
    with pytest.warns(LargeSolutionSet):
        graphs = reconstruct_adjacency([], n_vertices=3)
    assert len(graphs) == 8 and len(set(graphs)) == 8


def test_x_part_mismatch_is_reported():
    with pytest.warns(AdjacencyConflict, match="row 0"):
        assert reconstruct_adjacency([((1,), "XZ")]) == []


def test_inconsistent_rows_are_reported():
    # G_0 claims N_0 = {1}, G_0 G_1 then needs Z on 1 cancelled against X_1 Z_0
    rows = [((0,), "XZI"), ((1,), "IXZ")]
    with pytest.warns(AdjacencyConflict, match="row 1"):
        assert reconstruct_adjacency(rows) == []


def test_row_length_mismatch():
    with pytest.raises(ValueError):
        reconstruct_adjacency([((0,), "XZ"), ((1,), "ZXI")])


def test_coffeepot_record(coffeepot):
    assert (coffeepot.n, coffeepot.k, coffeepot.d, coffeepot.e) == (9, 5, 3, 1)
    assert coffeepot.verified
    assert spans_equal_up_to_phase(coffeepot.stabilizer, coffeepot_reference_stabilizer())
    assert sorted(map(sorted, coffeepot_degenerate_pairs(coffeepot))) == [["X0", "Z9"], ["X1", "Z0"], ["Y0", "Y6"]]
    assert [members(c) for c in coffeepot.generators] == [list(c) for c in COFFEEPOT_GENERATORS]


def test_alternative_generators_fail_on_the_coffeepot(coffeepot):
    g = coffeepot.graph
    alt = CodingClique.from_generators([vset(c) for c in COFFEEPOT_GENERATORS_ALT])
    assert validate_clique(g, 3, alt) != []
    report = kl_verify_statevector(g, alt, 3)
    assert not report.passed
    assert report.first_failure == {"error": "IZIIIZIIII", "codewords": ["{}", "{1,5}"]}


def test_rebuilt_selection_matches_fixture(coffeepot):
    sel = select_coffeepot()
    assert sel.graph == coffeepot.graph
    assert sel.candidates == 1024 and sel.passing == 1024
    assert sel.variant_results == {"generator-list": True, "codeword-exponents": False}


def test_record_round_trip(tmp_path, coffeepot):
    path = tmp_path / "rec.json"
    coffeepot.save(path)
    data = json.loads(path.read_text())
    assert {"name", "vertices", "edges", "pure", "group_generators", "stabilizer", "params", "verified", "provenance"} <= set(data)
    loaded = CodeRecord.load(path)
    assert loaded.graph == coffeepot.graph and loaded.stabilizer == coffeepot.stabilizer
    assert loaded.verify() == coffeepot.verification


def test_unverified_records_are_not_saved(tmp_path, star4):
    rec = record_from_group("bad", star4, [vset([1])], 3, oracle="symplectic")
    assert not rec.verified
    with pytest.raises(ValueError):
        rec.save(tmp_path / "bad.json")


def test_record_parameter_checks(coffeepot):
    data = coffeepot.to_json()
    data["params"]["k"] = 4
    with pytest.raises(ValueError):
        CodeRecord.from_json(data)


def test_table1_regression():
    cells = {(c.size, c.k): c for c in table1_regression()}
    assert cells[(4, 1)].d == 3 and cells[(4, 1)].starred and cells[(4, 1)].reproduced
    assert cells[(3, 3)].d == 1 and cells[(3, 3)].reproduced is None
    assert "not reproduced" in cells[(3, 3)].line()
    assert cells[(10, 5)].d == 3 and cells[(10, 5)].reproduced
    assert all(cells[(s, 1)].reproduced and cells[(s, 1)].d == s - 1 for s in range(3, 11))
    assert sum(c.reproduced is None for c in cells.values()) == len(cells) - 9
