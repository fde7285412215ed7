import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eaqec.catalog import coffeepot_reference_stabilizer, star_code
from eaqec.codesearch import CodingClique, SearchProblem, extract_stabilizer, search
from eaqec.gf2 import vset
from eaqec.graphstate import Graph
from eaqec.pauli import Pauli
from eaqec.verify import (
    _walsh,
    VerificationReport,
    degenerate_pairs,
    format_syndrome,
    hamming_bound,
    hamming_bound_single_error,
    kl_verify_statevector,
    symplectic_verify,
    syndrome,
    syndrome_table,
)

from conftest import random_graph

STAR3 = [Pauli.from_string(s) for s in ["XZZZ", "IXXI", "IXIX"]]
STAR3_SYNDROMES = {
    "X1": "-++", "Y1": "---", "Z1": "+--",
    "X2": "-++", "Y2": "--+", "Z2": "+-+",
    "X3": "-++", "Y3": "-+-", "Z3": "++-",
}


def test_syndrome_examples():
    assert format_syndrome(syndrome(STAR3, Pauli.single(4, 1, "X"))) == "-++"
    assert format_syndrome(syndrome(STAR3, Pauli.single(4, 1, "Y"))) == "---"
    assert format_syndrome(syndrome(STAR3, Pauli.identity(4))) == "+++"


def test_syndrome_table_matches_star_code():
    assert dict(syndrome_table(STAR3, vset([1, 2, 3]))) == STAR3_SYNDROMES


def test_degenerate_pairs_small_cases():
    triple = degenerate_pairs(STAR3, vset([1, 2, 3]))
    assert [[p.letters() for p in grp] for grp in triple] == [["IXII", "IIXI", "IIIX"]]
    single = degenerate_pairs([Pauli.from_string("Z")], 1)
    assert [[p.letters() for p in grp] for grp in single] == [["X", "Y"]]


def test_degenerate_pairs_coffeepot():
    groups = degenerate_pairs(coffeepot_reference_stabilizer(), (1 << 10) - 1)
    labels = sorted(sorted(p.letters() for p in grp) for grp in groups)
    assert labels == sorted(
        [
            sorted(["ZIIIIIIIII", "IXIIIIIIII"]),
            sorted(["XIIIIIIIII", "IIIIIIIIIZ"]),
            sorted(["YIIIIIIIII", "IIIIIIYIII"]),
        ]
    )


def test_symplectic_star_code():
    report = symplectic_verify(STAR3, vset([1, 2, 3]), 3)
    assert report.passed and report.first_failure is None
    assert Pauli.from_string("IXXI") in report.degenerate_errors
    failed = symplectic_verify(STAR3, vset([1, 2, 3]), 4)
    assert not failed.passed and failed.first_failure["error"] == "IYYZ"


def test_symplectic_coffeepot_rows():
    stab = coffeepot_reference_stabilizer()
    assert symplectic_verify(stab, (1 << 10) - 2, 3).passed
    # qubit 0 exposed to noise breaks the code
    assert not symplectic_verify(stab, (1 << 10) - 1, 3).passed


def test_symplectic_rejects_bad_generators():
    with pytest.raises(ValueError):
        symplectic_verify([Pauli.from_string("XI"), Pauli.from_string("ZI")], 0b11, 2)
    with pytest.raises(ValueError):
        symplectic_verify([Pauli.from_string("XI"), Pauli.from_string("XI")], 0b11, 2)


def test_statevector_star_code(star4):
    group = CodingClique.from_generators([vset([1, 2, 3])])
    assert kl_verify_statevector(star4, group, 3).passed
    failed = kl_verify_statevector(star4, group, 4)
    assert not failed.passed
    assert failed.first_failure == {"error": "IYYZ", "codewords": ["{}", "{1,2,3}"]}


def test_statevector_coffeepot(coffeepot):
    report = kl_verify_statevector(coffeepot.graph, coffeepot.clique, 3)
    assert report.passed
    assert report.errors_checked == 27 + 36 * 9


def test_statevector_limit():
    with pytest.raises(ValueError):
        kl_verify_statevector(Graph.empty(15, pure=[0]), CodingClique((0,)), 2)


def test_report_round_trip():
    report = symplectic_verify(STAR3, vset([1, 2, 3]), 4)
    again = VerificationReport.from_json(report.to_json())
    assert again == report
    assert "FAIL" in report.summary()


def test_hamming_bound_examples():
    b = hamming_bound(3, 1, 3, 1)
    assert (b.lhs, b.rhs, b.violated) == (10, 8, True)
    b = hamming_bound(4, 1, 4, 1)
    assert (b.lhs, b.rhs, b.violated) == (13, 16, False)
    b = hamming_bound(5, 1, 5, 1)
    assert (b.lhs, b.rhs, b.violated) == (106, 32, True)


def test_hamming_bound_is_exact_for_large_n():
    b = hamming_bound(64, 1, 64, 1)
    assert b.rhs == 2**64 and isinstance(b.lhs, int)


def test_single_error_form_agrees_at_distance_three():
    for n in range(1, 12):
        for k in range(0, n + 1):
            for e in range(0, 3):
                lhs, rhs = hamming_bound_single_error(n, k, e)
                assert (lhs > rhs) == hamming_bound(n, k, 3, e).violated


def test_hamming_bound_rejects_bad_input():
    with pytest.raises(ValueError):
        hamming_bound(3, 1, 0, 1)


@given(st.integers(1, 30), st.integers(0, 30), st.integers(1, 30), st.integers(0, 5))
def test_hamming_bound_monotone(n, k, d, e):
    if hamming_bound(n, k, d, e).violated:
        assert hamming_bound(n, k + 1, d, e).violated
        assert hamming_bound(n, k, d + 1, e).violated


@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 7))
def test_syndrome_is_a_coset_invariant(x, z, coeffs):
    err = Pauli(4, x, z)
    elem = Pauli.identity(4)
    for i, g in enumerate(STAR3):
        if coeffs >> i & 1:
            elem = elem * g
    assert syndrome(STAR3, err * elem) == syndrome(STAR3, err)


@pytest.mark.parametrize("n", range(2, 8))
def test_star_family_distance_is_exact(n):
    rec = star_code(n)
    assert symplectic_verify(rec.stabilizer, rec.graph.noisy, n).passed
    assert not symplectic_verify(rec.stabilizer, rec.graph.noisy, n + 1).passed


def oracle_cases(count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_graph(rng, 7)
        d = rng.choice([2, 3])
        if d <= g.n_noisy:
            out.append((g, d))
    return out


@pytest.mark.parametrize("g, d", oracle_cases(40, 23))
def test_oracles_agree_on_search_results_and_one_step_beyond(g, d):
    for grp in search(SearchProblem(g, d, "group", 1))[:4]:
        stab = extract_stabilizer(g, grp)
        for dist in (d, min(d + 1, g.n_noisy)):
            a = symplectic_verify(stab, g.noisy, dist)
            b = kl_verify_statevector(g, grp, dist)
            assert a.passed == b.passed
            assert (a.first_failure or {}).get("error") == (b.first_failure or {}).get("error")
            assert a.errors_checked == b.errors_checked
            assert sorted(a.degenerate_errors) == sorted(b.degenerate_errors)


@pytest.mark.parametrize("n", [0, 1, 3, 7, 8, 9])
def test_walsh_transform_matches_explicit_sum(n):
    rng = np.random.default_rng(n)
    f = rng.random((2, 1 << n))
    idx = range(1 << n)
    h = np.array([[(-1) ** bin(i & t).count("1") for t in idx] for i in idx])
    assert np.allclose(_walsh(f), f @ h)
    big = rng.random((1, 1 << 13))
    assert np.allclose(_walsh(_walsh(big)) / (1 << 13), big)
