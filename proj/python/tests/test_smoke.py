import os
from fractions import Fraction
from pathlib import Path

import pytest

import kgraph

DATA = Path(os.environ.get("KGRAPH_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def test_normal_form_sign():
    assert kgraph.Graph("2 1 0 1").normal_form() == ("2 1 0 1", 1)
    assert kgraph.Graph("2 1 1 0").normal_form() == ("2 1 0 1", -1)
    assert kgraph.Graph("2 3 3 4 0 1 0 1").normal_form()[1] == 0


def test_parse_error_is_value_error():
    with pytest.raises(ValueError):
        kgraph.Graph("2 1 0 7")
    with pytest.raises(ValueError):
        kgraph.GraphSum.from_text("2 1 0 1 1\n2 1 0 x 1\n")


def test_lhs_is_table_1():
    lhs = kgraph.lhs_trivector(Fraction(1, 4), Fraction(3, 2))
    assert len(lhs) == 39
    assert lhs == kgraph.GraphSum.from_file(str(DATA / "table1.txt"))
    assert kgraph.lhs_trivector(1, 6) == lhs.scaled(4)
    assert {abs(c) for _, c in lhs.terms()} == {Fraction(1, 4), Fraction(3, 4)}
    assert len(kgraph.collect_orbits(lhs)) == 9


def test_bracket_of_wedges():
    w = kgraph.wedge()
    assert kgraph.schouten_bracket(w, w) == kgraph.jacobiator_sum().scaled(2)


def test_table_3_factorizes():
    text = (DATA / "table3.txt").read_text()
    assert kgraph.expand_leibniz_text(text) == kgraph.lhs_trivector(1, 6)
    assert kgraph.verify_factorization_text(text, kgraph.lhs_trivector(1, 6))


def test_ansatz_counts():
    c = kgraph.ansatz_counts()
    assert c["patterns"] == 1132
    assert c["class_sizes"] == [216, 432, 108, 288, 24, 64]


def test_solver_round_trip():
    target = kgraph.GraphSum.from_file(str(DATA / "table1.txt"))
    lines = kgraph.solve_factorization(target)
    assert lines is not None and len(lines) <= 27
    assert kgraph.verify_factorization_text("\n".join(lines), target)
    assert kgraph.solve_factorization(kgraph.lhs_trivector(1, 1)) is None


def test_poisson_example():
    P = kgraph.Multivector.from_file(str(DATA / "poisson_example.txt"))
    assert P == kgraph.Multivector.jacobian("x", "x*y*z + y")
    assert kgraph.jacobi_check(P)
    bracket = kgraph.schouten_components(P, kgraph.gamma1(P))
    assert bracket.components()[(1, 2, 3)] == "36*x1^6*x2*x3 + 48*x1^5*x2"
    assert kgraph.annihilating_ratio(P) == (1, 6)
    assert kgraph.evaluate(kgraph.lhs_trivector(1, 6), P).is_zero()


def test_graph_evaluation_matches_formula():
    P = kgraph.Multivector.random(3, 3, 12)
    assert kgraph.evaluate(kgraph.tetra_flow(1, 0), P) == kgraph.gamma1(P)
    assert kgraph.evaluate(kgraph.tetra_flow(0, 1), P) == kgraph.gamma2(P)
