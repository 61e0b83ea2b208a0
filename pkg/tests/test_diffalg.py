from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liouvillian.diffalg import DiffPoly, delta_evaluate, delta_universal, jet_vars, phi_apply, phi_identity, phi_state
from liouvillian.exactcore import MultiPoly, UniPoly, parse_multipoly, parse_unipoly

# The first four universal obstructions, transcribed by hand (a''' is the
# third derivative of a, and so on).
UNIVERSAL_TABLE = [
    "b - a'",
    "2 a (a'' - b') + 4 b a' - 3 (a')^2 - b^2",
    "-9 b^2 a' - 15 (a')^3 - 2 (-3 a'' b' + 2 (a^2 (a''' - b'') + (a'')^2) + (b')^2)"
    " + b (-a''' + 2 a (3 b' - 5 a'') + 23 (a')^2 + b'') + a' (3 a''' - 2 a (7 b' - 9 a'') - 3 b'') + b^3",
    "2 (2 a'' + 2 a (b - 4 a') + 4 a^3 - b') (a'''' - 4 a^2 (b' - a'') + b (10 a'' - 4 b') + 10 a' b'"
    " + 8 a^3 (b - a') + 2 a (-a''' - 14 b a' + 12 (a')^2 + b'' + 2 b^2) - 16 a' a'' - b''')"
    " - (-5 a''' + a (26 a'' - 10 b') + 12 a^2 (b - 5 a') - 10 b a' + 21 (a')^2 + 16 a^4 + 3 b'' + b^2)"
    " (-a''' - 2 a (b' - a'') + 4 a^2 (b - a') - 6 b (a') + 5 a'^2 + b'' + b^2)",
]


@pytest.mark.parametrize("p", range(4))
def test_universal_table(p):
    assert delta_universal(p) == DiffPoly(parse_multipoly(UNIVERSAL_TABLE[p]))


def test_jet_naming():
    assert jet_vars(2) == ("a", "a'", "a''", "b", "b'", "b''")
    assert DiffPoly(parse_multipoly("a'' + b")).order == 2


@st.composite
def diffpolys(draw):
    names = jet_vars(2)
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        exps = tuple(draw(st.integers(0, 2)) for _ in names)
        terms[exps] = draw(st.integers(-5, 5))
    return DiffPoly(MultiPoly(names, terms))


@settings(max_examples=60, deadline=None)
@given(diffpolys(), diffpolys())
def test_derivation_is_leibniz(p, q):
    assert (p * q).derive() == p.derive() * q + p * q.derive()
    assert (p + q).derive() == p.derive() + q.derive()


@settings(max_examples=40, deadline=None)
@given(diffpolys())
def test_derivation_commutes_with_evaluation(p):
    A, B = parse_unipoly("x^3 - 2*x + 1"), parse_unipoly("5*x^2 + x/3")
    assert p.derive().evaluate(A, B) == p.evaluate(A, B).derivative()


def test_phi_step_agrees_with_full_matrix_map():
    state = phi_identity()
    full = state.matrix
    for p in range(1, 5):
        full = phi_apply(full)
        state = phi_state(p)
        assert state.matrix == full


@pytest.mark.parametrize("p", range(9))
def test_degree_bounds(p):
    D = delta_universal(p)
    assert D.degree_in_b() <= p + 1
    assert D.order == p + 1


def test_delta_is_minus_determinant():
    for p in range(5):
        assert delta_universal(p) == -phi_state(p).det()


def test_substitute_and_iterate_routes_agree():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(1, 3)
        A = UniPoly([rng.randint(-5, 5) for _ in range(n)] + [1])
        B = UniPoly([rng.randint(-9, 9) for _ in range(n)])
        p = rng.randint(0, 6)
        assert delta_evaluate(p, A, B, "substitute") == delta_evaluate(p, A, B, "iterate")


def test_frozen_sizes():
    # Term counts of the expanded universal obstructions, computed once and frozen.
    assert [len(delta_universal(p)) for p in range(9)] == [2, 5, 17, 47, 123, 291, 674, 1470, 3078]
