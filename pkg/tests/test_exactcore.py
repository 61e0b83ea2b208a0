from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liouvillian.exactcore import (
    MultiPoly,
    PolyParseError,
    QuadSurd,
    UniPoly,
    det_exact,
    mat_vec,
    null_space_exact,
    parse_multipoly,
    parse_surd,
    parse_unipoly,
    rank_exact,
    rational_root,
)

VARS = ("a0", "b0", "x")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_ints = st.integers(min_value=-9, max_value=9)


@st.composite
def multipolys(draw, max_terms=5, max_exp=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(st.integers(0, max_exp)) for _ in VARS)
        terms[exps] = draw(rationals)
    return MultiPoly(VARS, terms)


@st.composite
def unipolys(draw, max_deg=5):
    return UniPoly([draw(rationals) for _ in range(draw(st.integers(0, max_deg + 1)))])


@st.composite
def surds(draw):
    return QuadSurd(draw(rationals), draw(rationals), 6)


# -- ring axioms ----------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(multipolys(), multipolys(), multipolys())
def test_multipoly_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == 0
    assert p * 1 == p


@settings(max_examples=60, deadline=None)
@given(multipolys(), multipolys())
def test_multipoly_exact_division_inverts_multiplication(p, q):
    if q:
        assert (p * q).exact_div(q) == p


@settings(max_examples=60, deadline=None)
@given(unipolys(), unipolys(), unipolys())
def test_unipoly_ring_axioms(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()
    assert p.integral().derivative() == p


@settings(max_examples=60, deadline=None)
@given(unipolys(), unipolys())
def test_unipoly_division_identity(p, q):
    if not q:
        return
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.degree() < q.degree()


@settings(max_examples=60, deadline=None)
@given(unipolys(), unipolys())
def test_unipoly_gcd_divides_both(p, q):
    if not p and not q:
        return
    g = p.gcd(q)
    assert g.is_monic()
    for f in (p, q):
        if f:
            assert not f.divmod(g)[1]


@settings(max_examples=60, deadline=None)
@given(surds(), surds(), surds())
def test_quadratic_field_axioms(u, v, w):
    assert u * (v + w) == u * v + u * w
    assert (u * v) * w == u * (v * w)
    if v:
        assert (u / v) * v == u
    assert abs(complex(u * v) - complex(u) * complex(v)) < 1e-6 * (1 + abs(complex(u * v)))


# -- parsing and rendering ---------------------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(multipolys())
def test_parse_render_round_trip(p):
    assert parse_multipoly(p.render()) == p


@settings(max_examples=80, deadline=None)
@given(multipolys())
def test_json_round_trip(p):
    data = json.loads(json.dumps(p.to_json()))
    assert MultiPoly.from_json(data) == p


def test_parser_grammar():
    assert parse_unipoly("x^2 + 3") == UniPoly([3, 0, 1])
    assert parse_unipoly("2x(x-1)") == UniPoly([0, -2, 2])
    assert parse_unipoly("x**3/4 - 1/2") == UniPoly([Fraction(-1, 2), 0, 0, Fraction(1, 4)])
    assert parse_multipoly("a'' * b - (a')^2") == parse_multipoly("-a'^2 + b a''")


@pytest.mark.parametrize("text, pos", [("x^2 +* 3", 5), ("(x+1", 4), ("x^y", 2), ("x/(x+1)", 2), ("3 $ x", 2)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(PolyParseError) as info:
        parse_unipoly(text)
    assert info.value.pos == pos
    source, marker = info.value.caret().splitlines()
    assert marker.index("^") - source.index(text) == pos


def test_render_is_descending_grlex():
    p = parse_multipoly("b0 + a0*b0^2 + 3 - a0^3")
    assert p.render() == "-a0^3 + a0*b0^2 + b0 + 3"


def test_surd_parse_and_render():
    assert parse_surd("sqrt(24)") == QuadSurd(0, 2, 6)
    assert str(parse_surd("-2*sqrt(6)")) == "-2*sqrt(6)"
    assert str(parse_surd("1/2 + 3*sqrt(5)")) == "1/2 + 3*sqrt(5)"
    assert parse_surd("-3/4") == Fraction(-3, 4)


def test_rational_root():
    assert rational_root(Fraction(1, 256), 8) == Fraction(1, 2)
    assert rational_root(2, 4) is None


# -- linear algebra -----------------------------------------------------------------


def _leibniz_det(m):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term = term * m[i][perm[i]]
        total = total + term
    return total


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_permutation_expansion(m):
    assert det_exact(m) == _leibniz_det(m)


def test_symbolic_det_matches_permutation_expansion():
    rng = random.Random(3)
    names = ["a0", "b0"]
    for _ in range(10):
        n = rng.randint(1, 4)
        m = [
            [MultiPoly.variable(rng.choice(names)) * rng.randint(-3, 3) + rng.randint(-3, 3) for _ in range(n)]
            for _ in range(n)
        ]
        assert det_exact(m) == _leibniz_det(m)


def test_null_space_on_random_low_rank_matrices():
    rng = random.Random(7)
    for _ in range(150):
        rows, cols, k = rng.randint(1, 6), rng.randint(1, 6), rng.randint(0, 4)
        left = [[rng.randint(-4, 4) for _ in range(k)] for _ in range(rows)]
        right = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(cols)] for _ in range(k)]
        m = [[sum((left[i][t] * right[t][j] for t in range(k)), Fraction(0)) for j in range(cols)] for i in range(rows)]
        basis = null_space_exact(m)
        assert len(basis) == cols - rank_exact(m)
        for v in basis:
            assert all(x == 0 for x in mat_vec(m, v))


def test_null_space_over_quadratic_field():
    r6 = QuadSurd(0, 1, 6)
    m = [[r6, 2], [3, r6]]  # det = 6 - 6 = 0
    (v,) = null_space_exact(m)
    assert all(x == 0 for x in mat_vec(m, v))
