from __future__ import annotations

import random
from fractions import Fraction

import pytest
from instances import random_instances

from liouvillian.diffalg import delta_evaluate
from liouvillian.exactcore import (
    MultiPoly,
    QuadSurd,
    UniPoly,
    det_exact,
    null_space_exact,
    parse_multipoly,
    parse_unipoly,
    rank_exact,
)
from liouvillian.kovacic import (
    AuxiliaryEquation,
    band_minor_conditions,
    build_band_matrix,
    canonical_coefficient,
    canonical_integrability,
    canonical_solution,
    canonical_sparsity_ok,
    kernel_polynomials,
    kovacic_solve,
    polynomial_solutions,
    sextic_band_entries,
)

X = parse_unipoly


def test_auxiliary_seeds():
    aux = AuxiliaryEquation(1, X("x^2 + 1"), X("4*x"))
    assert aux.l0 == X("-2*x^2 - 2")
    assert aux.r0 == X("2*x")
    minus = AuxiliaryEquation(-1, X("x^2 + 1"), X("4*x"))
    assert minus.l0 == X("2*x^2 + 2")
    assert minus.r0 == X("6*x")


def test_band_matrix_shape_and_corner():
    A, B = X("x^3 + 2*x + 1"), X("7*x^2 - x")
    for sign in (1, -1):
        for d in range(5):
            band = build_band_matrix(A, B, d, sign)
            assert len(band.rows) == d + 3 and len(band.rows[0]) == d + 1
            assert band.corner == sign * (2 * d + 3 - sign * 7)
            assert all(x == 0 for x in band.rows[-1][:-1])


def test_band_matrix_nested_blocks():
    A, B = X("x^2 - 3*x + 1"), X("5*x + 2")
    big = build_band_matrix(A, B, 4, 1).rows
    small = build_band_matrix(A, B, 3, 1).rows
    for i in range(len(small) - 1):
        assert big[i][:4] == small[i]


def test_band_bandwidth():
    A, B = X("x^3 + x^2 + 1"), X("x^2 + 1")
    rows = build_band_matrix(A, B, 6, 1).rows
    for i, row in enumerate(rows):
        nz = [k for k, v in enumerate(row) if v]
        if nz:
            assert max(nz) - min(nz) <= 3 + 2


def test_sextic_entries_match_band_matrix():
    a2, a1, a0, b2, b1, b0 = (MultiPoly.variable(v) for v in ("a2", "a1", "a0", "b2", "b1", "b0"))
    A = UniPoly([a0, a1, a2, 1])
    B = UniPoly([b0, b1, b2])
    d = 5
    rows = build_band_matrix(A, B, d, -1).rows
    for k in range(d + 1):
        e = sextic_band_entries(A, B, k)
        for off, name in ((-2, "eta"), (-1, "zeta"), (0, "alpha"), (1, "beta"), (2, "gamma")):
            col = k + off
            if 0 <= col <= d:
                assert rows[k][col] == e[name]
    assert sextic_band_entries(A, B, 2)["alpha"] == -5 * a1 - b0
    assert sextic_band_entries(A, B, 2)["eta"] == -b2 - 3


def test_harmonic_kernel_condition():
    b0 = MultiPoly.variable("b0")
    rows = build_band_matrix(X("x"), UniPoly([b0]), 1, 1).rows
    # 2x2 system, nontrivial kernel iff determinant vanishes
    assert det_exact(rows).is_scalar_multiple_of(parse_multipoly("(b0 - 1)*(b0 - 3)"))
    assert polynomial_solutions(X("x"), X("3"), 1, 1) == [X("x")]
    assert polynomial_solutions(X("x"), X("5"), 1, 1) == []


def test_quartic_first_variety():
    a0, b0 = MultiPoly.variable("a0"), MultiPoly.variable("b0")
    A, B = UniPoly([a0, 0, 1]), UniPoly([b0, 4])
    _, (cond,) = band_minor_conditions(A, B, 1, 1)
    assert cond.is_scalar_multiple_of(parse_multipoly("b0^2 + 4*a0"))
    assert polynomial_solutions(X("x^2 - 1"), X("4*x + 2"), 1, 1) == [X("x - 1")]
    assert polynomial_solutions(X("x^2 + 1"), X("4*x + 7"), 1, 1) == []


def test_examples_from_solver():
    r = kovacic_solve(X("x^2 + 3"))
    assert r.verdict == "solvable" and [s.P for s in r.solutions] == [X("x")]
    assert r.solutions[0].y1() == "(x)*exp(1/2*x^2)"
    r = kovacic_solve(X("x^4 + 8*x"))
    assert [s.P for s in r.solutions] == [X("x^3 + 1")]
    assert r.solutions[0].y1() == "(x^3 + 1)*exp(1/3*x^3)"
    r = kovacic_solve(X("x^2 + 2"))
    assert r.verdict == "SL2" and r.reason == "arithmetic condition fails"
    r = kovacic_solve(X("x^3 + 1"))
    assert r.verdict == "SL2" and r.reason == "odd degree"


def test_solver_rejects_non_monic():
    with pytest.raises(ValueError):
        kovacic_solve(X("2*x^2 + 3"))


def test_max_d_budget():
    r = kovacic_solve(X("x^2 + 41"), max_d=5)
    assert r.verdict == "SL2" and r.candidates[0].status == "budget_exhausted"


@pytest.mark.parametrize("n, d, expected", [(1, 0, True), (1, 7, True), (2, 2, False), (2, 3, True), (3, 5, True), (3, 2, False)])
def test_canonical_predicate(n, d, expected):
    assert canonical_integrability(n, d) is expected


def test_canonical_solutions():
    assert canonical_solution(2, 0).P == X("1")
    assert canonical_solution(2, 3).P == X("x^3 + 1")
    P = canonical_solution(1, 2, -1).P
    assert P == X("x^2 - 1/2")
    assert canonical_sparsity_ok(P, 1)
    with pytest.raises(ValueError):
        canonical_solution(2, 2)


def test_canonical_family_nonempty_varieties():
    for n in range(1, 5):
        for d in range(2 * (n + 1) + 2):
            for sign in (1, -1):
                r = kovacic_solve(canonical_coefficient(n, d, sign))
                assert (r.verdict == "solvable") == canonical_integrability(n, d)
                for s in r.solutions:
                    assert s.P.degree() == d and canonical_sparsity_ok(s.P, n) and s.verify()


def test_oracle_equivalence_property():
    for inst in random_instances(120, seed=99):
        via_delta = not delta_evaluate(inst.d, inst.A * inst.sign, inst.B, "iterate")
        via_kernel = bool(null_space_exact(build_band_matrix(inst.A, inst.B, inst.d, inst.sign).rows))
        result = kovacic_solve(inst.M)
        assert via_delta == via_kernel == (result.verdict == "solvable"), inst
        if inst.origin != "random":
            assert via_delta, inst
        for s in result.solutions:
            assert s.verify() and s.P.degree() == inst.d


def test_codimension_witness():
    # at solver-found points with no lower-degree solution, M_{d-1} has full column rank d
    for inst in random_instances(120, seed=7):
        if inst.d == 0:
            continue
        sols, degenerate = kernel_polynomials(inst.A, inst.B, inst.d, inst.sign)
        if sols and not degenerate:
            rows = build_band_matrix(inst.A, inst.B, inst.d - 1, inst.sign).rows
            assert rank_exact(rows) == inst.d


def test_disjointness():
    rng = random.Random(1)
    for _ in range(100):
        n = rng.randint(1, 3)
        M = UniPoly([Fraction(rng.randint(-9, 9)) for _ in range(2 * n)] + [1])
        r = kovacic_solve(M)
        for sign in (1, -1):
            degrees = {s.d for c in r.candidates if c.sign == sign for s in c.solutions}
            assert len(degrees) <= 1


def test_minor_conditions_agree_with_kernel():
    checked = 0
    for inst in random_instances(150, seed=31):
        if inst.n != 3 or inst.d == 0:
            continue
        principal, conds = band_minor_conditions(inst.A, inst.B, inst.d, inst.sign)
        if principal:
            checked += 1
            has = bool(polynomial_solutions(inst.A, inst.B, inst.d, inst.sign))
            assert has == all(c == 0 for c in conds)
    assert checked > 5


def test_surd_coefficients():
    r6 = QuadSurd(0, 1, 6)
    M = UniPoly([-2 * r6, 0, -9, 0, 0, 0, 1])
    (sol,) = kovacic_solve(M).solutions
    assert sol.verify()
    assert str(sol.P) == "x^3 - 1/2*sqrt(6)*x"


def test_degenerate_kernel_reported_separately():
    sols, degenerate = kernel_polynomials(X("x"), X("3"), 3, 1)
    # d=3 does not satisfy the arithmetic condition, but the degree-1 solution x sits in the kernel
    assert sols == [] and degenerate == [X("x")]
