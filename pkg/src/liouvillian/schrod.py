"""Quasi-solvable polynomial potentials: psi'' = (U(x) - lam) psi.

After the exact rescale x -> c t that makes the leading coefficient 1,
M(t) = c^2 U(c t) - c^2 lam = A^2 + B(lam) with only the constant term of
B depending on the energy. For n >= 2 the degree d is fixed by b_{n-1}, and
the energies with a solution P exp(sign int A) are the common roots of the
x-coefficients of Delta_d(sign*A, B(lam)). Energies are reported in the
original variable, lam = lam_t / c^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .diffalg import delta_evaluate
from .exactcore import MultiPoly, QuadSurd, UniPoly, det_exact, from_multipoly, is_scalar, norm, parse_surd
from .kovacic import KovacicResult, build_band_matrix, kovacic_solve
from .reduce import MonicEquation, TraceFreeEquation, arithmetic_condition, complete_square, monic_rescale
from .roots import DEFAULT_MAX_ITER, DEFAULT_TOL, Root, polynomial_roots
from .spectral import DEFAULT_TERM_BUDGET

LAMBDA = "lam"


class NotQuasiSolvable(ValueError):
    """The potential fails the arithmetic condition for every energy."""


@dataclass(frozen=True)
class PotentialProblem:
    U: UniPoly
    n: int
    monic: MonicEquation  # c^2 U(c t), without the energy

    @property
    def scale(self):
        return self.monic.scale

    @property
    def energy_factor(self):
        """c^2: lam_t = c^2 * lam."""
        return self.scale * self.scale

    @classmethod
    def from_potential(cls, U: UniPoly) -> "PotentialProblem":
        if not all(is_scalar(c) for c in U.coeffs):
            raise ValueError("potential must have rational coefficients")
        if not U or U.degree() < 2 or U.degree() % 2:
            raise ValueError("potential must have even degree 2n >= 2")
        if U.lead() <= 0:
            raise ValueError("leading coefficient of the potential must be positive")
        return cls(U, int(U.degree()) // 2, monic_rescale(TraceFreeEquation(U)))

    def shifted(self, lam_t) -> UniPoly:
        """M(t) - lam_t."""
        return self.monic.M - UniPoly([lam_t], self.monic.M.var)

    def to_original(self, value):
        return _div(value, self.energy_factor)


def _div(value, k):
    if is_scalar(value):
        return norm(Fraction(value) / k)
    return value / k


@dataclass(frozen=True)
class PotentialCondition:
    status: str  # "quasi_solvable" | "exactly_solvable" | "refused"
    n: int
    d: int | None
    sign: int | None
    reason: str

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "n": self.n,
            "d": self.d,
            "sign": None if self.sign is None else ("+" if self.sign > 0 else "-"),
            "reason": self.reason,
        }


def arithmetic_condition_potential(U: UniPoly) -> PotentialCondition:
    prob = PotentialProblem.from_potential(U)
    if prob.n == 1:
        return PotentialCondition("exactly_solvable", 1, None, None, "quadratic potential: every d is reached by shifting lam")
    dec = complete_square(prob.monic.M)
    cands = arithmetic_condition(dec)
    if not cands:
        return PotentialCondition(
            "refused", prob.n, None, None, f"b_{prob.n - 1} = {dec.b_top} gives no non-negative integer d"
        )
    c = cands[0]
    return PotentialCondition("quasi_solvable", prob.n, c.d, c.sign, f"b_{prob.n - 1} = {dec.b_top}")


def _require(U: UniPoly) -> tuple[PotentialProblem, PotentialCondition]:
    prob = PotentialProblem.from_potential(U)
    cond = arithmetic_condition_potential(U)
    if cond.status == "refused":
        raise NotQuasiSolvable(cond.reason)
    return prob, cond


def _lam_poly(coeffs: list, var: str = LAMBDA) -> UniPoly:
    return UniPoly(coeffs, var)


def _to_lambda(c) -> UniPoly:
    if isinstance(c, MultiPoly):
        return from_multipoly(c, LAMBDA)
    return _lam_poly([c])


def _gcd_all(polys) -> UniPoly:
    g = _lam_poly([])
    for p in polys:
        g = g.gcd(p) if g else p.monic()
        if g.degree() == 0:
            return _lam_poly([1])
    return g if g else _lam_poly([])


def _back_to_original(p: UniPoly, prob: PotentialProblem) -> UniPoly:
    """p(lam_t) as a monic polynomial in the original lam = lam_t / c^2."""
    if p.degree() < 1:
        return p
    return p.compose_linear(prob.energy_factor).monic()


def _exact_levels(prob: PotentialProblem, d: int) -> list[tuple[int, object]]:
    """n = 1: (sign, lam_t) with sign*b0(lam_t) - 1 = 2d."""
    dec = complete_square(prob.monic.M)
    beta = dec.B.coeff(0)
    return [(s, norm(Fraction(beta) - s * (2 * d + 1))) for s in (1, -1)]


def spectral_polynomial(U: UniPoly, d: int | None = None, term_budget: int | None = DEFAULT_TERM_BUDGET) -> UniPoly:
    """Monic polynomial in lam whose roots are the energies with a Liouvillian solution.

    For quadratic U the degree is free and must be given as ``d``.
    """
    prob, cond = _require(U)
    if cond.status == "exactly_solvable":
        if d is None:
            raise ValueError("quadratic potential: pass d")
        out = _lam_poly([1])
        for _, lam_t in _exact_levels(prob, d):
            out = out * _lam_poly([-lam_t, 1])
        return _back_to_original(out, prob)
    if d is not None and d != cond.d:
        return _lam_poly([1])
    dec = complete_square(prob.monic.M)
    lam = MultiPoly.variable(LAMBDA)
    B = dec.B - UniPoly([lam], dec.B.var)
    delta = delta_evaluate(cond.d, dec.A * cond.sign, B, method="iterate", term_budget=term_budget)
    g = _gcd_all(_to_lambda(c) for c in delta.coeffs if c)
    return _back_to_original(g, prob)


def determinant_oracle(U: UniPoly) -> UniPoly:
    """Spectral polynomial by determinants of the band matrix with symbolic lam.

    A solution of degree <= d exists iff the (d+n) x (d+1) band matrix drops
    rank, i.e. all its maximal minors vanish; the monic gcd of those minors
    is returned. Independent of the obstruction recurrence.
    """
    prob, cond = _require(U)
    if cond.status != "quasi_solvable":
        raise ValueError("determinant oracle needs n >= 2")
    dec = complete_square(prob.monic.M)
    lam = MultiPoly.variable(LAMBDA)
    B = dec.B - UniPoly([lam], dec.B.var)
    d = cond.d
    rows = build_band_matrix(dec.A, B, d, cond.sign).rows
    live = [r for r in rows if any(x for x in r)]
    minors = []
    for pick in combinations(range(len(live)), d + 1):
        m = det_exact([live[i] for i in pick])
        if m:
            minors.append(_to_lambda(m))
    return _back_to_original(_gcd_all(minors), prob)


@dataclass
class SpectrumReport:
    n: int
    d: int | None
    sign: int | None
    bound: int | None
    spectral_polynomial: UniPoly | None
    eigenvalues: list[Root] = field(default_factory=list)
    converged: bool = True
    status: str = "quasi_solvable"
    reason: str = ""
    levels: list[dict] = field(default_factory=list)

    @property
    def distinct_count(self) -> int:
        return len(self.eigenvalues)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "reason": self.reason,
            "n": self.n,
            "d": self.d,
            "sign": None if self.sign is None else ("+" if self.sign > 0 else "-"),
            "bound": self.bound,
            "spectral_polynomial": None if self.spectral_polynomial is None else str(self.spectral_polynomial),
            "eigenvalues": [r.to_dict() for r in self.eigenvalues],
            "converged": self.converged,
            "levels": self.levels,
        }


def eigenvalues(
    U: UniPoly,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    levels: int = 5,
    term_budget: int | None = DEFAULT_TERM_BUDGET,
) -> SpectrumReport:
    """Energies with a Liouvillian eigenfunction.

    Quadratic potentials list the first ``levels`` degrees for both signs.
    """
    cond = arithmetic_condition_potential(U)
    if cond.status == "refused":
        return SpectrumReport(cond.n, None, None, None, None, status="refused", reason=cond.reason)
    if cond.status == "exactly_solvable":
        prob = PotentialProblem.from_potential(U)
        rows = []
        for d in range(levels):
            for s, lam_t in _exact_levels(prob, d):
                rows.append({"d": d, "sign": "+" if s > 0 else "-", "lam": str(prob.to_original(lam_t))})
        return SpectrumReport(1, None, None, None, None, status="exactly_solvable", reason=cond.reason, levels=rows)
    poly = spectral_polynomial(U, term_budget=term_budget)
    roots, converged = polynomial_roots(poly, tol, max_iter)
    report = SpectrumReport(cond.n, cond.d, cond.sign, cond.d + 1, poly, roots, converged, reason=cond.reason)
    if len(roots) > cond.d + 1:
        raise ArithmeticError(f"{len(roots)} distinct energies exceed the bound {cond.d + 1}")
    if not converged:
        report.status = "partial"
        report.reason = "root iteration did not converge"
    return report


def parse_energy(text: str):
    """Rational or quadratic-surd energy from text."""
    return parse_surd(text)


@dataclass
class EnergySolution:
    status: str  # "solvable" | "none"
    energy: object
    scale: object
    result: KovacicResult

    def to_dict(self) -> dict:
        out = {"status": self.status, "lambda": str(self.energy), "scale": str(self.scale)}
        out.update({"kovacic": self.result.to_dict()})
        return out


def solve_at_energy(U: UniPoly, lam) -> EnergySolution:
    """Solutions of psi'' = (U - lam) psi at an exact energy.

    The returned polynomials are in the rescaled variable t = x / scale.
    """
    if isinstance(lam, str):
        lam = parse_energy(lam)
    if isinstance(lam, QuadSurd) and not lam.b:
        lam = lam.a
    if not (is_scalar(lam) or isinstance(lam, QuadSurd)):
        raise TypeError("energy must be rational or a quadratic surd")
    prob = PotentialProblem.from_potential(U)
    lam_t = lam * prob.energy_factor
    if is_scalar(lam_t):
        lam_t = norm(lam_t)
    result = kovacic_solve(prob.shifted(lam_t))
    return EnergySolution("solvable" if result.verdict == "solvable" else "none", lam, prob.scale, result)


def turbiner(J: int) -> UniPoly:
    """x^6 - (4J+1) x^2."""
    return UniPoly([0, 0, -(4 * J + 1), 0, 0, 0, 1])


__all__ = [
    "EnergySolution",
    "NotQuasiSolvable",
    "PotentialCondition",
    "PotentialProblem",
    "SpectrumReport",
    "arithmetic_condition_potential",
    "determinant_oracle",
    "eigenvalues",
    "parse_energy",
    "solve_at_energy",
    "spectral_polynomial",
    "turbiner",
]
