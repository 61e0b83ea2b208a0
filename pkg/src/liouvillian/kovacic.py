"""Liouvillian solutions of y'' = M(x) y for monic polynomial M.

With M = A^2 + B, the equation is integrable exactly when, for one sign s,
s*b_{n-1} - n = 2d >= 0 and the auxiliary equation

    P'' + 2 s A P' - (B - s A') P = 0

has a monic polynomial solution P of degree d; then y1 = P exp(s int A).
Polynomial solutions of degree <= d are the kernel of a banded
(d+n) x (d+1) coefficient matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactcore import UniPoly, field_div, det_exact, is_scalar, null_space_exact, submatrix
from .reduce import DEFAULT_MAX_D, MonicDecomposition, arithmetic_condition, complete_square


@dataclass(frozen=True)
class AuxiliaryEquation:
    sign: int
    A: UniPoly
    B: UniPoly

    @property
    def l0(self) -> UniPoly:
        return self.A * (-2 * self.sign)

    @property
    def r0(self) -> UniPoly:
        return self.B - self.A.derivative() * self.sign

    def apply(self, P: UniPoly) -> UniPoly:
        """Left-hand side P'' + 2sAP' - (B - sA')P."""
        return P.derivative().derivative() - self.l0 * P.derivative() - self.r0 * P


@dataclass(frozen=True)
class BandMatrix:
    rows: list
    n: int
    d: int
    sign: int

    @property
    def corner(self):
        return self.rows[-1][-1]


@dataclass(frozen=True)
class LiouvillianSolution:
    P: UniPoly
    sign: int
    A: UniPoly
    B: UniPoly

    @property
    def d(self) -> int:
        return int(self.P.degree())

    def exponent(self) -> UniPoly:
        """F with y1 = P exp(F)."""
        return self.A.integral() * self.sign

    def y1(self) -> str:
        return f"({self.P})*exp({self.exponent()})"

    def y2(self) -> str:
        return f"y1*Integral(exp({self.exponent() * -2})/({self.P})^2, x)"

    def residual(self) -> UniPoly:
        return AuxiliaryEquation(self.sign, self.A, self.B).apply(self.P)

    def verify(self) -> bool:
        """Exact check that P satisfies its auxiliary equation."""
        return not self.residual()

    def to_dict(self) -> dict:
        return {
            "sign": "+" if self.sign > 0 else "-",
            "d": self.d,
            "P": str(self.P),
            "y1": self.y1(),
            "y2": self.y2(),
            "verified": self.verify(),
        }


def build_band_matrix(A: UniPoly, B: UniPoly, d: int, sign: int) -> BandMatrix:
    """Coefficient matrix of the auxiliary operator on polynomials of degree <= d.

    Column k holds the coefficients of the operator applied to x^k; row m
    is the coefficient of x^m. The last row has a single entry,
    sign*(2d + n - sign*b_{n-1}).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not A or A.lead() != 1:
        raise ValueError("A must be monic")
    n = int(A.degree())
    if B.degree() > n - 1:
        raise ValueError(f"deg B must be at most {n - 1}")
    aux = AuxiliaryEquation(sign, A, B)
    nrows = d + n
    cols = [aux.apply(UniPoly.monomial(k, var=A.var)) for k in range(d + 1)]
    rows = [[cols[k].coeff(m) for k in range(d + 1)] for m in range(nrows)]
    return BandMatrix(rows, n, d, sign)


def kernel_polynomials(A: UniPoly, B: UniPoly, d: int, sign: int) -> tuple[list[UniPoly], list[UniPoly]]:
    """(degree-exactly-d monic solutions, lower-degree kernel solutions)."""
    band = build_band_matrix(A, B, d, sign)
    basis = null_space_exact(band.rows)
    top = [v for v in basis if v[d]]
    low = [v for v in basis if not v[d]]
    solutions = []
    if top:
        pivot = top[0]
        for w in top[1:]:
            ratio = field_div(w[d], pivot[d])
            low.append([wi - ratio * pi for wi, pi in zip(w, pivot)])
        lead = pivot[d]
        solutions.append(UniPoly([field_div(c, lead) for c in pivot], A.var))
    degenerate = []
    for v in low:
        p = UniPoly(v, A.var)
        if p:
            degenerate.append(p.monic())
    return solutions, degenerate


def polynomial_solutions(A: UniPoly, B: UniPoly, d: int, sign: int) -> list[UniPoly]:
    """Monic degree-d polynomial solutions of the auxiliary equation (possibly empty)."""
    return kernel_polynomials(A, B, d, sign)[0]


@dataclass
class Candidate:
    sign: int
    d: int
    solutions: list[LiouvillianSolution] = field(default_factory=list)
    degenerate: list[UniPoly] = field(default_factory=list)
    status: str = "none"  # "found" | "none" | "budget_exhausted"

    def to_dict(self) -> dict:
        return {
            "sign": "+" if self.sign > 0 else "-",
            "d": self.d,
            "status": self.status,
            "P_d": [str(s.P) for s in self.solutions],
            "solutions": [s.to_dict() for s in self.solutions],
            "degenerate_kernel": [str(p) for p in self.degenerate],
        }


@dataclass
class KovacicResult:
    verdict: str  # "solvable" | "SL2"
    reason: str
    n: int | None
    decomposition: MonicDecomposition | None
    candidates: list[Candidate] = field(default_factory=list)

    @property
    def solutions(self) -> list[LiouvillianSolution]:
        return [s for c in self.candidates for s in c.solutions]

    def to_dict(self) -> dict:
        dec = self.decomposition
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "n": self.n,
            "A": str(dec.A) if dec else None,
            "B": str(dec.B) if dec else None,
            "b_top": str(dec.b_top) if dec else None,
            "candidates": [c.to_dict() for c in self.candidates],
        }


def kovacic_solve(M: UniPoly, max_d: int = DEFAULT_MAX_D) -> KovacicResult:
    """Decide integrability of y'' = M y and build the Liouvillian solutions."""
    if not M or M.degree() < 1:
        raise ValueError("M must have positive degree")
    if M.lead() != 1:
        raise ValueError("M must be monic")
    if M.degree() % 2:
        return KovacicResult("SL2", "odd degree", None, None)
    dec = complete_square(M)
    candidates = []
    for cand in arithmetic_condition(dec):
        c = Candidate(cand.sign, cand.d)
        candidates.append(c)
        if cand.d > max_d:
            c.status = "budget_exhausted"
            continue
        sols, degenerate = kernel_polynomials(dec.A, dec.B, cand.d, cand.sign)
        c.solutions = [LiouvillianSolution(P, cand.sign, dec.A, dec.B) for P in sols]
        c.degenerate = degenerate
        c.status = "found" if sols else "none"
    if any(c.solutions for c in candidates):
        return KovacicResult("solvable", "polynomial solution of the auxiliary equation", dec.n, dec, candidates)
    if not candidates:
        reason = "arithmetic condition fails"
    elif any(c.status == "budget_exhausted" for c in candidates):
        reason = f"degree above max-d={max_d}"
    else:
        reason = "auxiliary equation has no polynomial solution"
    return KovacicResult("SL2", reason, dec.n, dec, candidates)


def canonical_integrability(n: int, d: int) -> bool:
    """y'' = (x^2n +- (2d+n) x^(n-1)) y is integrable iff d = 0 or 1 mod n+1."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return d % (n + 1) in (0, 1)


def canonical_coefficient(n: int, d: int, sign: int = 1, var: str = "x") -> UniPoly:
    """x^2n + sign*(2d+n) x^(n-1)."""
    return UniPoly.monomial(2 * n, var=var) + UniPoly.monomial(n - 1, sign * (2 * d + n), var)


def canonical_sparsity_ok(P: UniPoly, n: int) -> bool:
    """Nonzero coefficients only at exponents congruent to deg P mod n+1."""
    d = int(P.degree())
    return all(not c or (d - k) % (n + 1) == 0 for k, c in enumerate(P.coeffs))


def canonical_solution(n: int, d: int, sign: int = 1) -> LiouvillianSolution:
    if not canonical_integrability(n, d):
        raise ValueError(f"canonical equation with n={n}, d={d} is not integrable")
    A = UniPoly.monomial(n)
    B = UniPoly.monomial(n - 1, sign * (2 * d + n))
    sols = polynomial_solutions(A, B, d, sign)
    if len(sols) != 1:
        raise ArithmeticError(f"expected one canonical solution, found {len(sols)}")
    P = sols[0]
    if not canonical_sparsity_ok(P, n):
        raise ArithmeticError(f"canonical polynomial {P} breaks the (n+1)-periodic sparsity")
    return LiouvillianSolution(P, sign, A, B)


def band_minor_conditions(A: UniPoly, B: UniPoly, d: int, sign: int):
    """Bordered-minor conditions for a degree-d solution.

    Returns ``(principal, conditions)``: the leading d x d minor, and the
    determinants obtained by appending each of rows d .. d+n-2 to the
    first d rows (the last row is the arithmetic condition and is left
    out). When ``principal`` is nonzero, a solution exists iff all
    conditions vanish; otherwise the conditions are inconclusive.
    """
    band = build_band_matrix(A, B, d, sign)
    rows, n = band.rows, band.n
    principal = det_exact(submatrix(rows, range(d), range(d))) if d else 1
    conditions = [det_exact(submatrix(rows, list(range(d)) + [r], range(d + 1))) for r in range(d, d + n - 1)]
    return principal, conditions


def sextic_band_entries(A: UniPoly, B: UniPoly, k: int) -> dict:
    """Closed-form entries of row k of the minus-sign band matrix for n = 3.

    With A = x^3 + a2 x^2 + a1 x + a0 and B = b2 x^2 + b1 x + b0, row k has
    eta at column k-2, zeta at k-1, alpha at k, beta at k+1, gamma at k+2.
    """
    a2, a1, a0 = A.coeff(2), A.coeff(1), A.coeff(0)
    b2, b1, b0 = B.coeff(2), B.coeff(1), B.coeff(0)
    return {
        "alpha": a1 * -(2 * k + 1) - b0,
        "beta": a0 * (-2 * (k + 1)),
        "gamma": (k + 2) * (k + 1),
        "zeta": a2 * (-2 * k) - b1,
        "eta": -2 * k - b2 + 1,
    }


def is_rational_equation(M: UniPoly) -> bool:
    return all(is_scalar(c) for c in M.coeffs)


__all__ = [
    "AuxiliaryEquation",
    "BandMatrix",
    "Candidate",
    "KovacicResult",
    "LiouvillianSolution",
    "band_minor_conditions",
    "build_band_matrix",
    "canonical_coefficient",
    "canonical_integrability",
    "canonical_solution",
    "canonical_sparsity_ok",
    "is_rational_equation",
    "kernel_polynomials",
    "kovacic_solve",
    "polynomial_solutions",
    "sextic_band_entries",
]
