"""Normal forms for second-order equations with polynomial coefficients.

u'' + P u' + Q u = 0  --(gauge u = exp(-1/2 int P) y)-->  y'' = R y
y'' = R y             --(x -> c x)-->                    y'' = M y, M monic
M                     --(complete the square)-->         M = A^2 + B
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactcore import MultiPoly, QuadSurd, UniPoly, is_scalar, rational_root
from .exactcore.scalars import norm

DEFAULT_MAX_D = 64


class DegenerateEquation(ValueError):
    pass


class IrrationalRescale(ValueError):
    pass


@dataclass(frozen=True)
class GeneralEquation:
    """u'' + P(x) u' + Q(x) u = 0 with deg P <= n, deg Q <= 2n."""

    P: UniPoly
    Q: UniPoly
    n: int

    @classmethod
    def infer(cls, P: UniPoly, Q: UniPoly) -> "GeneralEquation":
        dp = P.degree() if P else 0
        dq = Q.degree() if Q else 0
        return cls(P, Q, max(int(dp), (int(dq) + 1) // 2))


@dataclass(frozen=True)
class TraceFreeEquation:
    """y'' = R(x) y; ``gauge`` is G with u = exp(G) y (empty when none applied)."""

    R: UniPoly
    gauge: UniPoly | None = None

    @property
    def n(self) -> int:
        return int(self.R.degree()) // 2

    def gauge_text(self) -> str:
        if self.gauge is None or not self.gauge:
            return "1"
        return f"exp({self.gauge})"


@dataclass(frozen=True)
class MonicEquation:
    """y'' = M(x) y with M monic; M(t) = c^2 R(c t)."""

    M: UniPoly
    scale: object = 1


@dataclass(frozen=True)
class MonicDecomposition:
    A: UniPoly
    B: UniPoly
    n: int

    @property
    def b_top(self):
        """Coefficient b_{n-1} of x^(n-1) in B."""
        return self.B.coeff(self.n - 1)

    def recompose(self) -> UniPoly:
        return self.A * self.A + self.B


@dataclass(frozen=True)
class ArithmeticCandidate:
    sign: int
    d: int


def dalembert(eq: GeneralEquation) -> TraceFreeEquation:
    """R = P^2/4 + P'/2 - Q, with gauge u = exp(-1/2 int P) y."""
    P, Q, n = eq.P, eq.Q, eq.n
    if P.degree() > n or Q.degree() > 2 * n:
        raise ValueError(f"need deg P <= {n} and deg Q <= {2 * n}")
    R = P * P * Fraction(1, 4) + P.derivative() * Fraction(1, 2) - Q
    lead = R.coeff(2 * n)
    if not lead:
        p_n, q_2n = P.coeff(n), Q.coeff(2 * n)
        raise DegenerateEquation(
            f"degenerate equation: p_n^2/4 - q_2n = ({p_n})^2/4 - ({q_2n}) vanishes, "
            f"so deg R < {2 * n}"
        )
    gauge = P.integral() * Fraction(-1, 2)
    return TraceFreeEquation(R, gauge)


def monic_rescale(eq: TraceFreeEquation, scale=None, numeric: bool = False) -> MonicEquation:
    """Rescale x -> c x so that y'' = c^2 R(c x) y has monic coefficient.

    ``c`` is the positive rational (2n+2)-th root of 1/r_2n; pass ``scale``
    to supply it explicitly, or ``numeric=True`` to accept a float root.
    """
    R = eq.R
    if not R or R.degree() % 2:
        raise ValueError("coefficient must have even degree")
    n = int(R.degree()) // 2
    lead = R.lead()
    if not is_scalar(lead):
        raise ValueError("leading coefficient must be rational")
    k = 2 * n + 2
    if scale is None:
        scale = rational_root(Fraction(1) / lead, k) if lead > 0 else None
        if scale is None:
            if not numeric:
                raise IrrationalRescale("irrational rescale; supply scale or use --numeric")
            if lead < 0:
                raise IrrationalRescale("negative leading coefficient has no real rescale")
            scale = float(lead) ** (-1.0 / k)
            coeffs = [float(c) * scale ** (2 + j) for j, c in enumerate(R.coeffs)]
            coeffs[-1] = 1.0
            return MonicEquation(UniPoly(coeffs, R.var), scale)
    elif scale**k * lead != 1:
        raise ValueError(f"scale {scale} does not satisfy scale^{k} * r_2n = 1")
    M = R.compose_linear(scale) * (scale * scale)
    return MonicEquation(M, norm(scale) if is_scalar(scale) else scale)


def complete_square(M: UniPoly) -> MonicDecomposition:
    """Unique A monic of degree n, deg B <= n-1, with A^2 + B = M."""
    if not M or M.degree() % 2 or M.degree() < 2:
        raise ValueError("M must have even degree 2n >= 2")
    if M.lead() != 1:
        raise ValueError("M must be monic")
    n = int(M.degree()) // 2
    a = [0] * (n + 1)
    a[n] = 1
    half = Fraction(1, 2)
    # coefficient of x^(2n-k) in A^2 is 2 a_{n-k} plus products of already known a's
    for k in range(1, n + 1):
        target = M.coeff(2 * n - k)
        acc = 0
        for i in range(n - k + 1, n + 1):
            j = 2 * n - k - i
            if n - k < j <= n and a[i] and a[j]:
                acc = acc + a[i] * a[j]
        a[n - k] = (target - acc) * half
    A = UniPoly(a, M.var)
    B = M - A * A
    if B.degree() > n - 1:
        raise ArithmeticError("completing the square left a high-degree remainder")
    return MonicDecomposition(A, B, n)


def arithmetic_condition(dec: MonicDecomposition) -> list[ArithmeticCandidate]:
    """All (sign, d) with sign*b_{n-1} - n = 2d, d a non-negative integer.

    For n >= 1 at most one sign can qualify, so the list has length 0 or 1.
    """
    b = dec.b_top
    if isinstance(b, MultiPoly):
        if not b.is_constant():
            raise ValueError(f"b_{dec.n - 1} = {b} is symbolic")
        b = b.constant_value()
    if isinstance(b, QuadSurd) and not b.b:
        b = b.a
    if not is_scalar(b):
        raise ValueError(f"b_{dec.n - 1} = {b} is not rational")
    out = []
    for sign in (1, -1):
        v = Fraction(sign * b - dec.n)
        if v >= 0 and v.denominator == 1 and v.numerator % 2 == 0:
            out.append(ArithmeticCandidate(sign, v.numerator // 2))
    return out


def translate_to_depressed(M: UniPoly) -> tuple[UniPoly, object]:
    """Shift x so that A has no x^(n-1) term; returns (M(x + h), h)."""
    dec = complete_square(M)
    h = dec.A.coeff(dec.n - 1) * Fraction(-1, dec.n)
    if is_scalar(h):
        h = norm(h)
    return M.compose_linear(1, h), h
