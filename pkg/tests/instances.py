"""Random (A, B, d, sign) instances with the arithmetic condition imposed.

Roughly half are built to have a degree-d solution; the rest are random
and almost never do. All coefficients have numerator and denominator <= 20.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from liouvillian.exactcore import UniPoly

BOUND = 20


@dataclass(frozen=True)
class Instance:
    A: UniPoly
    B: UniPoly
    d: int
    sign: int
    origin: str

    @property
    def n(self) -> int:
        return int(self.A.degree())

    @property
    def M(self) -> UniPoly:
        return self.A * self.A + self.B


def _small(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-BOUND, BOUND), rng.randint(1, 4))


def _bounded(*polys: UniPoly) -> bool:
    for p in polys:
        for c in p.coeffs:
            c = Fraction(c)
            if abs(c.numerator) > BOUND or c.denominator > BOUND:
                return False
    return True


def _random(rng, n, d, sign) -> Instance:
    A = UniPoly([_small(rng) for _ in range(n)] + [1])
    B = UniPoly([_small(rng) for _ in range(n - 1)] + [sign * (2 * d + n)])
    return Instance(A, B, d, sign, "random")


def _trivial(rng, n, sign) -> Instance:
    # d = 0: B = sign*A' makes P = 1 a solution
    A = UniPoly([_small(rng) for _ in range(n)] + [1])
    return Instance(A, A.derivative() * sign, 0, sign, "d0")


def _harmonic(rng, d, sign) -> Instance:
    A = UniPoly([_small(rng), 1])
    return Instance(A, UniPoly([sign * (2 * d + 1)]), d, sign, "n1")


def _interpolated(rng, n, d, sign) -> Instance | None:
    """P with simple rational roots; A fitted so that P divides P'' + 2sAP'."""
    roots = rng.sample(range(-3, 4), d)
    P = UniPoly([1])
    for r in roots:
        P = P * UniPoly([-r, 1])
    dP, ddP = P.derivative(), P.derivative().derivative()
    # unknown a_0..a_{n-1}; A(rho) = -s P''(rho) / (2 P'(rho)) at each root
    free = [_small(rng) for _ in range(n - d)]
    rows, rhs = [], []
    for r in roots:
        target = Fraction(-sign * ddP(r), 2 * dP(r)) - Fraction(r) ** n
        row = [Fraction(r) ** k for k in range(n)]
        # fix the top n-d unknowns to random values, solve the rest
        fixed = sum((row[d + j] * free[j] for j in range(n - d)), Fraction(0))
        rows.append(row[:d])
        rhs.append(target - fixed)
    sol = _solve(rows, rhs)
    if sol is None:
        return None
    A = UniPoly(sol + free + [1])
    num = ddP + A * dP * (2 * sign) + A.derivative() * P * sign
    quo, rem = num.divmod(P)
    if rem:
        return None
    B = quo
    if not _bounded(A, B):
        return None
    return Instance(A, B, d, sign, "interpolated")


def _solve(rows, rhs):
    """Gaussian elimination over Q for a square system; None if singular."""
    n = len(rows)
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


def _canonical_translated(rng, n, sign) -> Instance | None:
    ks = [k for k in range(6) if k % (n + 1) in (0, 1)]
    d = rng.choice(ks)
    t = rng.choice([Fraction(-1), Fraction(1), Fraction(1, 2), Fraction(-1, 2), Fraction(0)])
    shift = UniPoly([t, 1])
    A = shift ** n
    B = (shift ** (n - 1)) * (sign * (2 * d + n))
    if not _bounded(A, B):
        return None
    return Instance(A, B, d, sign, "canonical")


def random_instances(count: int = 200, seed: int = 2024) -> list[Instance]:
    rng = random.Random(seed)
    out: list[Instance] = []
    while len(out) < count:
        n = rng.randint(1, 3)
        d = rng.randint(0, 5)
        sign = rng.choice((1, -1))
        kind = rng.random()
        inst = None
        if kind < 0.5:
            inst = _random(rng, n, d, sign)
        elif n == 1:
            inst = _harmonic(rng, d, sign)
        elif kind < 0.6:
            inst = _trivial(rng, n, sign)
        elif kind < 0.8 and d <= n:
            inst = _interpolated(rng, n, d, sign)
        else:
            inst = _canonical_translated(rng, n, sign)
        if inst is not None:
            out.append(inst)
    return out
