"""Roots of univariate rational polynomials: exact where possible, Aberth otherwise."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactcore import QuadSurd, UniPoly, is_scalar

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 500


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: monic squarefree factors with their multiplicities."""
    if f.degree() < 1:
        return []
    f = f.monic()
    df = f.derivative()
    a = f.gcd(df)
    b = f.divmod(a)[0]
    c = df.divmod(a)[0]
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree() >= 1:
        a = b.gcd(d)
        if a.degree() >= 1:
            out.append((a, i))
        b = b.divmod(a)[0]
        c = d.divmod(a)[0]
        d = c - b.derivative()
        i += 1
    return out


@dataclass
class AberthResult:
    roots: np.ndarray
    iterations: int
    converged: bool


def aberth(coeffs_low_to_high, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> AberthResult:
    """Simultaneous root iteration on the given (exact) coefficients.

    Converged when every update is below ``tol`` relative to max(1, |z|).
    """
    c = np.array([complex(x) for x in coeffs_low_to_high], dtype=complex)
    while len(c) > 1 and c[-1] == 0:
        c = c[:-1]
    deg = len(c) - 1
    if deg < 1:
        return AberthResult(np.array([], dtype=complex), 0, True)
    c = c / c[-1]
    p = c[::-1]  # numpy order, high to low
    dp = np.polyder(p)
    radius = 1 + np.max(np.abs(c[:-1]))
    angles = 2 * np.pi * np.arange(deg) / deg + 0.4
    z = radius * 0.5 * np.exp(1j * angles)
    for it in range(1, max_iter + 1):
        pz = np.polyval(p, z)
        dpz = np.polyval(dp, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1)
            inv = 1 / diff
            np.fill_diagonal(inv, 0)
            s = inv.sum(axis=1)
            w = ratio / (1 - ratio * s)
        w = np.where(np.isfinite(w), w, 0)
        w = np.where(pz == 0, 0, w)
        z = z - w
        if np.all(np.abs(w) <= tol * np.maximum(1, np.abs(z))):
            return AberthResult(z, it, True)
    return AberthResult(z, max_iter, False)


def _integer_form(f: UniPoly) -> list[int]:
    den = math.lcm(*(Fraction(c).denominator for c in f.coeffs))
    return [int(Fraction(c) * den) for c in f.coeffs]


def rational_roots(f: UniPoly, approx=None) -> list[Fraction | int]:
    """Rational roots of ``f`` (exact).

    A rational root p/q of an integer polynomial has q dividing the leading
    coefficient; candidates come from the numeric roots of the squarefree
    part (rounded to such denominators) and every candidate is checked exactly.
    A caller-supplied ``approx`` must belong to that squarefree part.
    """
    if f.degree() < 1:
        return []
    # repeated roots cluster numerically; work on the squarefree part
    f = f.divmod(f.gcd(f.derivative()))[0]
    ints = _integer_form(f)
    lead = abs(ints[-1])
    if approx is None:
        approx = aberth(f.coeffs).roots
    found = []
    if f.coeff(0) == 0:
        found.append(0)
    for z in approx:
        if abs(z.imag) > 1e-6 * max(1.0, abs(z)):
            continue
        cand = Fraction(z.real).limit_denominator(lead)
        cand = cand.numerator if cand.denominator == 1 else cand
        if cand not in found and f(cand) == 0:
            found.append(cand)
    return sorted(found)


@dataclass
class Root:
    exact: object | None  # rational or QuadSurd, None when only numeric
    approx: complex
    multiplicity: int

    def to_dict(self) -> dict:
        out = {"multiplicity": self.multiplicity, "exact": None if self.exact is None else str(self.exact)}
        z = self.approx
        if abs(z.imag) <= 1e-12 * max(1.0, abs(z)):
            out["approx"] = float(z.real)
        else:
            out["approx"] = {"re": float(z.real), "im": float(z.imag)}
        return out


def _quadratic_roots(f: UniPoly) -> list:
    """Exact roots of a monic irreducible rational quadratic in Q(sqrt D)."""
    b, c = f.coeff(1), f.coeff(0)
    disc = Fraction(b) * b - 4 * Fraction(c)
    half = Fraction(-b, 2) if is_scalar(b) else -b / 2
    return [QuadSurd.sqrt(disc, Fraction(-1, 2)) + half, QuadSurd.sqrt(disc, Fraction(1, 2)) + half]


def polynomial_roots(f: UniPoly, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> tuple[list[Root], bool]:
    """All roots with multiplicities; returns (roots, converged)."""
    roots: list[Root] = []
    converged = True
    for factor, mult in squarefree_decomposition(f):
        approx = aberth(factor.coeffs, tol, max_iter)
        converged = converged and approx.converged
        rest = factor
        for r in rational_roots(factor, approx.roots):
            roots.append(Root(r, complex(r), mult))
            rest = rest.divmod(UniPoly([-r, 1], f.var))[0]
        if rest.degree() == 2:
            for r in _quadratic_roots(rest):
                roots.append(Root(r, complex(r), mult))
        elif rest.degree() >= 1:
            res = aberth(rest.coeffs, tol, max_iter)
            converged = converged and res.converged
            for z in res.roots:
                roots.append(Root(None, complex(z), mult))
    roots.sort(key=lambda r: (r.approx.real, r.approx.imag))
    return roots, converged


__all__ = [
    "AberthResult",
    "Root",
    "aberth",
    "polynomial_roots",
    "rational_roots",
    "squarefree_decomposition",
]
