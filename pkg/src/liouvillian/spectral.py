"""Defining equations of the spectral varieties.

For A = x^n + a_{n-1} x^(n-1) + ... + a_0 and B = b_{n-1} x^(n-1) + ... + b_0
with b_{n-1} fixed to sign*(2d+n), the equation y'' = (A^2 + B) y has a
solution P exp(sign int A) with deg P = d exactly when every x-coefficient
of Delta_d(sign*A, B) vanishes. Those coefficients, made primitive, are the
generators reported here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .aim import BudgetExceeded
from .diffalg import delta_evaluate
from .exactcore import MultiPoly, UniPoly, is_scalar
from .reduce import complete_square

DEFAULT_TERM_BUDGET = 2_000_000


def coefficient_names(n: int, depress: bool = True) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Free parameter names: a_0..a_{n-1} (a_{n-1} dropped if depressed), b_0..b_{n-2}."""
    top = n - 1 if depress else n
    return tuple(f"a{i}" for i in range(top)), tuple(f"b{i}" for i in range(n - 1))


def symbolic_pair(n: int, d: int, sign: int, depress: bool = True) -> tuple[UniPoly, UniPoly]:
    """Generic A (monic, degree n) and B with the linear condition already imposed."""
    a_names, b_names = coefficient_names(n, depress)
    a = [MultiPoly.variable(v) for v in a_names] + ([0] if depress else [])
    A = UniPoly(a[:n] + [1])
    B = UniPoly([MultiPoly.variable(v) for v in b_names] + [sign * (2 * d + n)])
    return A, B


def _as_poly(c) -> MultiPoly:
    return c if isinstance(c, MultiPoly) else MultiPoly.constant(c)


@dataclass
class SpectralIdeal:
    n: int
    d: int
    sign: int
    depress: bool
    vars: tuple[str, ...]
    generators: list[MultiPoly]

    @property
    def linear_condition(self) -> tuple[str, int]:
        return f"b{self.n - 1}", self.sign * (2 * self.d + self.n)

    @property
    def is_unit(self) -> bool:
        """True when some generator is a nonzero constant (empty variety)."""
        return any(g.is_constant() for g in self.generators)

    def to_dict(self) -> dict:
        name, value = self.linear_condition
        return {
            "n": self.n,
            "d": self.d,
            "sign": "+" if self.sign > 0 else "-",
            "depressed": self.depress,
            "vars": list(self.vars),
            "linear_condition": f"{name} = {value}",
            "generators": [g.render() for g in self.generators],
        }


def normalize_generators(polys) -> list[MultiPoly]:
    """Primitive parts, duplicates removed, in order of first appearance."""
    out: list[MultiPoly] = []
    for p in polys:
        p = _as_poly(p)
        if not p:
            continue
        g = p.primitive()
        if g not in out:
            out.append(g)
    return out


def spectral_ideal(
    n: int,
    d: int,
    sign: int = 1,
    depress: bool = True,
    term_budget: int | None = DEFAULT_TERM_BUDGET,
) -> SpectralIdeal:
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    A, B = symbolic_pair(n, d, sign, depress)
    delta = delta_evaluate(d, A * sign, B, method="iterate", term_budget=term_budget)
    a_names, b_names = coefficient_names(n, depress)
    return SpectralIdeal(n, d, sign, depress, a_names + b_names, normalize_generators(delta.coeffs))


# -- numeric comparison of varieties ------------------------------------------


class _Compiled:
    """A list of polynomials evaluated (with Jacobian) at complex points by numpy."""

    def __init__(self, polys, vars):
        self.vars = tuple(vars)
        self.items = []
        for p in polys:
            p = _as_poly(p).with_vars(self.vars)
            exps = np.array([e for e in p.terms], dtype=float).reshape(len(p), len(self.vars))
            coef = np.array([complex(c) for c in p.terms.values()])
            self.items.append((exps, coef))

    def values(self, z):
        return np.array([np.prod(z ** e, axis=1) @ c for e, c in self.items])

    def scales(self, z):
        """Sum of term magnitudes, the natural size of each value."""
        return np.array([np.abs(np.prod(z ** e, axis=1)) @ np.abs(c) for e, c in self.items])

    def jacobian(self, z):
        k = len(self.vars)
        J = np.zeros((len(self.items), k), dtype=complex)
        for i, (e, c) in enumerate(self.items):
            for j in range(k):
                ej = e[:, j]
                mask = ej > 0
                if not mask.any():
                    continue
                shifted = e[mask].copy()
                shifted[:, j] -= 1
                J[i, j] = np.prod(z ** shifted, axis=1) @ (c[mask] * ej[mask])
        return J


def sample_variety(polys, vars, count: int, seed: int = 0, tol: float = 1e-11, max_iter: int = 100) -> list[np.ndarray]:
    """Points of the complex variety of ``polys`` by Gauss-Newton from random starts."""
    comp = _Compiled(polys, vars)
    rng = np.random.default_rng(seed)
    points = []
    attempts = 0
    while len(points) < count and attempts < 20 * count:
        attempts += 1
        z = rng.normal(size=len(comp.vars)) + 1j * rng.normal(size=len(comp.vars))
        for _ in range(max_iter):
            f = comp.values(z)
            if np.all(np.abs(f) <= tol * np.maximum(comp.scales(z), 1.0)):
                points.append(z)
                break
            step = np.linalg.pinv(comp.jacobian(z)) @ f
            z = z - step
            if not np.all(np.isfinite(z)) or np.max(np.abs(z)) > 1e6:
                break
    return points


def _vanish_everywhere(polys, vars, points, tol: float) -> list[bool]:
    comp = _Compiled(polys, vars)
    flags = [True] * len(polys)
    for z in points:
        rel = np.abs(comp.values(z)) / np.maximum(comp.scales(z), 1.0)
        for i, r in enumerate(rel):
            if r > tol:
                flags[i] = False
    return flags


@dataclass
class EquivalenceReport:
    mode: str  # "scalar" | "sampling"
    equivalent: bool
    reference_status: list[str]
    computed_status: list[str]
    samples: int = 0
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "equivalent": self.equivalent,
            "reference_status": self.reference_status,
            "computed_status": self.computed_status,
            "samples": self.samples,
            "notes": self.notes,
        }


def ideal_equivalence_check(
    ideal: SpectralIdeal, reference, samples: int = 20, seed: int = 0, tol: float = 1e-7
) -> EquivalenceReport:
    """Compare computed generators with a reference list.

    First tries a generator-by-generator match up to a rational scalar.
    Failing that, samples points of each variety and checks that the other
    side's equations vanish there (relative to the size of their terms).
    """
    ref = [_as_poly(r) for r in reference]
    comp = ideal.generators
    ref_status = ["scalar" if any(r.is_scalar_multiple_of(g) for g in comp) else "unmatched" for r in ref]
    comp_status = ["scalar" if any(g.is_scalar_multiple_of(r) for r in ref) else "unmatched" for g in comp]
    if all(s == "scalar" for s in ref_status + comp_status):
        return EquivalenceReport("scalar", True, ref_status, comp_status)
    vars = ideal.vars
    notes = []
    pts_comp = sample_variety(comp, vars, samples, seed)
    pts_ref = sample_variety(ref, vars, samples, seed + 1)
    if len(pts_comp) < samples:
        notes.append(f"only {len(pts_comp)} points found on the computed variety")
    if len(pts_ref) < samples:
        notes.append(f"only {len(pts_ref)} points found on the reference variety")
    ref_ok = _vanish_everywhere(ref, vars, pts_comp, tol)
    comp_ok = _vanish_everywhere(comp, vars, pts_ref, tol)
    ref_status = [s if s == "scalar" else ("sampled" if ok else "mismatch") for s, ok in zip(ref_status, ref_ok)]
    comp_status = [s if s == "scalar" else ("sampled" if ok else "mismatch") for s, ok in zip(comp_status, comp_ok)]
    enough = len(pts_comp) >= samples and len(pts_ref) >= samples
    equivalent = enough and all(ref_ok) and all(comp_ok)
    return EquivalenceReport("sampling", equivalent, ref_status, comp_status, min(len(pts_comp), len(pts_ref)), notes)


def jacobian_rank(polys, vars, point, tol: float = 1e-8) -> int:
    """Numerical rank of the Jacobian of ``polys`` at ``point``."""
    J = _Compiled(polys, vars).jacobian(np.asarray(point, dtype=complex))
    if J.size == 0:
        return 0
    s = np.linalg.svd(J, compute_uv=False)
    return int(np.sum(s > tol * max(s[0], 1.0)))


# -- membership ------------------------------------------------------------------


@dataclass(frozen=True)
class Membership:
    status: str  # "in_L_plus" | "in_L_minus" | "out"
    reason: str

    def to_dict(self) -> dict:
        return {"status": self.status, "reason": self.reason}


def membership(M: UniPoly, d: int, term_budget: int | None = DEFAULT_TERM_BUDGET) -> Membership:
    """Which spectral variety of degree d (if any) contains y'' = M y."""
    if d < 0:
        raise ValueError("d must be non-negative")
    dec = complete_square(M)
    n, b = dec.n, dec.b_top
    if not is_scalar(b):
        raise ValueError("M must have rational coefficients")
    if b * b != (n + 2 * d) ** 2:
        return Membership("out", f"b_{n - 1}^2 != (n+2d)^2")
    sign = 1 if b > 0 else -1
    delta = delta_evaluate(d, dec.A * sign, dec.B, method="iterate", term_budget=term_budget)
    if delta:
        return Membership("out", f"Delta_{d} does not vanish")
    return Membership("in_L_plus" if sign > 0 else "in_L_minus", f"Delta_{d} vanishes")


__all__ = [
    "BudgetExceeded",
    "DEFAULT_TERM_BUDGET",
    "EquivalenceReport",
    "Membership",
    "SpectralIdeal",
    "coefficient_names",
    "ideal_equivalence_check",
    "jacobian_rank",
    "membership",
    "normalize_generators",
    "sample_variety",
    "spectral_ideal",
    "symbolic_pair",
]
