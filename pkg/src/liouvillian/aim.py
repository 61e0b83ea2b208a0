"""Asymptotic iteration for y'' = l0*y' + r0*y over an exact polynomial ring.

Differentiating the equation j times gives y^(j+2) = l_j*y' + r_j*y with

    l_{j+1} = l_j' + r_j + l0*l_j,    r_{j+1} = r_j' + r0*l_j,

and obstructions delta_j = r_j*l_{j-1} - l_j*r_{j-1}. Index -1 is seeded
with l_{-1} = 1, r_{-1} = 0, so that delta_0 = r0.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .exactcore import UniPoly

DEFAULT_MAX_P = 64


class BudgetExceeded(RuntimeError):
    """A resource guard (iteration count, term count) was hit."""


@dataclass(frozen=True)
class AimState:
    j: int
    l: UniPoly
    r: UniPoly
    l_prev: UniPoly
    r_prev: UniPoly
    l0: UniPoly
    r0: UniPoly

    def step(self) -> "AimState":
        l_next = self.l.derivative() + self.r + self.l0 * self.l
        r_next = self.r.derivative() + self.r0 * self.l
        return AimState(self.j + 1, l_next, r_next, self.l, self.r, self.l0, self.r0)

    def obstruction(self) -> UniPoly:
        return self.r * self.l_prev - self.l * self.r_prev


def aim_start(l0: UniPoly, r0: UniPoly) -> AimState:
    one = UniPoly([1], l0.var)
    return AimState(0, l0, r0, one, UniPoly([], l0.var), l0, r0)


def aim_iterate(l0: UniPoly, r0: UniPoly, p: int, term_budget: int | None = None) -> AimState:
    """State after ``p`` recurrence steps: ``state.l`` is l_p, ``state.r`` is r_p."""
    if p < 0:
        raise ValueError("p must be non-negative")
    state = aim_start(l0, r0)
    for _ in range(p):
        state = state.step()
        if term_budget is not None:
            _check_budget(state, term_budget)
    return state


def _term_count(p: UniPoly) -> int:
    return sum(len(c) if hasattr(c, "terms") else 1 for c in p.coeffs)


def _check_budget(state: AimState, budget: int) -> None:
    count = _term_count(state.l) + _term_count(state.r)
    if count > budget:
        raise BudgetExceeded(f"term budget {budget} exceeded at step {state.j} ({count} terms)")


def aim_obstruction(l0: UniPoly, r0: UniPoly, p: int, term_budget: int | None = None) -> UniPoly:
    """delta_p = r_p*l_{p-1} - l_p*r_{p-1}."""
    return aim_iterate(l0, r0, p, term_budget).obstruction()


class PolyVerdict(str, Enum):
    YES = "yes_degree_le_p"
    NO = "no_at_p"
    INDETERMINATE = "indeterminate"


def has_polynomial_solution(l0: UniPoly, r0: UniPoly, p: int) -> PolyVerdict:
    """Polynomial-solution test at index ``p``.

    ``YES`` when delta_p = 0 and l_p*l_{p-1} != 0 (a polynomial solution of
    degree at most p exists); ``NO`` when delta_p != 0 (no solution of
    degree exactly p); ``INDETERMINATE`` when delta_p = 0 but some l vanishes.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    state = aim_iterate(l0, r0, p)
    if state.obstruction():
        return PolyVerdict.NO
    if not state.l or not state.l_prev:
        return PolyVerdict.INDETERMINATE
    return PolyVerdict.YES


@dataclass(frozen=True)
class AimVerdict:
    status: str  # "stabilized" | "budget_exhausted"
    stabilized_at: int | None
    alpha: tuple[UniPoly, UniPoly] | None  # (r_p, l_p), alpha = r_p / l_p
    obstruction: UniPoly
    l0: UniPoly

    def formal_solution(self) -> str | None:
        """General solution as a formal expression; no quadrature is done."""
        if self.alpha is None:
            return None
        num, den = self.alpha
        return (
            "y = u^(-1)*(c2 + c1*beta), "
            f"u' = alpha*u, v' = ({self.l0})*v, beta' = u^2*v, "
            f"alpha = ({num})/({den})"
        )


def aim_stabilize(l0: UniPoly, r0: UniPoly, max_p: int = DEFAULT_MAX_P) -> AimVerdict:
    """Iterate until delta_p = 0 for some 1 <= p <= max_p."""
    state = aim_start(l0, r0)
    for _ in range(max_p):
        state = state.step()
        delta = state.obstruction()
        if not delta and state.l:
            return AimVerdict("stabilized", state.j, (state.r, state.l), delta, l0)
    return AimVerdict("budget_exhausted", None, None, state.obstruction(), l0)
