"""The differential polynomial ring Q{a, b} and the universal obstructions.

Jet variables are named ``a, a', a'', ...`` and ``b, b', ...``. The map

    phi(C) = C' + [[-2a, 1], [b - a', 0]] C

acting on 2x2 matrices gives phi^(p+1)(Id) = [[l_p, l_{p-1}], [r_p, r_{p-1}]],
and Delta_p = -det(phi^(p+1)(Id)) = r_p*l_{p-1} - l_p*r_{p-1}.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .aim import aim_obstruction
from .exactcore import MultiPoly, UniPoly


def jet_name(base: str, j: int) -> str:
    return base + "'" * j


def jet_vars(order: int) -> tuple[str, ...]:
    """Jet variables up to ``order``, in the canonical order a < a' < ... < b < b' < ..."""
    return tuple(jet_name("a", j) for j in range(order + 1)) + tuple(
        jet_name("b", j) for j in range(order + 1)
    )


def _parse_jet(name: str) -> tuple[str, int]:
    base = name.rstrip("'")
    if base not in ("a", "b"):
        raise ValueError(f"{name!r} is not a jet of a or b")
    return base, len(name) - len(base)


class DiffPoly:
    """A differential polynomial in a, b; ``order`` is the highest derivative present."""

    __slots__ = ("poly", "order")

    def __init__(self, poly: MultiPoly):
        order = 0
        for v in poly.used_vars():
            order = max(order, _parse_jet(v)[1])
        self.order = order
        self.poly = poly.with_vars(jet_vars(order))

    @classmethod
    def a(cls, j: int = 0) -> "DiffPoly":
        return cls(MultiPoly.variable(jet_name("a", j)))

    @classmethod
    def b(cls, j: int = 0) -> "DiffPoly":
        return cls(MultiPoly.variable(jet_name("b", j)))

    @classmethod
    def constant(cls, c) -> "DiffPoly":
        return cls(MultiPoly.constant(c))

    def promote(self, order: int) -> MultiPoly:
        if order < self.order:
            raise ValueError("cannot lower the jet order")
        return self.poly.with_vars(jet_vars(order))

    def _binary(self, other, op):
        if not isinstance(other, DiffPoly):
            other = DiffPoly.constant(other)
        k = max(self.order, other.order)
        return DiffPoly(op(self.promote(k), other.promote(k)))

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return self._binary(other, lambda x, y: y - x)

    def __mul__(self, other):
        return self._binary(other, lambda x, y: x * y)

    __rmul__ = __mul__

    def __neg__(self) -> "DiffPoly":
        return DiffPoly(-self.poly)

    def __pow__(self, k: int) -> "DiffPoly":
        return DiffPoly(self.poly**k)

    def __eq__(self, other) -> bool:
        if isinstance(other, DiffPoly):
            return self.poly == other.poly
        return self.poly == other

    def __hash__(self) -> int:
        return hash(self.poly)

    def __bool__(self) -> bool:
        return bool(self.poly)

    def __len__(self) -> int:
        return len(self.poly)

    def derive(self) -> "DiffPoly":
        """Total derivative: each jet v^(j) goes to v^(j+1), by the Leibniz rule."""
        k = self.order
        width = k + 2
        # old index -> new index; a-jets keep place, b-jets shift by one slot
        remap = list(range(k + 1)) + [width + j for j in range(k + 1)]
        out: dict = {}
        for exps, c in self.poly.terms.items():
            base = [0] * (2 * width)
            for i, e in enumerate(exps):
                if e:
                    base[remap[i]] = e
            for i, e in enumerate(exps):
                if not e:
                    continue
                src = remap[i]
                new = list(base)
                new[src] -= 1
                new[src + 1] += 1
                key = tuple(new)
                v = out.get(key, 0) + c * e
                if v:
                    out[key] = v
                else:
                    del out[key]
        return DiffPoly(MultiPoly(jet_vars(k + 1), out))

    def degree_in_b(self) -> int | float:
        """Ordinary total degree in all jets of b."""
        return self.poly.degree_in([v for v in self.poly.vars if v.startswith("b")])

    def degree_in_a(self) -> int | float:
        return self.poly.degree_in([v for v in self.poly.vars if v.startswith("a")])

    def evaluate(self, A: UniPoly, B: UniPoly) -> UniPoly:
        """Substitute a -> A(x), b -> B(x), and every jet by the true derivative."""
        values = {}
        da, db = A, B
        for j in range(self.order + 1):
            values[jet_name("a", j)] = da
            values[jet_name("b", j)] = db
            da, db = da.derivative(), db.derivative()
        return self.poly.evaluate(values, one=UniPoly([1], A.var))

    def render(self) -> str:
        return self.poly.render()

    __str__ = render

    def __repr__(self) -> str:
        return f"DiffPoly({self.render()!r})"


@dataclass(frozen=True)
class PhiState:
    """phi^(p+1)(Id) = [[l_p, l_{p-1}], [r_p, r_{p-1}]]."""

    p: int
    matrix: tuple[tuple[DiffPoly, DiffPoly], tuple[DiffPoly, DiffPoly]]

    @property
    def l(self) -> DiffPoly:
        return self.matrix[0][0]

    @property
    def r(self) -> DiffPoly:
        return self.matrix[1][0]

    @property
    def l_prev(self) -> DiffPoly:
        return self.matrix[0][1]

    @property
    def r_prev(self) -> DiffPoly:
        return self.matrix[1][1]

    def det(self) -> DiffPoly:
        (m00, m01), (m10, m11) = self.matrix
        return m00 * m11 - m01 * m10


def _generator() -> tuple[DiffPoly, DiffPoly]:
    a, a1, b = DiffPoly.a(), DiffPoly.a(1), DiffPoly.b()
    return a * -2, b - a1


def phi_apply(C):
    """One application of phi to an arbitrary 2x2 matrix of DiffPoly."""
    k00, k10 = _generator()
    (c00, c01), (c10, c11) = C
    return (
        (c00.derive() + k00 * c00 + c10, c01.derive() + k00 * c01 + c11),
        (c10.derive() + k10 * c00, c11.derive() + k10 * c01),
    )


def phi_identity() -> PhiState:
    """phi(Id), the state for p = 0."""
    one, zero = DiffPoly.constant(1), DiffPoly.constant(0)
    return PhiState(0, phi_apply(((one, zero), (zero, one))))


def phi_step(s: PhiState) -> PhiState:
    """phi applied once more. phi acts column by column, so the new
    second column is the old first column and only one column is computed."""
    k00, k10 = _generator()
    l, r = s.l, s.r
    l_next = l.derive() + k00 * l + r
    r_next = r.derive() + k10 * l
    return PhiState(s.p + 1, ((l_next, l), (r_next, r)))


class _DeltaTable:
    """Memo of phi iterates; extended under a lock, read freely."""

    def __init__(self):
        self._states: list[PhiState] = []
        self._deltas: list[DiffPoly] = []
        self._lock = threading.Lock()

    def state(self, p: int) -> PhiState:
        self._extend(p)
        return self._states[p]

    def delta(self, p: int) -> DiffPoly:
        self._extend(p)
        return self._deltas[p]

    def _extend(self, p: int) -> None:
        if p < len(self._deltas):
            return
        with self._lock:
            states, deltas = list(self._states), list(self._deltas)
            while len(deltas) <= p:
                s = phi_step(states[-1]) if states else phi_identity()
                states.append(s)
                deltas.append(s.r * s.l_prev - s.l * s.r_prev)
            self._states, self._deltas = states, deltas


_TABLE = _DeltaTable()


def phi_state(p: int) -> PhiState:
    return _TABLE.state(p)


def delta_universal(p: int) -> DiffPoly:
    """Delta_p = -det(phi^(p+1)(Id)), memoized."""
    if p < 0:
        raise ValueError("p must be non-negative")
    return _TABLE.delta(p)


def delta_evaluate(p: int, A: UniPoly, B: UniPoly, method: str = "substitute", term_budget: int | None = None) -> UniPoly:
    """Delta_p(A(x), B(x)).

    ``substitute`` plugs A, B and their derivatives into the universal
    Delta_p. ``iterate`` runs the same recurrence directly in the ring of
    A and B, which avoids expanding Delta_p and is the route for large p.
    """
    if method == "substitute":
        return delta_universal(p).evaluate(A, B)
    if method == "iterate":
        l0 = A * -2
        r0 = B - A.derivative()
        return aim_obstruction(l0, r0, p, term_budget)
    raise ValueError(f"unknown method {method!r}")
