"""Equivariant cohomology rings of ADE minimal resolutions.

Two constructions:

* type A by torus localisation on the toric resolution (variables ``t1, t2``),
* every simply-laced type from the root-system cup product formula
  (variable ``t``).

Both produce a :class:`MultiplicationTable` on the basis ``{1, e_1..e_n}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactalg import Poly, RatFunc, solve_linear
from .rootsystem import LieType, RootSystem, build_root_system

__all__ = [
    "RingElement",
    "MultiplicationTable",
    "FixedPointData",
    "an_fixed_point_data",
    "an_pairing",
    "an_cup_table",
    "an_closed_form_table",
    "bg_cup_table",
    "group_order",
    "paper_cohomology_fixture",
    "restrict",
    "table_differences",
    "specialize_equal_parameters",
    "T1T2",
    "T",
]

T1T2 = ("t1", "t2")
T = ("t",)


@dataclass(frozen=True)
class RingElement:
    """``c0 * 1 + sum_k c[k] * b_{k+1}`` over a polynomial base ring."""

    c0: Poly
    c: Tuple[Poly, ...]

    @property
    def vars(self):
        return self.c0.vars

    @property
    def rank(self):
        return len(self.c)

    @classmethod
    def zero(cls, n: int, vars: Sequence[str]) -> "RingElement":
        z = Poly.zero(vars)
        return cls(z, (z,) * n)

    @classmethod
    def one(cls, n: int, vars: Sequence[str]) -> "RingElement":
        z = Poly.zero(vars)
        return cls(Poly.const(1, vars), (z,) * n)

    @classmethod
    def basis(cls, k: int, n: int, vars: Sequence[str]) -> "RingElement":
        """Basis class number ``k`` (1-based)."""
        z = Poly.zero(vars)
        c = [z] * n
        c[k - 1] = Poly.const(1, vars)
        return cls(z, tuple(c))

    def __add__(self, other: "RingElement") -> "RingElement":
        return RingElement(self.c0 + other.c0, tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other: "RingElement") -> "RingElement":
        return RingElement(self.c0 - other.c0, tuple(a - b for a, b in zip(self.c, other.c)))

    def __neg__(self):
        return RingElement(-self.c0, tuple(-a for a in self.c))

    def scale(self, s) -> "RingElement":
        return RingElement(self.c0 * s, tuple(a * s for a in self.c))

    def is_zero(self) -> bool:
        return self.c0.is_zero() and all(a.is_zero() for a in self.c)

    def map_coefficients(self, f) -> "RingElement":
        return RingElement(f(self.c0), tuple(f(a) for a in self.c))

    def to_text(self, basis: str = "e") -> str:
        parts = []
        if not self.c0.is_zero():
            parts.append(self.c0.to_text())
        for k, a in enumerate(self.c, start=1):
            if a.is_zero():
                continue
            s = a.to_text()
            if len(a.terms) > 1:
                s = f"({s})"
            if s == "1":
                s = ""
            elif s == "-1":
                s = "-"
            parts.append(f"{s}*{basis}{k}" if s not in ("", "-") else f"{s}{basis}{k}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def to_json(self) -> dict:
        return {
            "c0": self.c0.to_text(),
            "c": [a.to_text() for a in self.c],
            "c0_terms": self.c0.term_list(),
            "c_terms": [a.term_list() for a in self.c],
        }


@dataclass
class MultiplicationTable:
    """Commutative product on the free module with basis ``{1, b_1..b_n}``."""

    n: int
    base_vars: Tuple[str, ...]
    entries: Dict[Tuple[int, int], RingElement]
    basis_name: str = "e"
    label: str = ""

    def entry(self, i: int, j: int) -> RingElement:
        return self.entries[(min(i, j), max(i, j))]

    def pairs(self):
        return sorted(self.entries)

    def multiply(self, a: RingElement, b: RingElement) -> RingElement:
        n = self.n
        c0 = a.c0 * b.c0
        c = [a.c0 * b.c[k] + b.c0 * a.c[k] for k in range(n)]
        out = RingElement(c0, tuple(c))
        for i in range(n):
            if a.c[i].is_zero():
                continue
            for j in range(n):
                if b.c[j].is_zero():
                    continue
                out = out + self.entry(i + 1, j + 1).scale(a.c[i] * b.c[j])
        return out

    def basis(self, k: int) -> RingElement:
        return RingElement.basis(k, self.n, self.base_vars)

    def associativity_defects(self) -> List[Tuple[int, int, int]]:
        bad = []
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                for k in range(1, self.n + 1):
                    left = self.multiply(self.entry(i, j), self.basis(k))
                    right = self.multiply(self.basis(i), self.entry(j, k))
                    if not (left - right).is_zero():
                        bad.append((i, j, k))
        return bad

    def is_associative(self) -> bool:
        return not self.associativity_defects()

    def is_commutative(self) -> bool:
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                ab = self.multiply(self.basis(i), self.basis(j))
                ba = self.multiply(self.basis(j), self.basis(i))
                if not (ab - ba).is_zero():
                    return False
        return True

    def map_coefficients(self, f, base_vars) -> "MultiplicationTable":
        return MultiplicationTable(
            self.n, tuple(base_vars),
            {k: v.map_coefficients(f) for k, v in self.entries.items()},
            self.basis_name, self.label)

    def to_json(self) -> dict:
        return {
            "rank": self.n,
            "base_vars": list(self.base_vars),
            "basis": ["1"] + [f"{self.basis_name}{k}" for k in range(1, self.n + 1)],
            "entries": [dict(i=i, j=j, **self.entries[(i, j)].to_json()) for i, j in self.pairs()],
        }


# -- type A by localisation ---------------------------------------------------

@dataclass(frozen=True)
class FixedPointData:
    n: int
    tangent_euler: Tuple[Poly, ...]
    restrictions: Tuple[Tuple[Poly, ...], ...]


def an_fixed_point_data(n: int) -> FixedPointData:
    """Tangent Euler classes at the ``n+1`` fixed points and restrictions of ``e_j``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    t1, t2 = Poly.gens(T1T2)
    zero = Poly.zero(T1T2)
    euler = tuple(((n + 1 - k) * t1 - k * t2) * ((k + 1) * t2 - (n - k) * t1) for k in range(n + 1))
    rows = []
    for k in range(n + 1):
        row = []
        for j in range(1, n + 1):
            if k == j - 1:
                row.append((n - j + 2) * t1 - (j - 1) * t2)
            elif k == j:
                row.append(-(n - j) * t1 + (j + 1) * t2)
            else:
                row.append(zero)
        rows.append(tuple(row))
    return FixedPointData(n, euler, tuple(rows))


def restrict(d: FixedPointData, a: RingElement, k: int) -> Poly:
    out = a.c0
    for j, cj in enumerate(a.c):
        r = d.restrictions[k][j]
        if not cj.is_zero() and not r.is_zero():
            out = out + cj * r
    return out


def an_pairing(d: FixedPointData, a: RingElement, b: RingElement) -> RatFunc:
    total = RatFunc(Poly.zero(T1T2))
    for k in range(d.n + 1):
        num = restrict(d, a, k) * restrict(d, b, k)
        if not num.is_zero():
            total = total + RatFunc(num, d.tangent_euler[k])
    return total


def an_cup_table(n: int) -> MultiplicationTable:
    """Cup products from the fixed-point restriction system.

    The solution must be polynomial; a non-polynomial coefficient signals
    bad input data and raises ``ArithmeticError``.
    """
    d = an_fixed_point_data(n)
    one = Poly.const(1, T1T2)
    A = [[one] + list(d.restrictions[k]) for k in range(n + 1)]
    entries = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            rhs = [d.restrictions[k][i - 1] * d.restrictions[k][j - 1] for k in range(n + 1)]
            sol = solve_linear(A, rhs)
            coeffs = []
            for x in sol:
                if not x.is_polynomial():
                    raise ArithmeticError(f"e{i}*e{j}: non-polynomial coefficient {x.to_text()}")
                coeffs.append(x.as_poly())
            el = RingElement(coeffs[0], tuple(coeffs[1:]))
            for k in range(n + 1):
                if restrict(d, el, k) != rhs[k]:
                    raise ArithmeticError(f"e{i}*e{j}: restriction mismatch at fixed point {k}")
            entries[(i, j)] = el
    return MultiplicationTable(n, T1T2, entries, "e", f"A{n} localization")


def an_closed_form_table(n: int) -> MultiplicationTable:
    """Closed-form type-A cup products, kept as an independent reference table."""
    t1, t2 = Poly.gens(T1T2)
    zero = Poly.zero(T1T2)
    entries = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            c = [zero] * n
            c0 = zero
            if j == i:
                for l in range(1, i):
                    c[l - 1] = 2 * l * t2
                c[i - 1] = (n + 2 - i) * t1 + (i + 1) * t2
                for l in range(i + 1, n + 1):
                    c[l - 1] = 2 * (n + 1 - l) * t1
                c0 = -2 * (n + 1) * t1 * t2
            elif j == i + 1:
                for l in range(1, i + 1):
                    c[l - 1] = -l * t2
                for l in range(i + 1, n + 1):
                    c[l - 1] = -(n + 1 - l) * t1
                c0 = (n + 1) * t1 * t2
            entries[(i, j)] = RingElement(c0, tuple(c))
    return MultiplicationTable(n, T1T2, entries, "e", f"A{n} closed form")


# -- all types by the root-system formula ---------------------------------

def group_order(t) -> int:
    """Order of the finite subgroup of SL2 attached to the type."""
    t = LieType.parse(t)
    if t.family == "A":
        return t.rank + 1
    if t.family == "D":
        return 4 * (t.rank - 2)
    return {6: 24, 7: 48, 8: 120}[t.rank]


def bg_cup_table(rs: RootSystem, gamma_order: Optional[int] = None) -> MultiplicationTable:
    """``e_i e_j = -|G| (a_i, a_j) t^2 + t sum_{a>0} (a_i, a)(a_j, a) e_a``."""
    if gamma_order is None:
        gamma_order = group_order(rs.lie_type)
    n = rs.rank
    (t,) = Poly.gens(T)
    simple = rs.simple_roots
    pair = [[rs.inner(s, a) for a in rs.positive_roots] for s in simple]
    entries = {}
    for i in range(n):
        for j in range(i, n):
            coeff = [0] * n
            for k, a in enumerate(rs.positive_roots):
                w = pair[i][k] * pair[j][k]
                if w:
                    for l in range(n):
                        coeff[l] += w * a[l]
            c0 = -gamma_order * rs.cartan[i][j] * t * t
            entries[(i + 1, j + 1)] = RingElement(c0, tuple(x * t for x in coeff))
    return MultiplicationTable(n, T, entries, "e", f"{rs.lie_type} root formula")


# -- reference tables ----------------------------------------------------------

_E_DIAG = {
    6: (-48, [(14, 12, 20, 24, 16, 8), (8, 16, 16, 24, 16, 8), (8, 12, 20, 24, 16, 8),
              (8, 12, 16, 26, 16, 8), (8, 12, 16, 24, 20, 8), (8, 12, 16, 24, 20, 14)]),
    7: (-96, [(22, 24, 36, 48, 36, 24, 12), (16, 28, 32, 48, 36, 24, 12),
              (16, 24, 36, 48, 36, 24, 12), (16, 24, 32, 50, 36, 24, 12),
              (16, 24, 32, 48, 40, 24, 12), (16, 24, 32, 48, 40, 30, 12),
              (16, 24, 32, 48, 40, 32, 20)]),
    8: (-240, [(46, 60, 84, 120, 96, 72, 48, 24), (40, 64, 80, 120, 96, 72, 48, 24),
               (40, 60, 84, 120, 96, 72, 48, 24), (40, 60, 80, 122, 96, 72, 48, 24),
               (40, 60, 80, 120, 100, 72, 48, 24), (40, 60, 80, 120, 100, 78, 48, 24),
               (40, 60, 80, 120, 100, 80, 56, 24), (40, 60, 80, 120, 100, 80, 60, 34)]),
}

# off-diagonal entries have the shape  +c t^2 - t(...)
_E_OFF = {
    6: (24, {(1, 3): (4, 6, 10, 12, 8, 4), (2, 4): (4, 6, 8, 12, 8, 4),
             (3, 4): (4, 6, 8, 12, 8, 4), (4, 5): (4, 6, 8, 12, 8, 4),
             (5, 6): (4, 6, 8, 12, 10, 4)}),
    7: (48, {(1, 3): (8, 12, 18, 24, 18, 12, 6), (2, 4): (8, 12, 16, 24, 18, 12, 6),
             (3, 4): (8, 12, 16, 24, 18, 12, 6), (4, 5): (8, 12, 16, 24, 18, 12, 6),
             (5, 6): (8, 12, 16, 24, 20, 12, 6), (6, 7): (8, 12, 16, 24, 20, 16, 6)}),
    8: (120, {(1, 3): (20, 30, 42, 60, 48, 36, 24, 12), (2, 4): (20, 30, 40, 60, 48, 36, 24, 12),
              (3, 4): (20, 30, 40, 60, 48, 36, 24, 12), (4, 5): (20, 30, 40, 60, 48, 36, 24, 12),
              (5, 6): (20, 30, 40, 60, 50, 36, 24, 12), (6, 7): (20, 30, 40, 60, 50, 40, 24, 12),
              (7, 8): (20, 30, 40, 60, 50, 40, 30, 12)}),
}


def _dn_reference(n: int):
    """Reference D_n table, entered literally, with per-entry notes."""
    (t,) = Poly.gens(T)
    zero = Poly.zero(T)
    entries = {}
    notes = {}

    def el(c0, coeffs):
        return RingElement(c0, tuple(x * t for x in coeffs))

    for k in range(1, n + 1):
        for l in range(k, n + 1):
            if (k, l) in ((n - 2, n), (n - 1, n)):
                coeffs = [-2 * i for i in range(1, n - 1)] + [-(n - 2), -(n - 2)]
                entries[(k, l)] = el(zero, coeffs)
                notes[(k, l)] = "listed together with a conflicting zero rule"
            elif l == k + 1 and k <= n - 2:
                coeffs = [-2 * i if i <= k else -(2 * n - 4) for i in range(1, n - 1)]
                coeffs += [-(n - 2), -(n - 2)]
                entries[(k, l)] = el(4 * (n - 2) * t * t, coeffs)
            elif l == k and k <= n - 2:
                coeffs = [4 * i if i < k else (2 * n + 2 * k - 2 if i == k else 4 * n - 8)
                          for i in range(1, n - 1)]
                coeffs += [2 * n - 4, 2 * n - 4]
                entries[(k, l)] = el(zero, coeffs)
                notes[(k, l)] = "lacks the t^2 term"
            elif l == k and k in (n - 1, n):
                coeffs = [4 * i for i in range(1, n - 1)]
                coeffs += [2 * n, 2 * n - 4] if k == n - 1 else [2 * n - 4, 2 * n]
                entries[(k, l)] = el(4 * (n - 2) * t * t, coeffs)
                notes[(k, l)] = "constant term 4(n-2)t^2 where the root formula gives -8(n-2)t^2"
            else:
                entries[(k, l)] = RingElement.zero(n, T)
    return entries, notes


def paper_cohomology_fixture(t):
    """Reference cup-product table for a type, plus notes on suspect entries.

    Returns ``(table, notes)``.  Type A uses ``t1, t2``; D and E use ``t``.
    """
    t = LieType.parse(t)
    n = t.rank
    if t.family == "A":
        return an_closed_form_table(n), {}
    if t.family == "D":
        entries, notes = _dn_reference(n)
        return MultiplicationTable(n, T, entries, "e", f"D{n} reference"), notes
    (tv,) = Poly.gens(T)
    diag_c, diag = _E_DIAG[n]
    off_c, off = _E_OFF[n]
    entries = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if i == j:
                entries[(i, j)] = RingElement(diag_c * tv * tv, tuple(x * tv for x in diag[i - 1]))
            elif (i, j) in off:
                entries[(i, j)] = RingElement(off_c * tv * tv, tuple(-x * tv for x in off[(i, j)]))
            else:
                entries[(i, j)] = RingElement.zero(n, T)
    return MultiplicationTable(n, T, entries, "e", f"E{n} reference"), {}


def table_differences(a: MultiplicationTable, b: MultiplicationTable):
    """Pairs where two tables over the same base disagree, with ``a - b``."""
    if a.n != b.n or a.base_vars != b.base_vars:
        raise ValueError("tables are over different ranks or bases")
    out = []
    for key in a.pairs():
        d = a.entries[key] - b.entries[key]
        if not d.is_zero():
            out.append((key, d))
    return out


def specialize_equal_parameters(table: MultiplicationTable) -> MultiplicationTable:
    """Set ``t1 = t2 = t`` in a two-parameter table."""
    from .exactalg import substitute
    (t,) = Poly.gens(T)
    return table.map_coefficients(lambda p: substitute(p, {"t1": t, "t2": t}, T), T)
