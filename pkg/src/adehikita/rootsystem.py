"""Simply-laced root systems (types A, D, E) in Bourbaki numbering.

Weights are plain integer tuples in the simple-root basis, so they hash and
compare cheaply; the bilinear form is ``u^T C v`` with ``C`` the Cartan
matrix, which gives every root squared length 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

Weight = Tuple[int, ...]

__all__ = [
    "LieType",
    "RootSystem",
    "AsymmetryFunction",
    "Weight",
    "build_root_system",
    "inner",
    "asymmetry",
    "is_root",
    "default_orientation",
    "wadd",
    "wsub",
    "wneg",
    "wscale",
]


def wadd(u: Sequence[int], v: Sequence[int]) -> Weight:
    return tuple(a + b for a, b in zip(u, v))


def wsub(u: Sequence[int], v: Sequence[int]) -> Weight:
    return tuple(a - b for a, b in zip(u, v))


def wneg(u: Sequence[int]) -> Weight:
    return tuple(-a for a in u)


def wscale(k, u: Sequence[int]) -> Weight:
    return tuple(k * a for a in u)


@dataclass(frozen=True, order=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in ("A", "D", "E"):
            raise ValueError(f"unsupported family {self.family!r}: only A, D, E are simply laced here")
        if self.family == "A" and self.rank < 1:
            raise ValueError(f"A_n needs n >= 1, got {self.rank}")
        if self.family == "D" and self.rank < 4:
            raise ValueError(f"D_n needs n >= 4, got {self.rank}")
        if self.family == "E" and self.rank not in (6, 7, 8):
            raise ValueError(f"E_n needs n in {{6, 7, 8}}, got {self.rank}")

    @classmethod
    def parse(cls, text: str | "LieType") -> "LieType":
        if isinstance(text, LieType):
            return text
        m = re.fullmatch(r"\s*([ADEade])_?(\d+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse Lie type {text!r} (expected e.g. A3, D5, E6)")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.family}{self.rank}"


def _dynkin_edges(t: LieType) -> Tuple[Tuple[int, int], ...]:
    n = t.rank
    if t.family == "A":
        return tuple((i, i + 1) for i in range(1, n))
    if t.family == "D":
        chain = tuple((i, i + 1) for i in range(1, n - 1))
        return chain + ((n - 2, n),)
    # E_n: 1-3-4-5-...-n with 2 hanging off 4
    return ((1, 3), (2, 4), (3, 4)) + tuple((i, i + 1) for i in range(4, n))


def default_orientation(t: LieType) -> FrozenSet[Tuple[int, int]]:
    """Directed Dynkin edges ``(i, j)`` meaning ``i -> j``."""
    t = LieType.parse(t)
    if t == LieType("E", 6):
        return frozenset({(3, 1), (4, 3), (4, 5), (5, 6), (4, 2)})
    return frozenset((min(e), max(e)) for e in _dynkin_edges(t))


@dataclass(frozen=True)
class RootSystem:
    lie_type: LieType
    cartan: Tuple[Tuple[int, ...], ...]
    positive_roots: Tuple[Weight, ...]
    highest_root: Weight
    two_delta: Weight
    edges: Tuple[Tuple[int, int], ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @property
    def dim(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    @cached_property
    def root_index(self) -> Dict[Weight, int]:
        return {r: k for k, r in enumerate(self.positive_roots)}

    @cached_property
    def _all_roots(self) -> FrozenSet[Weight]:
        return frozenset(self.positive_roots) | frozenset(wneg(r) for r in self.positive_roots)

    @cached_property
    def simple_roots(self) -> Tuple[Weight, ...]:
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    def inner(self, u: Sequence, v: Sequence):
        C = self.cartan
        total = 0
        for i, a in enumerate(u):
            if a:
                row = C[i]
                total += a * sum(row[j] * b for j, b in enumerate(v) if b)
        return total

    def is_root(self, w: Sequence[int]) -> bool:
        return tuple(w) in self._all_roots

    def height(self, w: Sequence[int]) -> int:
        return sum(w)

    def reflect(self, i: int, w: Sequence) -> tuple:
        """Simple reflection ``s_i`` (0-based index)."""
        c = self.inner(w, self.simple_roots[i])
        if not c:
            return tuple(w)
        return tuple(a - c if k == i else a for k, a in enumerate(w))

    def dynkin_labels(self, w: Sequence) -> tuple:
        return tuple(self.inner(w, a) for a in self.simple_roots)

    def is_dominant(self, w: Sequence) -> bool:
        return all(x >= 0 for x in self.dynkin_labels(w))

    @cached_property
    def inverse_cartan(self) -> Tuple[Tuple[Fraction, ...], ...]:
        n = self.rank
        M = [[Fraction(self.cartan[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
             for i in range(n)]
        for c in range(n):
            p = next(r for r in range(c, n) if M[r][c])
            M[c], M[p] = M[p], M[c]
            inv = 1 / M[c][c]
            M[c] = [x * inv for x in M[c]]
            for r in range(n):
                if r != c and M[r][c]:
                    f = M[r][c]
                    M[r] = [x - f * y for x, y in zip(M[r], M[c])]
        return tuple(tuple(row[n:]) for row in M)

    def fundamental_weight(self, i: int) -> Tuple[Fraction, ...]:
        """``omega_i`` (1-based) in simple-root coordinates."""
        return self.inverse_cartan[i - 1]

    def weyl_dimension(self, lam: Sequence) -> int:
        """``prod_{alpha>0} (lam+delta, alpha) / (delta, alpha)``."""
        num = Fraction(1)
        den = Fraction(1)
        twice = [2 * Fraction(x) for x in lam]
        shifted = [a + b for a, b in zip(twice, self.two_delta)]
        for a in self.positive_roots:
            num *= self.inner(shifted, a)
            den *= self.inner(self.two_delta, a)
        val = num / den
        if val.denominator != 1:
            raise ArithmeticError(f"non-integral Weyl dimension {val}")
        return int(val)


def build_root_system(t: LieType | str) -> RootSystem:
    t = LieType.parse(t)
    n = t.rank
    edges = _dynkin_edges(t)
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        C[i - 1][j - 1] = C[j - 1][i - 1] = -1
    cartan = tuple(tuple(r) for r in C)

    def ip(u, v):
        return sum(u[i] * cartan[i][j] * v[j] for i in range(n) for j in range(n) if u[i] and v[j])

    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for b in frontier:
            for i, a in enumerate(simple):
                if ip(b, a) == -1:
                    c = wadd(b, a)
                    if c not in roots:
                        roots.add(c)
                        nxt.append(c)
        frontier = nxt
    positive = tuple(sorted(roots, key=lambda r: (sum(r), r)))
    highest = positive[-1]
    for r in positive:
        if any(x < 0 for x in wsub(highest, r)):
            raise AssertionError(f"{highest} is not maximal over {r}")
    two_delta = tuple(sum(r[i] for r in positive) for i in range(n))
    return RootSystem(t, cartan, positive, highest, two_delta, edges)


def inner(rs: RootSystem, u: Sequence, v: Sequence):
    if len(u) != rs.rank or len(v) != rs.rank:
        raise ValueError("weight length does not match rank")
    return rs.inner(u, v)


def is_root(rs: RootSystem, w: Sequence[int]) -> bool:
    return rs.is_root(w)


@dataclass(frozen=True)
class AsymmetryFunction:
    """Bimultiplicative sign on the root lattice fixed by a Dynkin orientation."""

    lie_type: LieType
    orientation: FrozenSet[Tuple[int, int]]

    @classmethod
    def for_type(cls, t: LieType | str,
                 orientation: Optional[Iterable[Tuple[int, int]]] = None) -> "AsymmetryFunction":
        t = LieType.parse(t)
        edges = {frozenset(e) for e in _dynkin_edges(t)}
        if orientation is None:
            orientation = default_orientation(t)
        orientation = frozenset(tuple(e) for e in orientation)
        if {frozenset(e) for e in orientation} != edges or len(orientation) != len(edges):
            raise ValueError(f"orientation {sorted(orientation)} does not orient the Dynkin diagram of {t} exactly once per edge")
        return cls(t, orientation)

    @cached_property
    def _odd(self) -> Tuple[Tuple[int, ...], ...]:
        n = self.lie_type.rank
        return tuple(tuple(int(i == j or (i + 1, j + 1) in self.orientation) for j in range(n))
                     for i in range(n))

    def simple(self, i: int, j: int) -> int:
        """``eps(alpha_i, alpha_j)`` for 1-based indices."""
        return -1 if self._odd[i - 1][j - 1] else 1

    def __call__(self, a: Sequence[int], b: Sequence[int]) -> int:
        odd = self._odd
        s = 0
        for i, x in enumerate(a):
            if x & 1:
                row = odd[i]
                for j, y in enumerate(b):
                    if y & 1 and row[j]:
                        s += 1
        return -1 if s & 1 else 1

    def fingerprint(self) -> str:
        return ",".join(f"{i}>{j}" for i, j in sorted(self.orientation))


def asymmetry(eps: AsymmetryFunction, a: Sequence[int], b: Sequence[int]) -> int:
    return eps(a, b)
