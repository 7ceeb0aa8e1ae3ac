"""Chevalley basis, degree-two PBW arithmetic and the adjoint action.

Basis elements are small integers.  With ``N`` positive roots and rank ``n``:

* ``0 .. N-1``        lowering operators ``Y_a`` (one per positive root ``a``)
* ``N .. N+n-1``      Cartan elements ``h_1 .. h_n``
* ``N+n .. 2N+n-1``   raising operators ``X_a``

Integer order is the PBW order, so a monomial ``(a, b)`` with ``a <= b`` is
already normal ordered.  Elements of the filtered piece ``U^2`` are stored as
dicts keyed by ``()``, ``(a,)`` or ``(a, b)``; the homogenising parameter is
set to 1 and restored on output by total degree.

Structure constants follow Frenkel-Kac: with root vectors ``E_r`` for every
root ``r``, ``[E_r, E_s] = eps(r, s) E_{r+s}`` and ``[E_r, E_{-r}] = -h_r``.
We put ``X_a = E_a`` and ``Y_a = -E_{-a}`` so that ``[X_a, Y_a] = h_a``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exactalg import Poly
from .rootsystem import AsymmetryFunction, RootSystem, Weight, build_root_system, wadd, wneg

__all__ = [
    "ChevalleyAlgebra",
    "U2Element",
    "MIXED",
    "chevalley_algebra",
    "root_label",
]

MIXED = "mixed"

Key = Tuple[int, ...]
Terms = Dict[Key, object]


def _acc(out: Terms, key: Key, c) -> None:
    s = out.get(key)
    s = c if s is None else s + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def root_label(coords: Sequence[int], exponent_style: bool = False) -> str:
    """Subscript label of a positive root: ``123`` for ``a1+a2+a3``.

    Coefficients above 1 get nested bars (``\\bar{3}`` for 2), or ``k^{c}``
    in exponent style.
    """
    parts = []
    for k, c in enumerate(coords, start=1):
        if not c:
            continue
        if exponent_style:
            parts.append(f"{k}^{{{c}}}")
        else:
            s = str(k)
            for _ in range(c - 1):
                s = "\\bar{" + s + "}"
            parts.append(s)
    return "".join(parts)


class ChevalleyAlgebra:
    """The simple Lie algebra of an ADE root system in a Chevalley basis."""

    def __init__(self, rs: RootSystem, eps: Optional[AsymmetryFunction] = None):
        self.rs = rs
        self.eps = eps if eps is not None else AsymmetryFunction.for_type(rs.lie_type)
        if self.eps.lie_type != rs.lie_type:
            raise ValueError("asymmetry function belongs to a different type")
        N = len(rs.positive_roots)
        n = rs.rank
        self.n_pos = N
        self.rank = n
        self.dim = 2 * N + n
        self.cartan0 = N
        self.pos0 = N + n
        zero = (0,) * n
        w: List[Weight] = [wneg(r) for r in rs.positive_roots]
        w += [zero] * n
        w += list(rs.positive_roots)
        self.weights: Tuple[Weight, ...] = tuple(w)
        self._signed = {}
        for k, r in enumerate(rs.positive_roots):
            self._signed[r] = self.pos0 + k
            self._signed[wneg(r)] = k
        self._br: Dict[Tuple[int, int], Tuple[Tuple[int, int], ...]] = {}
        self._ad_cache: Dict[Tuple[int, Key], Terms] = {}
        self._exp_labels = rs.lie_type.family == "E" and rs.rank == 8

    # -- indexing ----------------------------------------------------------

    def X(self, root: Sequence[int]) -> int:
        return self.pos0 + self.rs.root_index[tuple(root)]

    def Y(self, root: Sequence[int]) -> int:
        return self.rs.root_index[tuple(root)]

    def h(self, i: int) -> int:
        """Cartan element ``h_i`` (1-based)."""
        if not 1 <= i <= self.rank:
            raise IndexError(i)
        return self.cartan0 + i - 1

    def simple_X(self, i: int) -> int:
        return self.pos0 + self.rs.root_index[self.rs.simple_roots[i - 1]]

    def simple_Y(self, i: int) -> int:
        return self.rs.root_index[self.rs.simple_roots[i - 1]]

    def kind(self, a: int) -> str:
        if a < self.cartan0:
            return "Y"
        if a < self.pos0:
            return "h"
        return "X"

    def is_cartan(self, a: int) -> bool:
        return self.cartan0 <= a < self.pos0

    def root_of(self, a: int) -> Weight:
        """Positive root underlying a root vector (raises for Cartan)."""
        if a < self.cartan0:
            return self.rs.positive_roots[a]
        if a >= self.pos0:
            return self.rs.positive_roots[a - self.pos0]
        raise ValueError("Cartan element has no root")

    def label(self, a: int) -> str:
        k = self.kind(a)
        if k == "h":
            return f"h_{a - self.cartan0 + 1}"
        r = self.root_of(a)
        if k == "Y" and r == self.rs.highest_root:
            return "Y_\\theta"
        if k == "X" and r == self.rs.highest_root:
            return "X_\\theta"
        return f"{k}_{{{root_label(r, self._exp_labels)}}}"

    # -- Lie bracket ---------------------------------------------------------

    def bracket(self, a: int, b: int) -> Tuple[Tuple[int, int], ...]:
        """``[a, b]`` as a tuple of ``(basis id, integer coefficient)``."""
        key = (a, b)
        hit = self._br.get(key)
        if hit is not None:
            return hit
        res = self._bracket(a, b)
        self._br[key] = res
        return res

    def _bracket(self, a: int, b: int):
        ca, cb = self.is_cartan(a), self.is_cartan(b)
        if ca and cb:
            return ()
        if ca:
            c = self.rs.inner(self.weights[b], self.rs.simple_roots[a - self.cartan0])
            return ((b, c),) if c else ()
        if cb:
            return tuple((x, -c) for x, c in self._bracket(b, a))
        r, s = self.weights[a], self.weights[b]
        sa = 1 if a >= self.pos0 else -1
        sb = 1 if b >= self.pos0 else -1
        t = wadd(r, s)
        if not any(t):
            f = -sa * sb
            return tuple((self.cartan0 + i, f * x) for i, x in enumerate(r) if x)
        tid = self._signed.get(t)
        if tid is None:
            return ()
        st = 1 if tid >= self.pos0 else -1
        return ((tid, sa * sb * st * self.eps(r, s)),)

    # -- degree <= 2 PBW arithmetic -------------------------------------------

    def pbw_mul(self, a: int, b: int) -> Terms:
        """Normal-ordered form of the product ``a * b`` of two basis elements."""
        if a <= b:
            return {(a, b): 1}
        out: Terms = {(b, a): 1}
        for x, c in self.bracket(a, b):
            _acc(out, (x,), c)
        return out

    def mul_linear(self, u: Dict[int, object], v: Dict[int, object]) -> Terms:
        """Product of two Lie elements given as ``{basis id: coefficient}``."""
        out: Terms = {}
        for a, ca in u.items():
            for b, cb in v.items():
                c = ca * cb
                if a <= b:
                    _acc(out, (a, b), c)
                else:
                    _acc(out, (b, a), c)
                    for x, k in self.bracket(a, b):
                        _acc(out, (x,), c * k)
        return out

    def _ad_monomial(self, x: int, key: Key) -> Terms:
        ck = (x, key)
        hit = self._ad_cache.get(ck)
        if hit is not None:
            return hit
        out: Terms = {}
        if len(key) == 1:
            for y, c in self.bracket(x, key[0]):
                _acc(out, (y,), c)
        elif len(key) == 2:
            a, b = key
            # [x, ab] = [x, a] b + a [x, b]
            for y, c in self.bracket(x, a):
                for k, v in self.pbw_mul(y, b).items():
                    _acc(out, k, c * v)
            for y, c in self.bracket(x, b):
                for k, v in self.pbw_mul(a, y).items():
                    _acc(out, k, c * v)
        self._ad_cache[ck] = out
        return out

    def ad(self, x: int, u: Terms) -> Terms:
        out: Terms = {}
        for key, c in u.items():
            if not key:
                continue
            for k, v in self._ad_monomial(x, key).items():
                _acc(out, k, c * v)
        return out

    def symmetrize(self, pairs: Iterable[Tuple[int, int, object]]) -> Terms:
        """Image of ``sum c * x*y`` under the symmetrisation map ``(xy + yx)/2``."""
        out: Terms = {}
        half = Fraction(1, 2)
        for a, b, c in pairs:
            for k, v in self.pbw_mul(a, b).items():
                _acc(out, k, c * v * half)
            for k, v in self.pbw_mul(b, a).items():
                _acc(out, k, c * v * half)
        return out

    def casimir(self) -> Terms:
        """``sum_a (X_a Y_a + Y_a X_a) + sum_i h_i h_i^vee``."""
        out: Terms = {}
        N = self.n_pos
        for k in range(N):
            xa, ya = self.pos0 + k, k
            for key, v in self.pbw_mul(xa, ya).items():
                _acc(out, key, v)
            for key, v in self.pbw_mul(ya, xa).items():
                _acc(out, key, v)
        inv = self.rs.inverse_cartan
        for i in range(self.rank):
            for j in range(self.rank):
                if inv[i][j]:
                    a, b = self.cartan0 + i, self.cartan0 + j
                    _acc(out, (min(a, b), max(a, b)), inv[i][j])
        return out

    def casimir_eigenvalue(self, lam: Sequence) -> Fraction:
        """``(lam, lam + 2 delta)`` for ``lam`` in simple-root coordinates."""
        lam = [Fraction(x) for x in lam]
        return Fraction(self.rs.inner(lam, lam)) + Fraction(self.rs.inner(lam, self.rs.two_delta))

    # -- weights and projection ---------------------------------------------

    def key_weight(self, key: Key) -> Weight:
        w = (0,) * self.rank
        for a in key:
            w = wadd(w, self.weights[a])
        return w

    def weight_of(self, u: Terms):
        ws = {self.key_weight(k) for k in u}
        if not ws:
            return (0,) * self.rank
        if len(ws) > 1:
            return MIXED
        return ws.pop()

    def kappa(self, u: Terms, vars: Sequence[str] = None, coeff_vars: Sequence[str] = ()) -> Poly:
        """Projection of a weight-zero element onto ``U(h)`` along ``n+ U + U n-``.

        The result is a polynomial in ``h_1..h_n`` and ``hbar`` (homogenised
        by PBW degree), plus any coefficient variables such as ``z``.
        ``Y_a X_a = X_a Y_a - h_a`` so it projects to ``-h_a``; any other
        monomial containing a root vector projects to zero.
        """
        w = self.weight_of(u)
        if w == MIXED or any(w):
            raise ValueError(f"kappa needs a weight-zero element, got weight {w}")
        n = self.rank
        coeff_vars = tuple(coeff_vars)
        if vars is None:
            vars = coeff_vars + tuple(f"h{i}" for i in range(1, n + 1)) + ("hbar",)
        vars = tuple(vars)
        hpos = [vars.index(f"h{i}") for i in range(1, n + 1)]
        hb = vars.index("hbar")
        cpos = [vars.index(v) for v in coeff_vars]
        out: Dict[Tuple[int, ...], Fraction] = {}

        def emit(hs: Sequence[int], hdeg: int, c):
            base = [0] * len(vars)
            for i in hs:
                base[hpos[i]] += 1
            base[hb] += hdeg
            if isinstance(c, Poly):
                if c.vars != coeff_vars:
                    raise TypeError(f"coefficient over {c.vars}, expected {coeff_vars}")
                for m, v in c.terms.items():
                    e = list(base)
                    for p, x in zip(cpos, m):
                        e[p] += x
                    _acc(out, tuple(e), v)
            else:
                _acc(out, tuple(base), Fraction(c))

        c0 = self.cartan0
        for key, c in u.items():
            if len(key) == 0:
                emit((), 2, c)
            elif len(key) == 1:
                if self.is_cartan(key[0]):
                    emit((key[0] - c0,), 1, c)
            else:
                a, b = key
                if self.is_cartan(a) and self.is_cartan(b):
                    emit((a - c0, b - c0), 0, c)
                elif a < c0 and b >= self.pos0 and b - self.pos0 == a:
                    for i, x in enumerate(self.rs.positive_roots[a]):
                        if x:
                            emit((i,), 1, -c * x)
        return Poly(out, vars)

    # -- rendering -------------------------------------------------------

    def to_text(self, u: Terms, hbar: bool = True) -> str:
        """Readable rendering, highest PBW degree first."""
        if not u:
            return "0"
        items = sorted(u.items(), key=lambda kv: (-len(kv[0]), kv[0]))
        parts = []
        for key, c in items:
            mono = "".join(self.label(a) for a in key)
            if hbar and len(key) < 2:
                mono += "\\hbar" if len(key) == 1 else "\\hbar^2"
            cs = c.to_text() if isinstance(c, Poly) else str(c)
            if isinstance(c, Poly) and len(c.terms) > 1:
                cs = f"({cs})"
            if cs == "1" and mono:
                cs = ""
            elif cs == "-1" and mono:
                cs = "-"
            parts.append(cs + mono)
        return " + ".join(parts).replace("+ -", "- ")


class U2Element:
    """An element of the degree-two PBW filtration piece, tied to its algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: ChevalleyAlgebra, terms: Optional[Terms] = None):
        self.alg = alg
        self.terms: Terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def basis(cls, alg, a: int):
        return cls(alg, {(a,): 1})

    @classmethod
    def product(cls, alg, a: int, b: int):
        return cls(alg, alg.pbw_mul(a, b))

    @property
    def scalar(self):
        return self.terms.get((), 0)

    @property
    def linear(self) -> Dict[int, object]:
        return {k[0]: v for k, v in self.terms.items() if len(k) == 1}

    @property
    def quadratic(self) -> Dict[Tuple[int, int], object]:
        return {k: v for k, v in self.terms.items() if len(k) == 2}

    def _combine(self, other, sign):
        if not isinstance(other, U2Element) or other.alg is not self.alg:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, sign * v)
        return U2Element(self.alg, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return U2Element(self.alg, {k: -v for k, v in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, U2Element):
            return NotImplemented
        return U2Element(self.alg, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, U2Element):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def ad(self, x: int) -> "U2Element":
        return U2Element(self.alg, self.alg.ad(x, self.terms))

    def weight(self):
        return self.alg.weight_of(self.terms)

    def kappa(self, **kw) -> Poly:
        return self.alg.kappa(self.terms, **kw)

    def to_text(self) -> str:
        return self.alg.to_text(self.terms)

    def __repr__(self):
        return f"U2Element({self.to_text()})"


_ALG_CACHE: Dict[Tuple[str, str], ChevalleyAlgebra] = {}


def chevalley_algebra(t, orientation=None) -> ChevalleyAlgebra:
    """Shared algebra instance for a type and orientation."""
    rs = build_root_system(t)
    eps = AsymmetryFunction.for_type(rs.lie_type, orientation)
    key = (str(rs.lie_type), eps.fingerprint())
    alg = _ALG_CACHE.get(key)
    if alg is None:
        alg = ChevalleyAlgebra(rs, eps)
        _ALG_CACHE[key] = alg
    return alg
