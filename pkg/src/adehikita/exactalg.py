"""Exact arithmetic kernel.

Sparse multivariate polynomials over ``Fraction`` on a fixed, named variable
tuple, their fraction field, and exact linear algebra on top of both.  Nothing
in here ever touches a float.

A polynomial is bound to its variable tuple: adding a ``Poly`` over
``("t1", "t2")`` to one over ``("z", "hbar")`` raises ``TypeError``.  Plain
``int``/``Fraction`` scalars mix freely with any ``Poly``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Monomial = Tuple[int, ...]

__all__ = [
    "Poly",
    "RatFunc",
    "SingularMatrixError",
    "poly_gcd",
    "substitute",
    "solve_linear",
    "row_reduce",
]


class SingularMatrixError(ArithmeticError):
    pass


def _grlex_key(m: Monomial):
    return (sum(m), m)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class Poly:
    """Sparse polynomial with rational coefficients.

    ``terms`` maps exponent tuples (aligned with ``vars``) to nonzero
    ``Fraction`` coefficients.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None,
                 vars: Sequence[str] = ()):
        self.vars = tuple(vars)
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            nv = len(self.vars)
            for m, c in terms.items():
                if len(m) != nv:
                    raise ValueError(f"monomial {m} does not match variables {self.vars}")
                c = _as_fraction(c)
                if c:
                    clean[tuple(m)] = c
        self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction], vars: Tuple[str, ...]) -> "Poly":
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c, vars: Sequence[str]) -> "Poly":
        vars = tuple(vars)
        c = _as_fraction(c)
        return cls._raw({(0,) * len(vars): c} if c else {}, vars)

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "Poly":
        return cls._raw({}, tuple(vars))

    @classmethod
    def var(cls, name: str, vars: Sequence[str]) -> "Poly":
        vars = tuple(vars)
        if name not in vars:
            raise ValueError(f"{name!r} is not one of {vars}")
        m = tuple(1 if v == name else 0 for v in vars)
        return cls._raw({m: Fraction(1)}, vars)

    @classmethod
    def gens(cls, vars: Sequence[str]) -> Tuple["Poly", ...]:
        return tuple(cls.var(v, vars) for v in vars)

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree(self, var: str | int) -> int:
        i = var if isinstance(var, int) else self.vars.index(var)
        return max((m[i] for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=_grlex_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()] if self.terms else Fraction(0)

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise TypeError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return Poly.const(other, self.vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Poly":
        c = _as_fraction(c)
        if not c:
            return Poly._raw({}, self.vars)
        return Poly._raw({m: v * c for m, v in self.terms.items()}, self.vars)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly._raw(out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            c = _as_fraction(other)
            if not c:
                raise ZeroDivisionError("polynomial division by zero")
            return self.scale(1 / c)
        if isinstance(other, Poly):
            return RatFunc(self, other)
        return NotImplemented

    def divexact(self, d: "Poly") -> "Poly":
        """Quotient ``self / d``; raises ``ArithmeticError`` when ``d`` does not divide."""
        d = self._coerce(d)
        if not d.terms:
            raise ZeroDivisionError("polynomial division by zero")
        dm = d.leading_monomial()
        dc = d.terms[dm]
        rem = dict(self.terms)
        quot: Dict[Monomial, Fraction] = {}
        while rem:
            m = max(rem, key=_grlex_key)
            shift = tuple(a - b for a, b in zip(m, dm))
            if any(e < 0 for e in shift):
                raise ArithmeticError(f"{d} does not divide {self}")
            q = rem[m] / dc
            quot[shift] = q
            for m2, c2 in d.terms.items():
                mm = tuple(a + b for a, b in zip(shift, m2))
                s = rem.get(mm, 0) - q * c2
                if s:
                    rem[mm] = s
                else:
                    rem.pop(mm, None)
        return Poly._raw(quot, self.vars)

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction, Rational)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- evaluation / rendering -------------------------------------------

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        vals = [_as_fraction(values[v]) for v in self.vars]
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for x, e in zip(vals, m):
                if e:
                    term *= x ** e
            total += term
        return total

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, m) if e
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def term_list(self):
        """Structured ``[[exponents, "p/q"], ...]`` in canonical order."""
        return [[list(m), str(c)] for m, c in self.sorted_terms()]

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Poly({self.to_text()!r}, vars={self.vars})"


# -- gcd ------------------------------------------------------------------

def _univariate_coeffs(p: Poly, i: int) -> Dict[int, Poly]:
    """View ``p`` as a polynomial in variable ``i`` with coefficients in the others."""
    out: Dict[int, Dict[Monomial, Fraction]] = {}
    for m, c in p.terms.items():
        k = m[i]
        mm = m[:i] + (0,) + m[i + 1:]
        out.setdefault(k, {})[mm] = c
    return {k: Poly._raw(v, p.vars) for k, v in out.items()}


def _shift(p: Poly, i: int, k: int) -> Poly:
    if k == 0:
        return p
    return Poly._raw(
        {m[:i] + (m[i] + k,) + m[i + 1:]: c for m, c in p.terms.items()}, p.vars)


def _prem(a: Poly, b: Poly, i: int) -> Poly:
    db = b.degree(i)
    lcb = _univariate_coeffs(b, i)[db]
    r = a
    while r.terms and r.degree(i) >= db:
        dr = r.degree(i)
        lcr = _univariate_coeffs(r, i)[dr]
        r = r * lcb - _shift(lcr * b, i, dr - db)
    return r


def _content(p: Poly, i: int) -> Poly:
    return reduce(poly_gcd, _univariate_coeffs(p, i).values())


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (recursive primitive PRS)."""
    if a.vars != b.vars:
        raise TypeError(f"variable mismatch: {a.vars} vs {b.vars}")
    if not a.terms:
        return b.monic()
    if not b.terms:
        return a.monic()
    i = next((k for k in range(len(a.vars))
              if a.degree(k) > 0 or b.degree(k) > 0), None)
    if i is None:
        return Poly.const(1, a.vars)
    if a.degree(i) < b.degree(i):
        a, b = b, a
    ca, cb = _content(a, i), _content(b, i)
    g = poly_gcd(ca, cb)
    a, b = a.divexact(ca), b.divexact(cb)
    while b.terms and b.degree(i) > 0:
        r = _prem(a, b, i)
        a = b
        b = r.divexact(_content(r, i)) if r.terms else r
    if b.terms:
        # nonzero remainder of degree 0 in the main variable: coprime parts
        return g.monic()
    return (g * a).monic()


# -- rational functions ---------------------------------------------------

class RatFunc:
    """Element of the fraction field, kept reduced with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.const(1, num.vars)
        if isinstance(den, (int, Fraction)):
            den = Poly.const(den, num.vars)
        if num.vars != den.vars:
            raise TypeError(f"variable mismatch: {num.vars} vs {den.vars}")
        if not den.terms:
            raise ZeroDivisionError("zero denominator")
        if not num.terms:
            self.num, self.den = num, Poly.const(1, num.vars)
            return
        if den.is_constant():
            g = den
        else:
            g = poly_gcd(num, den)
            if not g.is_constant():
                num, den = num.divexact(g), den.divexact(g)
        lc = den.leading_coefficient()
        self.num = num.scale(1 / lc)
        self.den = den.scale(1 / lc)

    @property
    def vars(self):
        return self.num.vars

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction, Rational)):
            return RatFunc(Poly.const(other, self.vars))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(RatFunc)
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num.terms:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num.scale(1 / self.den.constant_value())

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def to_text(self) -> str:
        if self.den == 1:
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    __str__ = to_text

    def __repr__(self):
        return f"RatFunc({self.to_text()!r})"


# -- substitution ---------------------------------------------------------

def substitute(p: Poly, mapping: Mapping[str, object],
               target_vars: Sequence[str] | None = None) -> Poly:
    """Ring homomorphism sending each variable of ``p`` to ``mapping[var]``.

    Images may be ``Poly`` (over ``target_vars``) or rationals.  Variables
    missing from ``mapping`` are only allowed if they do not occur in ``p``.
    """
    if target_vars is None:
        for img in mapping.values():
            if isinstance(img, Poly):
                target_vars = img.vars
                break
        else:
            target_vars = p.vars
    target_vars = tuple(target_vars)
    images = []
    for k, v in enumerate(p.vars):
        if v in mapping:
            img = mapping[v]
            if not isinstance(img, Poly):
                img = Poly.const(img, target_vars)
            elif img.vars != target_vars:
                raise TypeError(f"image of {v} lives over {img.vars}, expected {target_vars}")
            images.append(img)
        elif any(m[k] for m in p.terms):
            raise KeyError(f"no image given for variable {v!r}")
        else:
            images.append(None)
    powers: Dict[Tuple[int, int], Poly] = {}

    def power(k, e):
        key = (k, e)
        if key not in powers:
            powers[key] = images[k] ** e
        return powers[key]

    total = Poly.zero(target_vars)
    for m, c in p.terms.items():
        term = Poly.const(c, target_vars)
        for k, e in enumerate(m):
            if e:
                term = term * power(k, e)
        total = total + term
    return total


# -- linear algebra -------------------------------------------------------

def solve_linear(A: Sequence[Sequence[object]], b: Sequence[object]):
    """Solve ``A x = b`` exactly over the fraction field.

    Entries may be ``RatFunc``, ``Poly``, or rationals.  Returns a list of
    ``RatFunc`` when any entry is symbolic, else a list of ``Fraction``.
    """
    n = len(A)
    if any(len(row) != n for row in A) or len(b) != n:
        raise ValueError("solve_linear needs a square system")
    symbolic = any(isinstance(x, (Poly, RatFunc)) for row in A for x in row) or \
        any(isinstance(x, (Poly, RatFunc)) for x in b)
    if symbolic:
        vars_ = next(x.vars for row in [*A, b] for x in row
                     if isinstance(x, (Poly, RatFunc)))

        def lift(x):
            if isinstance(x, RatFunc):
                return x
            if isinstance(x, Poly):
                return RatFunc(x)
            return RatFunc(Poly.const(x, vars_))
    else:
        lift = _as_fraction
    M = [[lift(x) for x in row] + [lift(bi)] for row, bi in zip(A, b)]

    def nonzero(x):
        return not x.is_zero() if symbolic else x != 0

    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, n) if nonzero(M[r][col])), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = 1 / M[rank][col] if not symbolic else RatFunc(M[rank][col].den, M[rank][col].num)
        M[rank] = [x * inv for x in M[rank]]
        for r in range(n):
            if r != rank and nonzero(M[r][col]):
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[rank])]
        rank += 1
    if rank < n:
        raise SingularMatrixError(f"matrix is singular: rank {rank} < {n} (defect {n - rank})")
    return [M[i][n] for i in range(n)]


def row_reduce(M: Sequence[Sequence[object]]):
    """Reduced row echelon form over Q and the rank.

    Fraction-free elimination on integer rows with per-row content
    stripping; pivots are normalised to 1 only at the end.
    """
    from math import gcd, lcm

    rows = []
    for row in M:
        fr = [_as_fraction(x) for x in row]
        den = reduce(lcm, (x.denominator for x in fr), 1)
        rows.append([int(x * den) for x in fr])
    if not rows:
        return [], 0
    ncols = len(rows[0])

    def strip(row):
        g = reduce(gcd, row, 0)
        return [x // g for x in row] if g > 1 else row

    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = strip([p * x - f * y for x, y in zip(rows[i], rows[r])])
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    out = []
    for i, row in enumerate(rows):
        if i < r:
            p = row[pivots[i]]
            out.append([Fraction(x, p) for x in row])
        else:
            out.append([Fraction(0)] * ncols)
    return out, r


def poly_from_coeffs(coeffs: Iterable[Tuple[Mapping[str, int], object]],
                     vars: Sequence[str]) -> Poly:
    """Build a ``Poly`` from ``[({"t": 2}, -48), ...]`` pairs."""
    vars = tuple(vars)
    terms: Dict[Monomial, Fraction] = {}
    for expo, c in coeffs:
        m = tuple(expo.get(v, 0) for v in vars)
        terms[m] = terms.get(m, Fraction(0)) + _as_fraction(c)
    return Poly(terms, vars)
