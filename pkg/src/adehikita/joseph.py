"""Joseph-ideal generators, their degree-two ad-closure, and the B-algebra.

Pipeline::

    joseph_generators -> close_under_ad -> extract_relations -> build_b_algebra

The generators are computed, not transcribed: each non-Casimir generator is a
lowest-weight vector of ``U^2`` (a joint kernel of the ``ad Y_i``), which is
unique up to scale at the relevant weight.  Reference forms are parsed and kept
next to them for comparison only.  Type A carries the family parameter ``z``
as a polynomial variable.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .cohomology import MultiplicationTable, RingElement
from .enveloping import ChevalleyAlgebra, Key, Terms, U2Element, _acc, chevalley_algebra
from .exactalg import Poly, row_reduce
from .rootsystem import LieType, Weight, wadd, wneg, wscale, wsub

__all__ = [
    "Generator",
    "GeneratorSet",
    "SubmoduleBasis",
    "BAlgebra",
    "ClosureError",
    "parse_root_subscript",
    "joseph_generators",
    "close_under_ad",
    "extract_relations",
    "build_b_algebra",
    "b_algebra",
    "paper_relation_fixture",
    "paper_generator_forms",
    "casimir_constant",
    "casimir_cartan_fixture",
    "reduce_modulo",
    "HEAVY_TYPES",
    "convention_fingerprint",
    "lowest_weight_vectors",
    "monomials_of_weight",
    "paper_lambda",
]

HEAVY_TYPES = {"E7", "E8"}


class ClosureError(ArithmeticError):
    """Internal inconsistency while building the ideal."""


# -- subscript notation ------------------------------------------------------

_TOKEN = re.compile(r"\\bar\{|\\overline\{|\}|\^\{(\d+)\}|\^(\d)|(\d)|\\theta|,|\s+")


def parse_root_subscript(label: str, rank: int, highest: Optional[Weight] = None) -> Weight:
    """Root coordinates from subscript notation.

    ``"13456"`` is ``a1+a3+a4+a5+a6``; each enclosing ``\\bar{..}`` adds one
    to the coefficient and ``\\overline{k}`` means coefficient 2;
    ``"1^{2}2^{3}"`` is exponent notation.  ``\\theta`` needs ``highest``.
    """
    label = label.strip()
    if label in ("\\theta", "theta"):
        if highest is None:
            raise ValueError("theta needs the highest root")
        return tuple(highest)
    coords = [0] * rank
    stack: List[int] = []
    pos = 0
    last = None
    while pos < len(label):
        m = _TOKEN.match(label, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse root label {label!r} at {label[pos:]!r}")
        tok = m.group(0)
        pos = m.end()
        if tok == "\\bar{":
            stack.append(1)
        elif tok == "\\overline{":
            stack.append(1)
        elif tok == "}":
            if not stack:
                raise ValueError(f"unbalanced braces in {label!r}")
            stack.pop()
        elif m.group(1) or m.group(2):
            if last is None:
                raise ValueError(f"exponent without index in {label!r}")
            coords[last] += int(m.group(1) or m.group(2)) - 1
        elif m.group(3):
            k = int(m.group(3))
            if not 1 <= k <= rank:
                raise ValueError(f"index {k} out of range in {label!r}")
            coords[k - 1] += 1 + len(stack)
            last = k - 1
    if stack:
        raise ValueError(f"unbalanced braces in {label!r}")
    return tuple(coords)


def _interval(n: int, lo: int, hi: int, twos: Tuple[int, int] = (0, -1), extra=()) -> Weight:
    c = [0] * n
    for k in range(lo, hi + 1):
        c[k - 1] = 1
    for k in range(twos[0], twos[1] + 1):
        if k >= 1:
            c[k - 1] = 2
    for k in extra:
        c[k - 1] += 1
    return tuple(c)


# -- generators ----------------------------------------------------------------

@dataclass
class Generator:
    name: str
    element: U2Element
    weight: Weight
    paper_form: Optional[U2Element] = None
    notes: List[str] = field(default_factory=list)


@dataclass
class GeneratorSet:
    lie_type: LieType
    alg: ChevalleyAlgebra
    generators: List[Generator]
    coeff_vars: Tuple[str, ...]
    casimir_constant: object

    def __len__(self):
        return len(self.generators)


_CASIMIR_CONSTANT = {("E", 6): -36, ("E", 7): -84, ("E", 8): -240}
_LAMBDA_NODE = {("E", 6): (6, -3), ("E", 7): (7, -4), ("E", 8): (8, -5)}


def casimir_constant(t, z: Optional[Poly] = None):
    """Eigenvalue of the Casimir the Joseph ideal prescribes.

    ``n z (z/(n+1) + 1)`` for ``A_n`` (a polynomial in ``z``), ``2n - n^2``
    for ``D_n``, and ``-36, -84, -240`` for ``E6, E7, E8``.
    """
    t = LieType.parse(t)
    n = t.rank
    if t.family == "A":
        if z is None:
            (z,) = Poly.gens(("z",))
        return z * z * Fraction(n, n + 1) + z * n
    if t.family == "D":
        return Fraction(2 * n - n * n)
    return Fraction(_CASIMIR_CONSTANT[(t.family, n)])


def paper_lambda(t):
    """Highest weight (simple-root coordinates) whose Casimir value is prescribed."""
    t = LieType.parse(t)
    from .rootsystem import build_root_system
    rs = build_root_system(t)
    if t.family == "A":
        raise ValueError("type A uses a formal parameter")
    if t.family == "D":
        node, k = 1, -(t.rank - 2)
    else:
        node, k = _LAMBDA_NODE[(t.family, t.rank)]
    return tuple(k * x for x in rs.fundamental_weight(node))


def _weight_index(alg: ChevalleyAlgebra) -> Dict[Weight, List[int]]:
    idx: Dict[Weight, List[int]] = {}
    for a, w in enumerate(alg.weights):
        idx.setdefault(w, []).append(a)
    return idx


def monomials_of_weight(alg: ChevalleyAlgebra, mu: Weight) -> List[Key]:
    idx = _weight_index(alg)
    out: List[Key] = []
    if not any(mu):
        out.append(())
    out.extend((a,) for a in idx.get(mu, []))
    for a, w in enumerate(alg.weights):
        for b in idx.get(wsub(mu, w), []):
            if b >= a:
                out.append((a, b))
    return out


def _nullspace(rows: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    rref, rank = row_reduce(rows)
    pivots = []
    for r in range(rank):
        pivots.append(next(c for c, x in enumerate(rref[r]) if x))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rref[r][f]
        basis.append(v)
    return basis


def lowest_weight_vectors(alg: ChevalleyAlgebra, mu: Weight) -> List[Terms]:
    """Basis of ``{u in U^2 of weight mu : ad Y_i (u) = 0 for all i}``."""
    src = monomials_of_weight(alg, mu)
    col = {k: c for c, k in enumerate(src)}
    rows: Dict[Tuple[int, Key], List[Fraction]] = {}
    for i in range(1, alg.rank + 1):
        y = alg.simple_Y(i)
        for k in src:
            for tk, v in alg.ad(y, {k: 1}).items():
                row = rows.setdefault((i, tk), [Fraction(0)] * len(src))
                row[col[k]] += v
    basis = _nullspace(list(rows.values()), len(src))
    return [{src[c]: x for c, x in enumerate(v) if x} for v in basis]


def _component_highest_roots(rs) -> List[Weight]:
    """Highest roots of the components left after deleting nodes adjacent to theta."""
    n = rs.rank
    theta = rs.highest_root
    removed = {i for i in range(n) if rs.inner(theta, rs.simple_roots[i])}
    keep = [i for i in range(n) if i not in removed]
    adj = {i: set() for i in keep}
    for a, b in rs.edges:
        a, b = a - 1, b - 1
        if a in adj and b in adj:
            adj[a].add(b)
            adj[b].add(a)
    seen = set()
    out = []
    for s in keep:
        if s in seen:
            continue
        comp, stack = set(), [s]
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(adj[v] - comp)
        seen |= comp
        cands = [r for r in rs.positive_roots if all(r[i] == 0 for i in range(n) if i not in comp)]
        out.append(max(cands, key=lambda r: (sum(r), r)))
    return sorted(out, key=lambda r: tuple(-x for x in r))


def _parabolic_image(alg: ChevalleyAlgebra, u: Terms, levi: set, lam: Dict[int, object]) -> Terms:
    """Image of ``u . v`` in the parabolically induced module ``U(g) (x) C_lam``.

    ``levi`` holds 0-based simple-root indices of the Levi factor, ``lam``
    the values of the weight on the Cartan elements (0-based).  Valid for
    degree <= 2 elements when the nilradical is abelian.
    """
    n = alg.rank

    def in_levi(a):
        r = alg.root_of(a)
        return all(r[i] == 0 for i in range(n) if i not in levi)

    def lam_of(a):
        return lam.get(a - alg.cartan0, 0)

    out: Terms = {}

    def linear(a, c):
        if alg.is_cartan(a):
            v = lam_of(a)
            if v:
                _acc(out, (), c * v)
        elif a < alg.cartan0 and not in_levi(a):
            _acc(out, (a,), c)

    for key, c in u.items():
        if not key:
            _acc(out, (), c)
        elif len(key) == 1:
            linear(key[0], c)
        else:
            a, b = key
            if b >= alg.pos0:
                continue
            if alg.is_cartan(b):
                v = lam_of(b)
                if v:
                    linear(a, c * v)
                continue
            # both lowering
            if in_levi(b):
                continue
            if in_levi(a):
                for x, k in alg.bracket(a, b):
                    linear(x, c * k)
            else:
                _acc(out, (a, b), c)
    return out


def _terms_from_products(alg, products, coeff_one=1) -> Terms:
    """``sum coef * f1 * f2`` with factors given as basis ids, in the reference order."""
    out: Terms = {}
    for coef, factors in products:
        if len(factors) == 0:
            _acc(out, (), coef)
        elif len(factors) == 1:
            _acc(out, (factors[0],), coef)
        else:
            for k, v in alg.pbw_mul(*factors).items():
                _acc(out, k, coef * v)
    return out


_E_LOWEST_REFERENCE = {
    6: [(1, "13456", "\\theta"),
        (-1, "123456", "12\\bar{3}\\bar{\\bar{4}}\\bar{5}6"),
        (-1, "123\\bar{4}56", "12\\bar{3}\\bar{4}\\bar{5}6"),
        (-1, "12\\bar{3}\\bar{4}56", "123\\bar{4}\\bar{5}6")],
    7: [(1, "23\\bar{4}\\bar{5}\\bar{6}7", "\\theta"),
        (-1, "123\\bar{4}\\bar{5}\\bar{6}7", "1\\bar{2}\\bar{\\bar{3}}\\bar{\\bar{\\bar{4}}}\\bar{\\bar{5}}\\bar{6}7"),
        (-1, "12\\bar{3}\\bar{4}\\bar{5}\\bar{6}7", "1\\bar{2}\\bar{3}\\bar{\\bar{\\bar{4}}}\\bar{\\bar{5}}\\bar{6}7"),
        (-1, "12\\bar{3}\\bar{\\bar{4}}\\bar{5}\\bar{6}7", "1\\bar{2}\\bar{3}\\bar{\\bar{4}}\\bar{\\bar{5}}\\bar{6}7"),
        (-1, "12\\bar{3}\\bar{\\bar{4}}\\bar{\\bar{5}}\\bar{6}7", "1\\bar{2}\\bar{3}\\bar{\\bar{4}}\\bar{5}\\bar{6}7")],
    8: [(1, "1^{2}2^{2}3^{3}4^{4}5^{3}6^{2}7^1", "\\theta"),
        (-1, "1^{2}2^{2}3^{3}4^{4}5^{3}6^{2}7^{1}8^{1}", "1^{2}2^{3}3^{4}4^{6}5^{5}6^{4}7^{3}8^1"),
        (-1, "1^{2}2^{2}3^{3}4^{4}5^{3}6^{2}7^{2}8^1", "1^{2}2^{3}3^{4}4^{6}5^{5}6^{4}7^{2}8^1"),
        (-1, "1^{2}2^{2}3^{3}4^{4}5^{3}6^{3}7^{2}8^1", "1^{2}2^{3}3^{4}4^{6}5^{5}6^{3}7^{2}8^1"),
        (-1, "1^{2}2^{2}3^{3}4^{4}5^{4}6^{3}7^{2}8^1", "1^{2}2^{3}3^{4}4^{6}5^{3}6^{3}7^{2}8^1"),
        (-1, "1^{2}2^{2}3^{3}4^{5}5^{4}6^{3}7^{2}8^1", "1^{2}2^{3}3^{4}4^{5}5^{3}6^{3}7^{2}8^1"),
        (-1, "1^{2}2^{2}3^{4}4^{5}5^{4}6^{3}7^{2}8^1", "1^{2}2^{3}3^{3}4^{5}5^{3}6^{3}7^{2}8^1")],
}


def paper_generator_forms(t) -> List[Tuple[str, List[Tuple[object, Tuple[Weight, Weight]]]]]:
    """Reference non-Casimir generators as ``(name, [(coef, (root_a, root_b)), ...])``.

    Each pair is a product ``Y_a Y_b`` of lowering operators in reference order.
    Terms of the type-A adjoint generator that are not of this shape are
    handled in :func:`joseph_generators`.
    """
    t = LieType.parse(t)
    from .rootsystem import build_root_system
    rs = build_root_system(t)
    n = t.rank
    th = rs.highest_root
    out = []
    if t.family == "A":
        if n >= 3:
            out.append(("lowest weight -(theta+a2+..+a_{n-1})", [
                (1, (th, _interval(n, 2, n - 1))),
                (-1, (_interval(n, 1, n - 1), _interval(n, 2, n)))]))
        return out
    if t.family == "D":
        if n >= 5:
            terms = []
            for k in range(1, n - 1):
                terms.append((1, (_interval(n, 1, k), _interval(n, 1, n, (k + 1, n - 2)))))
            terms.append((1, (_interval(n, 1, n - 1), _interval(n, 1, n - 2, extra=(n,)))))
            out.append(("lowest weight -(theta+a1)", terms))
            out.append(("lowest weight -(theta+theta')", [
                (1, (_interval(n, 2, n, (4, n - 2)), _interval(n, 1, n, (3, n - 2)))),
                (-1, (_interval(n, 1, n, (4, n - 2)), _interval(n, 2, n, (3, n - 2)))),
                (-1, (_interval(n, 3, n, (4, n - 2)), th))]))
        return out
    terms = []
    for c, a, b in _E_LOWEST_REFERENCE[n]:
        terms.append((c, (parse_root_subscript(a, n, th), parse_root_subscript(b, n, th))))
    out.append((f"lowest weight of the non-adjoint summand", terms))
    return out


def _match_reference(alg, computed: Terms, reference_terms) -> Tuple[Optional[U2Element], List[str]]:
    """Scale the computed vector to the reference one and list disagreements."""
    notes = []
    prods = []
    for c, (ra, rb) in reference_terms:
        if not (alg.rs.is_root(ra) and alg.rs.is_root(rb)):
            notes.append(f"reference factor is not a root: {ra if not alg.rs.is_root(ra) else rb}")
            return None, notes
        prods.append((c, (alg.Y(ra), alg.Y(rb))))
    reference = _terms_from_products(alg, prods)
    pform = U2Element(alg, reference)
    w = alg.weight_of(reference)
    if w != alg.weight_of(computed):
        notes.append(f"reference form has weight {w}, expected {alg.weight_of(computed)}")
        return pform, notes
    k0 = min(reference)
    if k0 not in computed:
        notes.append("reference leading term absent from the computed vector")
        return pform, notes
    scale = Fraction(reference[k0]) / Fraction(computed[k0])
    scaled = {k: v * scale for k, v in computed.items()}
    for k in sorted(set(scaled) | set(reference)):
        a, b = scaled.get(k, 0), reference.get(k, 0)
        if a != b:
            label = "".join(alg.label(x) for x in k)
            if a == -b:
                notes.append(f"sign of {label} differs (convention dependent)")
            else:
                notes.append(f"coefficient of {label}: reference {b}, computed {a}")
    return pform, notes


def joseph_generators(t, orientation=None) -> GeneratorSet:
    t = LieType.parse(t)
    alg = chevalley_algebra(t, orientation)
    rs = alg.rs
    n = rs.rank
    theta = rs.highest_root
    gens: List[Generator] = []
    reference_list = paper_generator_forms(t)
    coeff_vars: Tuple[str, ...] = ("z",) if t.family == "A" else ()

    def lift(c):
        return Poly.const(c, coeff_vars) if coeff_vars else c

    for beta in _component_highest_roots(rs):
        mu = wneg(wadd(theta, beta))
        ker = lowest_weight_vectors(alg, mu)
        if len(ker) != 1:
            raise ClosureError(f"expected a unique lowest-weight vector at {mu}, found {len(ker)}")
        v = ker[0]
        pform, notes = None, []
        match = [terms for _, terms in reference_list if wneg(wadd(*terms[0][1])) == mu]
        if match:
            pform, notes = _match_reference(alg, v, match[0])
        if pform is not None and pform.terms:
            lead = min(pform.terms)
            if lead in v:
                s = Fraction(pform.terms[lead]) / Fraction(v[lead])
                v = {k: c * s for k, c in v.items()}
        else:
            s = 1 / Fraction(v[min(v)])
            v = {k: c * s for k, c in v.items()}
        v = {k: lift(c) for k, c in v.items()}
        gens.append(Generator(f"lowest weight {mu}", U2Element(alg, v), mu, pform, notes))

    if t.family == "A" and n >= 2:
        gens.append(_type_a_adjoint_generator(alg))

    C = alg.casimir()
    c_lam = casimir_constant(t)
    cas = {k: lift(v) for k, v in C.items()}
    _acc(cas, (), -c_lam)
    gens.append(Generator("casimir", U2Element(alg, cas), (0,) * n))
    return GeneratorSet(t, alg, gens, coeff_vars, c_lam)


def _type_a_adjoint_generator(alg: ChevalleyAlgebra) -> Generator:
    """The generator of weight ``-theta`` for ``A_n``, including its ``z`` term.

    The quadratic part is the lowest-weight vector of the adjoint summand;
    the multiple of ``Y_theta`` is fixed by requiring the element to kill
    the highest-weight vector of the module induced from the character
    ``z * omega_n`` of the maximal parabolic omitting ``a_n``.
    """
    rs = alg.rs
    n = rs.rank
    theta = rs.highest_root
    (z,) = Poly.gens(("z",))
    mu = wneg(theta)
    ker = lowest_weight_vectors(alg, mu)
    yth = alg.Y(theta)
    quad = [v for v in ker if any(len(k) == 2 for k in v)]
    if len(ker) != 2 or not quad:
        raise ClosureError(f"unexpected lowest-weight space at -theta: dimension {len(ker)}")
    v = dict(quad[0])
    v.pop((yth,), None)
    hn = (yth, alg.h(n))
    s = Fraction(n - 1) / Fraction(v[hn])
    v = {k: c * s for k, c in v.items()}
    zv = {k: Poly.const(c, ("z",)) for k, c in v.items()}
    img = _parabolic_image(alg, zv, set(range(n - 1)), {n - 1: z})
    f = img.get((yth,), 0)
    zv[(yth,)] = -f if f else Poly.zero(("z",))
    img = _parabolic_image(alg, zv, set(range(n - 1)), {n - 1: z})
    if img:
        raise ClosureError("adjoint generator does not annihilate the induced highest-weight vector")
    zv = {k: c for k, c in zv.items() if c}

    # reference form: -(n+1) sum_k Y_{k+1..n} Y_{1..k} + sum_k (2k-1-n) Y_theta h_k + (1-n) z Y_theta
    prods = []
    for k in range(1, n):
        prods.append((Poly.const(-(n + 1), ("z",)), (alg.Y(_interval(n, k + 1, n)), alg.Y(_interval(n, 1, k)))))
    for k in range(1, n + 1):
        prods.append((Poly.const(2 * k - 1 - n, ("z",)), (yth, alg.h(k))))
    prods.append(((1 - n) * z, (yth,)))
    reference = _terms_from_products(alg, prods)
    # Root-vector signs are convention dependent: Y_a Y_b terms and the
    # reordering constant in front of Y_theta may flip.  The z term and the
    # Y_theta h_k terms are not.
    notes = []
    for k in sorted(set(reference) | set(zv)):
        a, b = zv.get(k, 0), reference.get(k, 0)
        if a == b:
            continue
        label = "".join(alg.label(x) for x in k) or "1"
        if k == (yth,):
            za, zb = a - a.evaluate({"z": 0}), b - b.evaluate({"z": 0})
            if za == zb:
                notes.append(f"constant of {label}: reference {b}, computed {a} (convention dependent)")
                continue
        elif len(k) == 2 and not any(alg.is_cartan(x) for x in k) and a == -b:
            notes.append(f"sign of {label} differs (convention dependent)")
            continue
        notes.append(f"coefficient of {label}: reference {b}, computed {a}")
    return Generator("lowest weight -theta (adjoint summand)", U2Element(alg, zv), mu,
                     U2Element(alg, reference), notes)


# -- closure -------------------------------------------------------------------

def _as_rational(c):
    if isinstance(c, Poly):
        if not c.is_constant():
            raise ClosureError(f"non-rational pivot coefficient {c}")
        return c.constant_value()
    return Fraction(c)


@dataclass
class SubmoduleBasis:
    lie_type: LieType
    alg: ChevalleyAlgebra = field(repr=False)
    mode: str
    rows: Dict[Weight, Dict[Key, Terms]] = field(repr=False)
    coeff_vars: Tuple[str, ...] = ()
    seconds: float = 0.0

    @property
    def dimension(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def weight_dimension(self, mu: Weight) -> int:
        return len(self.rows.get(tuple(mu), {}))

    def zero_weight_rows(self) -> List[Terms]:
        return list(self.rows.get((0,) * self.alg.rank, {}).values())

    def reduce(self, v: Terms) -> Terms:
        if not v:
            return v
        w = self.alg.weight_of(v)
        block = self.rows.get(w)
        if not block:
            return dict(v)
        v = dict(v)
        for p in [k for k in v if k in block]:
            c = v.get(p)
            if not c:
                continue
            for k, x in block[p].items():
                _acc(v, k, -c * x)
        return v

    def contains(self, v: Terms) -> bool:
        return not self.reduce(v)

    def _ops(self) -> List[int]:
        alg = self.alg
        xs = [alg.simple_X(i) for i in range(1, alg.rank + 1)]
        if self.mode == "zero":
            return xs
        return xs + [alg.simple_Y(i) for i in range(1, alg.rank + 1)]

    def _admissible(self, w: Weight) -> bool:
        return self.mode != "zero" or all(x <= 0 for x in w)

    def stability_defects(self, limit: int = 10) -> List[Tuple[Key, int]]:
        """Basis elements whose image under a simple ad leaves the span."""
        bad = []
        for w, block in self.rows.items():
            for p, row in block.items():
                for x in self._ops():
                    img = self.alg.ad(x, row)
                    if not img or not self._admissible(self.alg.weight_of(img)):
                        continue
                    if self.reduce(img):
                        bad.append((p, x))
                        if len(bad) >= limit:
                            return bad
        return bad


def close_under_ad(g: GeneratorSet, mode: str = "full", max_dim: Optional[int] = None,
                   progress: Optional[Callable[[int], None]] = None) -> SubmoduleBasis:
    """Smallest ad-stable subspace of ``U^2`` containing the generators.

    ``mode="full"`` closes under every simple ``ad X_i`` and ``ad Y_i``.
    ``mode="zero"`` only builds weights ``<= 0`` by raising from the
    lowest-weight generators, which yields the same weight-zero part at a
    fraction of the cost.
    """
    if mode not in ("full", "zero"):
        raise ValueError("mode must be 'full' or 'zero'")
    alg = g.alg
    t0 = time.time()
    sub = SubmoduleBasis(g.lie_type, alg, mode, {}, g.coeff_vars)
    if max_dim is None:
        N = alg.dim
        max_dim = N * (N + 1) // 2
    queue: List[Terms] = []

    def insert(v: Terms):
        v = sub.reduce(v)
        if not v:
            return
        quad = [k for k in v if len(k) == 2]
        if not quad:
            raise ClosureError("ideal meets the degree-one filtration piece")
        p = max(quad)
        inv = 1 / _as_rational(v[p])
        v = {k: c * inv for k, c in v.items()}
        v[p] = Fraction(1)
        w = alg.weight_of(v)
        block = sub.rows.setdefault(w, {})
        for q, row in block.items():
            c = row.get(p)
            if c:
                for k, x in v.items():
                    _acc(row, k, -c * x)
        block[p] = v
        queue.append(v)
        if sub.dimension > max_dim:
            raise ClosureError(f"closure dimension exceeds the bound {max_dim}")
        if progress is not None:
            progress(sub.dimension)

    for gen in g.generators:
        insert(dict(gen.element.terms))
    ops = sub._ops()
    while queue:
        v = queue.pop()
        for x in ops:
            img = alg.ad(x, v)
            if img and sub._admissible(alg.weight_of(img)):
                insert(img)
    sub.seconds = time.time() - t0
    return sub


# -- relations and the B-algebra -----------------------------------------------

def _h_vars(n: int, coeff_vars: Tuple[str, ...]) -> Tuple[str, ...]:
    return coeff_vars + tuple(f"h{i}" for i in range(1, n + 1)) + ("hbar",)


def extract_relations(sub: SubmoduleBasis) -> Dict[Tuple[int, int], Poly]:
    """``{(i, j): h_i h_j - (lower terms)}`` spanning the projected weight-zero part."""
    alg = sub.alg
    n = alg.rank
    cv = sub.coeff_vars
    vars_ = _h_vars(n, cv)
    hoff = len(cv)
    polys = [alg.kappa(r, vars_, cv) for r in sub.zero_weight_rows()]
    quad_keys = [(i, j) for i in range(n) for j in range(i, n)]

    def mono(i, j):
        e = [0] * len(vars_)
        e[hoff + i] += 1
        e[hoff + j] += 1
        return tuple(e)

    qmonos = [mono(i, j) for i, j in quad_keys]
    rows = list(polys)
    pivots: Dict[int, int] = {}
    r = 0
    for col, m in enumerate(qmonos):
        piv = next((i for i in range(r, len(rows)) if rows[i].coefficient(m)), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = rows[r].scale(1 / rows[r].coefficient(m))
        for i in range(len(rows)):
            if i != r:
                c = rows[i].coefficient(m)
                if c:
                    rows[i] = rows[i] - rows[r].scale(c)
        pivots[col] = r
        r += 1
    for i in range(r, len(rows)):
        if not rows[i].is_zero():
            raise ClosureError(f"projected relation without quadratic part: {rows[i]}")
    if r != len(qmonos):
        raise ClosureError(f"only {r} independent quadratic relations, expected {len(qmonos)}")
    return {(quad_keys[c][0] + 1, quad_keys[c][1] + 1): rows[pivots[c]] for c in range(len(qmonos))}


@dataclass
class BAlgebra:
    lie_type: LieType
    base_vars: Tuple[str, ...]
    relations: Dict[Tuple[int, int], Poly]
    table: MultiplicationTable
    notes: Dict[Tuple[int, int], str] = field(default_factory=dict)

    def to_json(self) -> dict:
        d = self.table.to_json()
        d["type"] = str(self.lie_type)
        return d


def build_b_algebra(rels: Dict[Tuple[int, int], Poly], t=None) -> BAlgebra:
    """Multiplication table on ``{1, h_1..h_n}`` from a complete relation set."""
    if not rels:
        raise ValueError("empty relation set")
    some = next(iter(rels.values()))
    vars_ = some.vars
    n = sum(1 for v in vars_ if re.fullmatch(r"h\d+", v))
    expected = {(i, j) for i in range(1, n + 1) for j in range(i, n + 1)}
    if set(rels) != expected:
        missing = sorted(expected - set(rels))
        raise ValueError(f"incomplete relation set, missing {missing[:5]}")
    base = tuple(v for v in vars_ if not re.fullmatch(r"h\d+", v))
    hidx = [vars_.index(f"h{i}") for i in range(1, n + 1)]
    bidx = [vars_.index(v) for v in base]
    entries = {}
    for (i, j), p in rels.items():
        c0: Dict[Tuple[int, ...], Fraction] = {}
        cs: List[Dict[Tuple[int, ...], Fraction]] = [dict() for _ in range(n)]
        for m, c in p.terms.items():
            hdeg = [m[k] for k in hidx]
            bm = tuple(m[k] for k in bidx)
            tot = sum(hdeg)
            if tot == 2:
                want = [0] * n
                want[i - 1] += 1
                want[j - 1] += 1
                if hdeg != want or c != 1:
                    raise ValueError(f"relation {(i, j)} is not normalised: {p}")
                continue
            if tot == 0:
                c0[bm] = c0.get(bm, 0) - c
            elif tot == 1:
                k = hdeg.index(1)
                cs[k][bm] = cs[k].get(bm, 0) - c
            else:
                raise ValueError(f"relation {(i, j)} has degree > 2 in h: {p}")
        entries[(i, j)] = RingElement(Poly(c0, base), tuple(Poly(x, base) for x in cs))
    lt = LieType.parse(t) if t is not None else None
    label = f"{lt} B-algebra" if lt else "B-algebra"
    return BAlgebra(lt, base, dict(rels), MultiplicationTable(n, base, entries, "h", label))


def reduce_modulo(p: Poly, b: BAlgebra) -> Poly:
    """Rewrite every quadratic ``h`` monomial of ``p`` through the relations."""
    vars_ = p.vars
    n = b.table.n
    hidx = [vars_.index(f"h{i}") for i in range(1, n + 1)]
    out = Poly.zero(vars_)
    for m, c in p.terms.items():
        hs = [k for k in range(n) for _ in range(m[hidx[k]])]
        if len(hs) > 2:
            raise ValueError("only degree <= 2 in h is supported")
        if len(hs) < 2:
            out = out + Poly({m: c}, vars_)
            continue
        rest = list(m)
        for k in hs:
            rest[hidx[k]] -= 1
        restp = Poly({tuple(rest): c}, vars_)
        rel = b.relations[(hs[0] + 1, hs[1] + 1)]
        out = out + restp * (Poly.var(f"h{hs[0] + 1}", vars_) * Poly.var(f"h{hs[1] + 1}", vars_) - rel)
    return out


def convention_fingerprint(alg: ChevalleyAlgebra) -> str:
    """Orientation plus a short hash of the sign table on positive roots."""
    roots = alg.rs.positive_roots
    signs = "".join("+" if alg.eps(a, b) > 0 else "-" for a in roots for b in roots)
    digest = hashlib.sha256(signs.encode()).hexdigest()[:12]
    return f"{alg.eps.fingerprint()}|{digest}"


def _cache_file(cache_dir, t: LieType, fingerprint: str, mode: str) -> Optional[Path]:
    if not cache_dir:
        return None
    orient, digest = fingerprint.split("|")
    safe = re.sub(r"[^0-9A-Za-z_]", "", orient.replace(">", "to").replace(",", "_"))
    return Path(cache_dir) / f"balgebra_{t}_{mode}_{safe}_{digest}.json"


def b_algebra(t, orientation=None, mode: Optional[str] = None, cache_dir=None,
              allow_heavy: bool = True) -> Tuple[BAlgebra, SubmoduleBasis | None]:
    """End-to-end B-algebra computation, optionally cached on disk.

    Returns the algebra and the closure (``None`` when loaded from cache).
    """
    t = LieType.parse(t)
    if str(t) in HEAVY_TYPES and not allow_heavy:
        raise PermissionError(f"{t} closure is heavy; pass allow_heavy=True")
    if mode is None:
        mode = "zero" if str(t) in HEAVY_TYPES else "full"
    gens = joseph_generators(t, orientation)
    path = _cache_file(cache_dir, t, convention_fingerprint(gens.alg), mode)
    if path is not None and path.exists():
        data = json.loads(path.read_text())
        vars_ = tuple(data["vars"])
        rels = {}
        for item in data["relations"]:
            rels[(item["i"], item["j"])] = Poly({tuple(m): Fraction(c) for m, c in item["terms"]}, vars_)
        return build_b_algebra(rels, t), None
    sub = close_under_ad(gens, mode)
    rels = extract_relations(sub)
    b = build_b_algebra(rels, t)
    if path is not None:
        os.makedirs(path.parent, exist_ok=True)
        some = next(iter(rels.values()))
        payload = {
            "type": str(t), "mode": mode, "convention": convention_fingerprint(gens.alg),
            "closure_dimension": sub.dimension, "vars": list(some.vars),
            "relations": [{"i": i, "j": j, "terms": p.term_list()} for (i, j), p in sorted(rels.items())],
        }
        path.write_text(json.dumps(payload, sort_keys=True))
    return b, sub


# -- reference relation tables ---------------------------------------------------

_E_REL = {
    6: {
        (4, 4): ((4, 6, 8, 13, 8, 4), -12), (3, 3): ((4, 6, 8, 13, 8, 4), -12),
        (1, 1): ((7, 6, 10, 12, 8, 4), -12), (2, 2): ((4, 6, 10, 12, 8, 4), -12),
        (5, 5): ((4, 6, 8, 12, 10, 4), -12), (6, 6): ((4, 6, 8, 12, 10, 7), -12),
        (1, 3): ((-2, -3, -5, -6, -4, -2), 6), (2, 4): ((-2, -3, -4, -6, -4, -2), 6),
        (3, 4): ((-2, -3, -4, -6, -4, -2), 6), (4, 5): ((-2, -3, -4, -6, -4, -2), 6),
        (5, 6): ((-2, -3, -4, -6, -5, -2), 6),
    },
    7: {
        (2, 4): ((4, 6, 8, 12, 9, 6, 3), -12),
        (4, 4): ((-8, -12, -16, -25, -18, -12, -6), 24),
        (3, 3): ((-8, -12, -18, -24, -18, -12, -6), 24),
        (2, 2): ((-8, -14, -16, -24, -18, -12, -6), 24),
        (1, 1): ((-8, -12, -16, -24, -18, -12, -6), 24),
        (5, 5): ((-8, -12, -16, -24, -20, -12, -6), 24),
        (6, 6): ((-8, -12, -16, -24, -20, -15, -6), 24),
        (7, 7): ((-8, -12, -16, -24, -20, -16, -10), 24),
        (3, 4): ((4, 6, 8, 12, 9, 6, 3), -12), (4, 5): ((4, 6, 8, 12, 9, 6, 3), -12),
        (1, 3): ((4, 6, 9, 12, 9, 6, 3), -12), (5, 6): ((4, 6, 8, 12, 10, 6, 3), -12),
        (6, 7): ((4, 6, 8, 12, 10, 8, 3), -12),
    },
    8: {
        (4, 4): ((20, 30, 40, 61, 48, 36, 24, 12), -60),
        (2, 2): ((20, 32, 40, 60, 48, 36, 24, 12), -60),
        (3, 3): ((20, 30, 42, 61, 48, 36, 24, 12), -60),
        (1, 1): ((23, 30, 42, 60, 48, 36, 24, 12), -60),
        (5, 5): ((20, 30, 40, 60, 50, 36, 24, 12), -60),
        (6, 6): ((20, 30, 40, 60, 50, 39, 24, 12), -60),
        (7, 7): ((20, 30, 40, 60, 50, 40, 28, 12), -60),
        (8, 8): ((20, 30, 40, 60, 50, 40, 30, 17), -60),
        (2, 4): ((-10, -15, -20, -30, -24, -18, -12, -6), 30),
        (3, 4): ((-10, -15, -20, -30, -24, -18, -12, -6), 30),
        (4, 5): ((-10, -15, -20, -30, -24, -18, -12, -6), 30),
        (1, 3): ((-10, -15, -21, -30, -24, -18, -12, -6), 30),
        (5, 6): ((-10, -15, -20, -30, -25, -18, -12, -6), 30),
        (6, 7): ((-10, -15, -20, -30, -25, -20, -12, -6), 30),
        (7, 8): ((-10, -15, -20, -30, -25, -20, -15, -6), 30),
    },
}


def _table_from_entries(t, n, base, entries, notes) -> BAlgebra:
    vars_ = base[:-1] + tuple(f"h{i}" for i in range(1, n + 1)) + ("hbar",)
    rels = {}
    for (i, j), el in entries.items():
        hh = Poly.var(f"h{i}", vars_) * Poly.var(f"h{j}", vars_)
        rhs = _lift_base(el.c0, base, vars_)
        for k in range(n):
            if not el.c[k].is_zero():
                rhs = rhs + _lift_base(el.c[k], base, vars_) * Poly.var(f"h{k + 1}", vars_)
        rels[(i, j)] = hh - rhs
    tab = MultiplicationTable(n, base, entries, "h", f"{t} reference B-algebra")
    return BAlgebra(LieType.parse(t), base, rels, tab, notes)


def _lift_base(p: Poly, base, vars_) -> Poly:
    idx = [vars_.index(v) for v in base]
    out = {}
    for m, c in p.terms.items():
        e = [0] * len(vars_)
        for k, x in zip(idx, m):
            e[k] = x
        out[tuple(e)] = c
    return Poly(out, vars_)


def paper_relation_fixture(t) -> BAlgebra:
    """Reference B-algebra relations for a type (cross-check fixture).

    ``notes`` flags entries whose reference form is internally inconsistent.
    """
    t = LieType.parse(t)
    n = t.rank
    if t.family == "A":
        base = ("z", "hbar")
        z, hb = Poly.gens(base)
        zero = Poly.zero(base)
        a = (z + n + 1) * Fraction(1, n + 1)
        b = z * Fraction(1, n + 1)
        top = z * (z * Fraction(1, n + 1) + 1)
        entries = {}
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                c = [zero] * n
                c0 = zero
                if j == i:
                    for l in range(1, i):
                        c[l - 1] = 2 * l * a * hb
                    c[i - 1] = ((n + 2 - i) * b + (i + 1) * a) * hb
                    for l in range(i + 1, n + 1):
                        c[l - 1] = 2 * (n + 1 - l) * b * hb
                    c0 = -2 * top * hb * hb
                elif j == i + 1:
                    for l in range(1, i + 1):
                        c[l - 1] = -l * a * hb
                    for l in range(i + 1, n + 1):
                        c[l - 1] = -(n + 1 - l) * b * hb
                    c0 = top * hb * hb
                entries[(i, j)] = RingElement(c0, tuple(c))
        notes = {k: "closed form violates (h_1+..+h_n)h_2 = h_2 hbar unless z = 0"
                 for k, el in entries.items() if not el.is_zero()}
        return _table_from_entries(t, n, base, entries, notes)
    base = ("hbar",)
    (hb,) = Poly.gens(base)
    zero = Poly.zero(base)
    entries = {}
    notes: Dict[Tuple[int, int], str] = {}

    def el(coeffs, const):
        return RingElement(const * hb * hb, tuple(Fraction(x) * hb for x in coeffs))

    if t.family == "E":
        rel = _E_REL[n]
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                if (i, j) in rel:
                    coeffs, const = rel[(i, j)]
                    entries[(i, j)] = el(coeffs, const)
                else:
                    entries[(i, j)] = RingElement.zero(n, base)
        if n == 6:
            notes[(3, 3)] = "identical to the h4^2 line"
            notes[(2, 2)] = "coefficients coincide with the expected h3^2 line"
        if n == 7:
            for key in rel:
                notes[key] = "right-hand side has the opposite sign"
            notes[(1, 1)] = "right-hand side has the opposite sign and h1, h3 coefficients 8, 16 instead of 11, 18"
        return _table_from_entries(t, n, base, entries, notes)
    # D_n
    half = Fraction(n - 2, 2)
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if (i, j) in ((n - 2, n), (n - 1, n)):
                coeffs = [-k for k in range(1, n - 1)] + [-half, -1]
                entries[(i, j)] = el(coeffs, 0)
                notes[(i, j)] = "given equal for (n-2,n) and (n-1,n), with a stray t, and also as zero"
            elif j == i and i <= n - 2:
                coeffs = [2 * k if k < i else (n + i - 1 if k == i else 2 * n - 4) for k in range(1, n - 1)]
                entries[(i, j)] = el(coeffs + [n - 2, n - 2], -(2 * n - 4))
            elif j == i + 1 and i <= n - 2:
                coeffs = [-k if k <= i else -(n - 2) for k in range(1, n - 1)]
                entries[(i, j)] = el(coeffs + [-half, -half], n - 2)
            elif j == i and i in (n - 1, n):
                coeffs = [2 * k for k in range(1, n - 1)]
                coeffs += [n, n - 2] if i == n - 1 else [n - 2, n]
                entries[(i, j)] = el(coeffs, -(2 * n - 4))
            else:
                entries[(i, j)] = RingElement.zero(n, base)
    return _table_from_entries(t, n, base, entries, notes)


# -- reference Casimir Cartan parts ----------------------------------------------

_E_CASIMIR_ROWS = {
    6: [(Fraction(1, 3), (4, 3, 5, 6, 4, 2)), (1, (1, 2, 2, 3, 2, 1)),
        (Fraction(1, 3), (5, 6, 10, 12, 8, 4)), (1, (2, 3, 4, 12, 8, 4)),
        (Fraction(1, 3), (4, 6, 8, 12, 10, 5)), (Fraction(1, 3), (2, 3, 4, 6, 5, 4))],
    7: [(1, (2, 2, 3, 4, 3, 2, 1)), (Fraction(1, 2), (4, 7, 8, 12, 9, 8, 3)),
        (1, (3, 4, 6, 8, 6, 4, 2)), (1, (4, 6, 8, 12, 9, 6, 3)),
        (Fraction(1, 2), (6, 9, 12, 18, 15, 10, 5)), (1, (2, 3, 4, 6, 5, 4, 2)),
        (Fraction(1, 2), (2, 3, 4, 6, 5, 4, 3))],
    8: [(1, (4, 5, 7, 10, 8, 6, 4, 2)), (1, (5, 8, 10, 15, 12, 9, 6, 3)),
        (1, (7, 10, 14, 20, 16, 12, 8, 4)), (1, (10, 15, 20, 30, 24, 18, 12, 6)),
        (1, (8, 12, 16, 24, 20, 15, 10, 5)), (1, (6, 9, 12, 18, 15, 12, 8, 4)),
        (1, (4, 6, 8, 12, 10, 8, 6, 3)), (1, (5, 8, 10, 15, 12, 9, 6, 3))],
}


def casimir_cartan_fixture(t) -> Optional[List[List[Fraction]]]:
    """Reference Cartan part ``sum_i h_i sum_j M[i][j] h_j`` of the Casimir, as ``M``.

    ``None`` for families whose reference expansion relies on ellipses.
    """
    t = LieType.parse(t)
    n = t.rank
    if t.family == "A":
        return [[Fraction((n - i + 1) * j if j < i else i * (n - j + 1), n + 1)
                 for j in range(1, n + 1)] for i in range(1, n + 1)]
    if t.family == "E":
        return [[Fraction(s) * x for x in row] for s, row in _E_CASIMIR_ROWS[n]]
    return None
