"""Comparison of B-algebra and cohomology multiplication tables.

A :class:`SubstitutionMap` moves one table into the coefficient ring of the
other; :func:`verify_isomorphism` builds both tables and compares them
pair by pair as exact polynomial identities.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .cohomology import (T, T1T2, MultiplicationTable, RingElement, an_cup_table,
                         bg_cup_table)
from .exactalg import Poly, substitute
from .rootsystem import LieType, build_root_system

__all__ = [
    "SubstitutionMap",
    "PairOutcome",
    "Report",
    "substitution_map",
    "compare_tables",
    "verify_isomorphism",
    "cohomology_table",
    "balgebra_table",
    "CONVENTIONS",
]

# "derived" is the map under which the computed type-A B-algebra agrees with
# the localization ring; "reference" uses the opposite sign of z in t1.
CONVENTIONS = ("derived", "reference")


@dataclass(frozen=True)
class SubstitutionMap:
    """Variable map between the two coefficient rings, with ``e_k <-> h_k``.

    ``direction`` is ``"cohomology->balgebra"`` for type A (``t1, t2`` are
    written in ``z, hbar``) and ``"balgebra->cohomology"`` for D and E
    (``hbar -> 2t``).
    """

    lie_type: LieType
    direction: str
    source_vars: Tuple[str, ...]
    target_vars: Tuple[str, ...]
    images: Dict[str, Poly] = field(hash=False)
    convention: str = "derived"

    def apply(self, p: Poly) -> Poly:
        return substitute(p, self.images, self.target_vars)

    def apply_table(self, table: MultiplicationTable) -> MultiplicationTable:
        if table.base_vars != self.source_vars:
            raise ValueError(f"table is over {table.base_vars}, map expects {self.source_vars}")
        out = table.map_coefficients(self.apply, self.target_vars)
        out.basis_name = "h" if self.direction.endswith("balgebra") else "e"
        return out

    def inverse_apply(self, p: Poly) -> Poly:
        """Transport from the target ring back to the source ring.

        Only available where the inverse is polynomial on the monomials
        that occur; raises ``ValueError`` otherwise.
        """
        t = self.lie_type
        if t.family != "A":
            (hb,) = Poly.gens(("hbar",))
            return substitute(p, {"t": hb * Fraction(1, 2)}, ("hbar",))
        return _a_inverse(p, t.rank, self.convention)

    def inverse_apply_table(self, table: MultiplicationTable) -> MultiplicationTable:
        out = table.map_coefficients(self.inverse_apply, self.source_vars)
        out.basis_name = "e" if self.direction.endswith("balgebra") else "h"
        return out


def _a_inverse(p: Poly, n: int, convention: str) -> Poly:
    # z*hbar -> -(n+1) t1 (or +(n+1) t1), hbar -> t1 + t2 (or scaled accordingly)
    t1, t2 = Poly.gens(T1T2)
    if convention == "derived":
        zh = t1 * (-(n + 1))
        hb = t1 + t2
    else:
        zh = t1 * (n + 1)
        hb = t2 - t1
    zi, hi = p.vars.index("z"), p.vars.index("hbar")
    out = Poly.zero(T1T2)
    for m, c in p.terms.items():
        a, b = m[zi], m[hi]
        if b < a:
            raise ValueError(f"monomial z^{a} hbar^{b} has no polynomial preimage")
        out = out + (zh ** a) * (hb ** (b - a)) * c
    return out


def substitution_map(t, convention: str = "derived") -> SubstitutionMap:
    """The comparison map for a type.

    Type A: ``t1 -> -z hbar/(n+1)`` and ``t2 -> (z+n+1) hbar/(n+1)`` under
    the ``derived`` convention; ``reference`` uses ``t1 -> z hbar/(n+1)``.
    Types D, E: ``hbar -> 2t``.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    t = LieType.parse(t)
    n = t.rank
    if t.family == "A":
        base = ("z", "hbar")
        z, hb = Poly.gens(base)
        sign = -1 if convention == "derived" else 1
        images = {"t1": z * hb * Fraction(sign, n + 1),
                  "t2": (z + n + 1) * hb * Fraction(1, n + 1)}
        return SubstitutionMap(t, "cohomology->balgebra", T1T2, base, images, convention)
    (tt,) = Poly.gens(T)
    return SubstitutionMap(t, "balgebra->cohomology", ("hbar",), T, {"hbar": tt * 2}, convention)


@dataclass(frozen=True)
class PairOutcome:
    i: int
    j: int
    match: bool
    difference: Optional[RingElement] = None


@dataclass
class Report:
    lie_type: LieType
    cohomology_source: str
    balgebra_source: str
    convention: str
    outcomes: List[PairOutcome]
    seconds: Dict[str, float]

    @property
    def verdict(self) -> str:
        return "match" if all(o.match for o in self.outcomes) else "mismatch"

    @property
    def ok(self) -> bool:
        return self.verdict == "match"

    def mismatches(self) -> List[PairOutcome]:
        return [o for o in self.outcomes if not o.match]

    def summary(self) -> str:
        total = len(self.outcomes)
        bad = len(self.mismatches())
        if not bad:
            return f"{self.lie_type}: all {total} pairs match"
        return f"{self.lie_type}: {bad} of {total} pairs differ"

    def to_json(self, basis: str = "e") -> dict:
        return {
            "type": str(self.lie_type),
            "cohomology_source": self.cohomology_source,
            "balgebra_source": self.balgebra_source,
            "convention": self.convention,
            "verdict": self.verdict,
            "pairs": [
                {"i": o.i, "j": o.j, "match": o.match,
                 **({"difference": o.difference.to_text(basis), "difference_terms": o.difference.to_json()}
                    if o.difference is not None else {})}
                for o in self.outcomes
            ],
        }


def compare_tables(t, left: MultiplicationTable, right: MultiplicationTable,
                   **meta) -> Report:
    """Pairwise comparison of two tables over the same base ring."""
    t = LieType.parse(t)
    if left.n != right.n:
        raise ValueError(f"rank mismatch: {left.n} vs {right.n}")
    if left.base_vars != right.base_vars:
        raise ValueError(f"base mismatch: {left.base_vars} vs {right.base_vars}")
    outcomes = []
    for key in sorted(set(left.pairs()) | set(right.pairs())):
        d = left.entry(*key) - right.entry(*key)
        outcomes.append(PairOutcome(key[0], key[1], d.is_zero(), None if d.is_zero() else d))
    return Report(t, meta.get("cohomology_source", "?"), meta.get("balgebra_source", "?"),
                  meta.get("convention", "derived"), outcomes, meta.get("seconds", {}))


def cohomology_table(t, source: Optional[str] = None) -> MultiplicationTable:
    t = LieType.parse(t)
    if source is None:
        source = "localization" if t.family == "A" else "bg"
    if source == "localization":
        if t.family != "A":
            raise ValueError("localization tables exist only for type A")
        return an_cup_table(t.rank)
    if source == "bg":
        table = bg_cup_table(build_root_system(t))
        if t.family == "A":
            raise ValueError("the root formula gives a one-parameter table; use localization for type A")
        return table
    raise ValueError(f"unknown cohomology source {source!r}")


def balgebra_table(t, source: str = "closure", cache_dir=None,
                   allow_heavy: bool = True) -> MultiplicationTable:
    from .joseph import b_algebra, paper_relation_fixture
    if source == "closure":
        b, _ = b_algebra(t, cache_dir=cache_dir, allow_heavy=allow_heavy)
        return b.table
    if source in ("paper", "paper_fixture"):
        return paper_relation_fixture(t).table
    raise ValueError(f"unknown B-algebra source {source!r}")


def verify_isomorphism(t, cohomology_source: Optional[str] = None,
                       balgebra_source: str = "closure", convention: str = "derived",
                       cache_dir=None, allow_heavy: bool = True) -> Report:
    """Build both tables, transport with :func:`substitution_map`, compare."""
    t = LieType.parse(t)
    if cohomology_source is None:
        cohomology_source = "localization" if t.family == "A" else "bg"
    seconds = {}
    t0 = time.perf_counter()
    H = cohomology_table(t, cohomology_source)
    seconds["cohomology"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    B = balgebra_table(t, balgebra_source, cache_dir=cache_dir, allow_heavy=allow_heavy)
    seconds["balgebra"] = time.perf_counter() - t0
    if B.n != H.n:
        raise ValueError(f"rank mismatch: {B.n} vs {H.n}")
    smap = substitution_map(t, convention)
    t0 = time.perf_counter()
    if smap.direction == "cohomology->balgebra":
        left, right = smap.apply_table(H), B
    else:
        left, right = smap.apply_table(B), H
    rep = compare_tables(t, left, right, cohomology_source=cohomology_source,
                         balgebra_source=balgebra_source, convention=convention)
    seconds["compare"] = time.perf_counter() - t0
    rep.seconds = seconds
    return rep
