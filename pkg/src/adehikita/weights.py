"""Weight multiplicities of irreducible modules via Freudenthal's recursion.

Only dominant weights are computed by the recursion; everything else is
looked up through its dominant Weyl-conjugate.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Dict, Optional, Sequence

from .rootsystem import RootSystem, Weight, build_root_system, wadd, wscale, wsub

__all__ = [
    "WeightTable",
    "freudenthal_table",
    "zero_weight_multiplicity",
    "dim_i2_zero",
    "dominant_conjugate",
    "weyl_orbit",
    "two_theta",
]


def two_theta(rs: RootSystem) -> Weight:
    return wscale(2, rs.highest_root)


def dominant_conjugate(rs: RootSystem, w: Sequence[int]) -> Weight:
    w = tuple(w)
    C = rs.cartan
    n = rs.rank
    while True:
        for i in range(n):
            c = sum(C[i][j] * w[j] for j in range(n) if w[j])
            if c < 0:
                w = w[:i] + (w[i] - c,) + w[i + 1:]
                break
        else:
            return w


def weyl_orbit(rs: RootSystem, w: Sequence[int]) -> set:
    start = tuple(w)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for i in range(rs.rank):
            u = rs.reflect(i, v)
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


@dataclass
class WeightTable:
    rs: RootSystem = field(repr=False)
    highest: Weight
    dominant: Dict[Weight, int]

    def __getitem__(self, w: Sequence[int]) -> int:
        return self.dominant.get(dominant_conjugate(self.rs, w), 0)

    def get(self, w, default=0):
        return self[w] or default

    @cached_property
    def orbit_sizes(self) -> Dict[Weight, int]:
        return {mu: len(weyl_orbit(self.rs, mu)) for mu in self.dominant}

    @cached_property
    def mults(self) -> Dict[Weight, int]:
        """Every weight of the module with its multiplicity."""
        out = {}
        for mu, m in self.dominant.items():
            for w in weyl_orbit(self.rs, mu):
                out[w] = m
        return out

    def dimension(self) -> int:
        return sum(m * self.orbit_sizes[mu] for mu, m in self.dominant.items())

    def to_json(self) -> dict:
        rows = sorted(self.dominant.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))
        return {
            "type": str(self.rs.lie_type),
            "highest": list(self.highest),
            "dominant": [{"weight": list(mu), "mult": m, "orbit_size": self.orbit_sizes[mu]}
                         for mu, m in rows],
        }


def _dominant_weights_below(rs: RootSystem, lam: Weight):
    # Covering relations among dominant weights are subtractions of positive roots.
    found = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for a in rs.positive_roots:
                nu = wsub(mu, a)
                if nu not in found and rs.is_dominant(nu):
                    found.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return found


def _cache_path(cache_dir, rs: RootSystem, lam: Weight) -> Optional[Path]:
    if cache_dir is None:
        return None
    tag = "_".join(str(x) for x in lam)
    return Path(cache_dir) / f"freudenthal_{rs.lie_type}_{tag}.json"


def freudenthal_table(rs: RootSystem, lam: Sequence[int], *, cache_dir=None) -> WeightTable:
    """Multiplicities of the weights of ``V(lam)`` (dominant ones stored)."""
    lam = tuple(int(x) for x in lam)
    if len(lam) != rs.rank:
        raise ValueError("weight length does not match rank")
    if not rs.is_dominant(lam):
        raise ValueError(f"highest weight {lam} is not dominant for {rs.lie_type}")

    path = _cache_path(cache_dir, rs, lam)
    if path is not None and path.exists():
        data = json.loads(path.read_text())
        dom = {tuple(r["weight"]): r["mult"] for r in data["dominant"]}
        return WeightTable(rs, lam, dom)

    two_d = rs.two_delta
    shifted_top = wadd(wscale(2, lam), two_d)
    top_norm = rs.inner(shifted_top, shifted_top)

    dominant = sorted(_dominant_weights_below(rs, lam), key=lambda mu: sum(wsub(lam, mu)))
    mults: Dict[Weight, int] = {lam: 1}
    cache: Dict[Weight, int] = {}

    def m(w):
        if w in mults:
            return mults[w]
        r = cache.get(w)
        if r is None:
            r = mults.get(dominant_conjugate(rs, w), 0)
            cache[w] = r
        return r

    for mu in dominant[1:]:
        rhs = 0
        for a in rs.positive_roots:
            nu = wadd(mu, a)
            while True:
                k = m(nu)
                if not k:
                    break
                rhs += k * rs.inner(nu, a)
                nu = wadd(nu, a)
        s = wadd(wscale(2, mu), two_d)
        # (lam+d, lam+d) - (mu+d, mu+d), computed on doubled weights
        gap = Fraction(top_norm - rs.inner(s, s), 4)
        if gap <= 0:
            raise ArithmeticError(f"non-positive Freudenthal denominator at {mu}")
        val = Fraction(2 * rhs) / gap
        if val.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity {val} at {mu}")
        if val:
            mults[mu] = int(val)
    table = WeightTable(rs, lam, mults)

    if path is not None:
        os.makedirs(path.parent, exist_ok=True)
        path.write_text(json.dumps(table.to_json(), sort_keys=True))
    return table


def freudenthal_multiplicity_direct(rs: RootSystem, lam: Sequence[int], mu: Sequence[int],
                                    _memo=None) -> int:
    """Freudenthal recursion run on an arbitrary (possibly non-dominant) weight.

    No Weyl symmetry is used, so this is an independent check on
    :func:`freudenthal_table`; it is only practical for small ranks.
    """
    lam = tuple(lam)
    mu = tuple(mu)
    if _memo is None:
        _memo = {}
    if mu in _memo:
        return _memo[mu]
    if mu == lam:
        return 1
    diff = wsub(lam, mu)
    if any(x < 0 for x in diff):
        return 0
    two_d = rs.two_delta
    top = wadd(wscale(2, lam), two_d)
    s = wadd(wscale(2, mu), two_d)
    gap = Fraction(rs.inner(top, top) - rs.inner(s, s), 4)
    rhs = 0
    for a in rs.positive_roots:
        nu = wadd(mu, a)
        while all(x >= 0 for x in wsub(lam, nu)):
            k = freudenthal_multiplicity_direct(rs, lam, nu, _memo)
            rhs += k * rs.inner(nu, a)
            nu = wadd(nu, a)
    if gap == 0:
        val = 0 if rhs == 0 else None
        if val is None:
            raise ArithmeticError(f"inconsistent Freudenthal data at {mu}")
    else:
        val = Fraction(2 * rhs) / gap
        if val.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity {val} at {mu}")
        val = int(val)
    _memo[mu] = val
    return val


def zero_weight_multiplicity(rs: RootSystem, lam: Optional[Sequence[int]] = None, **kw) -> int:
    if lam is None:
        lam = two_theta(rs)
    return freudenthal_table(rs, lam, **kw)[(0,) * rs.rank]


def dim_i2_zero(rs: RootSystem, **kw) -> int:
    """Weight-zero dimension of the degree-two part of the minimal-orbit ideal."""
    n = rs.rank
    m0 = zero_weight_multiplicity(rs, **kw)
    return (rs.dim - n) // 2 + n * (n + 1) // 2 - m0
