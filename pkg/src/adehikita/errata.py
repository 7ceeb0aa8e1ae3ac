"""Structured list of places where reference tables disagree with computation.

Every record is ``{type, entry, kind, paper_value, computed_value}``.
"""

from __future__ import annotations

from typing import Iterable, List, Optional

from .cohomology import bg_cup_table, paper_cohomology_fixture, table_differences
from .exactalg import Poly
from .rootsystem import LieType, build_root_system

__all__ = ["errata_report", "DEFAULT_TYPES"]

DEFAULT_TYPES = ("A2", "A3", "A4", "A5", "D4", "D5", "D6", "E6")


def _quadratic_text(M, n) -> str:
    vars_ = tuple(f"h{i}" for i in range(1, n + 1))
    h = Poly.gens(vars_)
    p = Poly.zero(vars_)
    for i in range(n):
        for j in range(n):
            if M[i][j]:
                p = p + h[i] * h[j] * M[i][j]
    return p.to_text()


def _cohomology_records(t: LieType) -> List[dict]:
    if t.family == "A":
        return []
    reference, notes = paper_cohomology_fixture(t)
    computed = bg_cup_table(build_root_system(t))
    out = []
    for (i, j), _ in table_differences(reference, computed):
        rec = {
            "type": str(t), "kind": "cohomology", "entry": f"e{i}*e{j}",
            "paper_value": reference.entry(i, j).to_text("e"),
            "computed_value": computed.entry(i, j).to_text("e"),
        }
        if (i, j) in notes:
            rec["note"] = notes[(i, j)]
        out.append(rec)
    return out


def _balgebra_records(t: LieType, cache_dir, allow_heavy) -> List[dict]:
    from .joseph import b_algebra, paper_relation_fixture
    reference = paper_relation_fixture(t)
    computed, _ = b_algebra(t, cache_dir=cache_dir, allow_heavy=allow_heavy)
    out = []
    for (i, j), _ in table_differences(reference.table, computed.table):
        rec = {
            "type": str(t), "kind": "balgebra", "entry": f"h{i}*h{j}",
            "paper_value": reference.table.entry(i, j).to_text("h"),
            "computed_value": computed.table.entry(i, j).to_text("h"),
        }
        if (i, j) in reference.notes:
            rec["note"] = reference.notes[(i, j)]
        out.append(rec)
    return out


def _casimir_records(t: LieType) -> List[dict]:
    from .joseph import casimir_cartan_fixture
    M = casimir_cartan_fixture(t)
    if M is None:
        return []
    rs = build_root_system(t)
    n = rs.rank
    inv = rs.inverse_cartan
    a, b = _quadratic_text(M, n), _quadratic_text(inv, n)
    if a == b:
        return []
    return [{"type": str(t), "kind": "casimir_cartan_part", "entry": "sum h_i h_i^vee",
             "paper_value": a, "computed_value": b}]


def _generator_records(t: LieType) -> List[dict]:
    from .joseph import joseph_generators
    out = []
    for g in joseph_generators(t).generators:
        for note in g.notes:
            if "convention dependent" in note:
                continue
            out.append({"type": str(t), "kind": "generator", "entry": g.name,
                        "paper_value": note, "computed_value": g.element.to_text()})
    return out


def errata_report(types: Optional[Iterable] = None, cache_dir=None,
                  allow_heavy: bool = False) -> List[dict]:
    """Records for every requested type, in a deterministic order.

    Heavy types are skipped for the B-algebra part unless ``allow_heavy``.
    """
    from .joseph import HEAVY_TYPES
    types = [LieType.parse(x) for x in (types or DEFAULT_TYPES)]
    out: List[dict] = []
    for t in types:
        out += _cohomology_records(t)
        if t.rank >= 2 and (str(t) not in HEAVY_TYPES or allow_heavy):
            out += _balgebra_records(t, cache_dir, allow_heavy)
        out += _casimir_records(t)
        out += _generator_records(t)
    return out
