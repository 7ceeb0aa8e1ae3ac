import itertools
from fractions import Fraction

import pytest

from adehikita.cohomology import T, T1T2, RingElement, an_cup_table
from adehikita.exactalg import Poly
from adehikita.hikita import (CONVENTIONS, balgebra_table, cohomology_table, compare_tables,
                              substitution_map, verify_isomorphism)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "D6", "E6"])
def test_verify_matches(name):
    rep = verify_isomorphism(name)
    assert rep.verdict == "match", rep.summary()
    n = int(name[1:])
    assert len(rep.outcomes) == n * (n + 1) // 2


def test_summary_text():
    assert verify_isomorphism("A3").summary() == "A3: all 6 pairs match"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_reference_substitution_fails_against_closure(n):
    assert verify_isomorphism(f"A{n}", convention="reference").verdict == "mismatch"


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_reference_substitution_matches_reference_relations(n):
    rep = verify_isomorphism(f"A{n}", balgebra_source="paper", convention="reference")
    assert rep.verdict == "match"


@pytest.mark.parametrize("name,pair", [("A3", (1, 2)), ("D4", (2, 2)), ("E6", (4, 5))])
def test_fault_injection_is_localized(name, pair):
    smap = substitution_map(name)
    H = cohomology_table(name)
    B = balgebra_table(name)
    if smap.direction == "cohomology->balgebra":
        left, right = smap.apply_table(H), B
    else:
        left, right = smap.apply_table(B), H
    bumped = dict(right.entries)
    el = bumped[pair]
    bumped[pair] = RingElement(el.c0 + Poly.const(1, el.c0.vars), el.c)
    broken = type(right)(right.n, right.base_vars, bumped, right.basis_name)
    rep = compare_tables(name, left, broken)
    assert [(o.i, o.j) for o in rep.mismatches()] == [pair]
    assert rep.summary().endswith("1 of %d pairs differ" % len(rep.outcomes))


@pytest.mark.parametrize("name", ["A3", "A4", "D5"])
def test_inverse_transport_gives_same_verdict(name):
    smap = substitution_map(name)
    H = cohomology_table(name)
    B = balgebra_table(name)
    if smap.direction == "cohomology->balgebra":
        back = smap.inverse_apply_table(B)
        assert compare_tables(name, H, back).ok
    else:
        back = smap.inverse_apply_table(H)
        assert compare_tables(name, B, back).ok


@pytest.mark.parametrize("name", ["A2", "D4"])
def test_triple_products_agree(name):
    smap = substitution_map(name)
    H = cohomology_table(name)
    B = balgebra_table(name)
    left, right = (smap.apply_table(H), B) if smap.direction.endswith("balgebra") else (smap.apply_table(B), H)
    n = H.n
    for i, j, k in itertools.combinations_with_replacement(range(1, n + 1), 3):
        a = left.multiply(left.multiply(left.basis(i), left.basis(j)), left.basis(k))
        b = right.multiply(right.multiply(right.basis(i), right.basis(j)), right.basis(k))
        assert (a - b).is_zero(), (i, j, k)


def test_type_a_substitution_examples():
    n = 3
    t1, t2 = Poly.gens(T1T2)
    z, hb = Poly.gens(("z", "hbar"))
    reference = substitution_map("A3", "reference")
    assert reference.apply(t1 * t2 * (n + 1)) == z * (z + n + 1) * hb * hb * Fraction(1, n + 1)
    derived = substitution_map("A3", "derived")
    assert derived.apply(t1) == -z * hb * Fraction(1, n + 1)
    assert derived.apply(t1 + t2) == hb
    assert derived.inverse_apply(z * hb) == t1 * -(n + 1)


def test_type_de_substitution_example():
    (hb,) = Poly.gens(("hbar",))
    (t,) = Poly.gens(T)
    n = 5
    smap = substitution_map("D5")
    assert smap.apply(-(2 * n - 4) * hb * hb) == -4 * (2 * n - 4) * t * t
    assert smap.inverse_apply(t) == hb * Fraction(1, 2)


def test_inverse_rejects_non_polynomial_preimage():
    z, hb = Poly.gens(("z", "hbar"))
    with pytest.raises(ValueError):
        substitution_map("A2").inverse_apply(z)


def test_errors():
    with pytest.raises(ValueError):
        substitution_map("A3", "other")
    with pytest.raises(ValueError):
        cohomology_table("D4", "localization")
    with pytest.raises(ValueError):
        cohomology_table("A3", "bg")
    with pytest.raises(ValueError):
        balgebra_table("A3", "nowhere")
    assert CONVENTIONS == ("derived", "reference")


def test_report_json_shape():
    data = verify_isomorphism("A2").to_json()
    assert data["verdict"] == "match"
    assert [(p["i"], p["j"]) for p in data["pairs"]] == [(1, 1), (1, 2), (2, 2)]
    bad = verify_isomorphism("A2", convention="reference").to_json("h")
    assert any("difference" in p for p in bad["pairs"])
