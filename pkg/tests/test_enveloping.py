import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from adehikita.enveloping import MIXED, U2Element, _acc, chevalley_algebra
from adehikita.exactalg import Poly

RANK_8_TYPES = [f"A{n}" for n in range(1, 9)] + [f"D{n}" for n in range(4, 9)] + ["E6", "E7", "E8"]


def br(alg, u, v):
    out = {}
    for a, ca in u.items():
        for b, cb in v.items():
            for x, k in alg.bracket(a, b):
                _acc(out, x, ca * cb * k)
    return out


def add(u, v, s=1):
    out = dict(u)
    for k, c in v.items():
        _acc(out, k, s * c)
    return out


def jacobi_defect(alg, a, b, c):
    A, B, C = {a: 1}, {b: 1}, {c: 1}
    total = br(alg, A, br(alg, B, C))
    total = add(total, br(alg, B, br(alg, C, A)))
    return add(total, br(alg, C, br(alg, A, B)))


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "D4"])
def test_jacobi_exhaustive(name):
    alg = chevalley_algebra(name)
    for a, b, c in itertools.combinations(range(alg.dim), 3):
        assert not jacobi_defect(alg, a, b, c), (a, b, c)


@pytest.mark.parametrize("name", ["E6", "E7", "E8"])
def test_jacobi_sampled(name):
    alg = chevalley_algebra(name)
    rng = random.Random(f"jacobi-{name}")
    for _ in range(10_000):
        a, b, c = (rng.randrange(alg.dim) for _ in range(3))
        assert not jacobi_defect(alg, a, b, c), (a, b, c)


@pytest.mark.parametrize("name", ["A3", "D5", "E6"])
def test_bracket_antisymmetric_and_chevalley(name):
    alg = chevalley_algebra(name)
    for a in range(alg.dim):
        for b in range(alg.dim):
            assert {x: -k for x, k in alg.bracket(a, b)} == dict(alg.bracket(b, a))
    for r in alg.rs.positive_roots:
        # [X_a, Y_a] = h_a
        assert dict(alg.bracket(alg.X(r), alg.Y(r))) == {alg.h(i + 1): x for i, x in enumerate(r) if x}


@pytest.mark.parametrize("name", RANK_8_TYPES)
def test_casimir_is_ad_invariant(name):
    alg = chevalley_algebra(name)
    C = alg.casimir()
    for i in range(1, alg.rank + 1):
        assert alg.ad(alg.simple_X(i), C) == {}
        assert alg.ad(alg.simple_Y(i), C) == {}


@pytest.mark.parametrize("name", ["A2", "D4", "E6"])
def test_casimir_kappa_gives_eigenvalue(name):
    alg = chevalley_algebra(name)
    rs = alg.rs
    k = alg.kappa(alg.casimir())
    rng = random.Random(name)
    for _ in range(5):
        lam = [rng.randint(0, 3) for _ in range(rs.rank)]
        lam_root = [sum(Fraction(x) * rs.inverse_cartan[j][i] for j, x in enumerate(lam))
                    for i in range(rs.rank)]
        # kappa reads off the action on a lowest-weight vector, of weight -lam here
        vals = {f"h{i + 1}": -lam[i] for i in range(rs.rank)}
        vals["hbar"] = 1
        assert k.evaluate(vals) == alg.casimir_eigenvalue(lam_root)


@pytest.mark.parametrize("name", RANK_8_TYPES)
def test_kappa_vanishes_on_ideal(name):
    # Weight-zero elements of n+ U + U n- in degree two are spanned by X_a Y_a.
    alg = chevalley_algebra(name)
    roots = alg.rs.positive_roots
    rng = random.Random(f"kappa-{name}")
    for _ in range(10_000):
        u = {}
        for r in rng.sample(roots, min(3, len(roots))):
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            for k, v in alg.mul_linear({alg.X(r): c}, {alg.Y(r): 1}).items():
                _acc(u, k, v)
        assert alg.kappa(u).is_zero()


def test_kappa_of_reversed_product():
    alg = chevalley_algebra("A3")
    r = (1, 1, 0)
    k = alg.kappa(alg.pbw_mul(alg.Y(r), alg.X(r)))
    h1, h2, h3, hb = Poly.gens(("h1", "h2", "h3", "hbar"))
    assert k == -(h1 + h2) * hb


def test_kappa_rejects_nonzero_weight():
    alg = chevalley_algebra("A2")
    with pytest.raises(ValueError):
        alg.kappa({(alg.simple_X(1),): 1})


def test_weight_of():
    alg = chevalley_algebra("A2")
    x1, y2 = alg.simple_X(1), alg.simple_Y(2)
    assert alg.weight_of({(x1, y2): 1} if x1 < y2 else {(y2, x1): 1}) == (1, -1)
    assert alg.weight_of({(x1,): 1, (y2,): 1}) == MIXED
    assert alg.weight_of({}) == (0, 0)


ALG = chevalley_algebra("D4")
lie = st.dictionaries(st.integers(0, ALG.dim - 1),
                      st.integers(-3, 3).filter(bool), min_size=1, max_size=3)


@given(st.integers(0, ALG.dim - 1), lie, lie)
def test_ad_is_a_derivation(x, u, v):
    X = {x: 1}
    lhs = ALG.ad(x, ALG.mul_linear(u, v))
    rhs = add(ALG.mul_linear(br(ALG, X, u), v), ALG.mul_linear(u, br(ALG, X, v)))
    assert lhs == rhs


@given(lie, lie)
def test_commutator_of_products_matches_bracket(u, v):
    uv = ALG.mul_linear(u, v)
    vu = ALG.mul_linear(v, u)
    assert add(uv, vu, -1) == {(k,): c for k, c in br(ALG, u, v).items()}


def test_u2element_arithmetic():
    alg = chevalley_algebra("A2")
    a = U2Element.product(alg, alg.simple_X(1), alg.simple_Y(1))
    b = U2Element.product(alg, alg.simple_Y(1), alg.simple_X(1))
    diff = a - b
    assert diff == U2Element.basis(alg, alg.h(1))
    assert (2 * a).terms == {k: 2 * v for k, v in a.terms.items()}
    assert not (a - a)


def test_orientation_changes_signs_but_not_jacobi():
    alt = chevalley_algebra("A3", orientation=[(2, 1), (2, 3)])
    assert alt is not chevalley_algebra("A3")
    for a, b, c in itertools.combinations(range(alt.dim), 3):
        assert not jacobi_defect(alt, a, b, c)
