import pytest
from hypothesis import given
from hypothesis import strategies as st

from adehikita.rootsystem import build_root_system
from adehikita.weights import (dim_i2_zero, dominant_conjugate, freudenthal_multiplicity_direct,
                               freudenthal_table, two_theta, weyl_orbit,
                               zero_weight_multiplicity)


def expected_m0(name):
    fam, n = name[0], int(name[1:])
    if fam == "A":
        return n * (n + 1) // 2
    if fam == "D":
        return n * (n - 1)
    return {6: 36, 7: 63, 8: 120}[n]


CHEAP = [f"A{n}" for n in range(1, 9)] + [f"D{n}" for n in range(4, 9)] + ["E6", "E7"]


@pytest.mark.parametrize("name", CHEAP)
def test_zero_weight_multiplicity_of_two_theta(name):
    assert zero_weight_multiplicity(build_root_system(name)) == expected_m0(name)


@pytest.mark.parametrize("name", ["A3", "D4", "E6"])
def test_module_dimension_matches_weyl(name):
    rs = build_root_system(name)
    lam = two_theta(rs)
    assert freudenthal_table(rs, lam).dimension() == rs.weyl_dimension(lam)


@pytest.mark.parametrize("name", ["A2", "A3", "D4"])
def test_symmetric_recursion_agrees_with_direct_recursion(name):
    rs = build_root_system(name)
    lam = two_theta(rs)
    table = freudenthal_table(rs, lam)
    memo = {}
    for mu, m in table.mults.items():
        assert freudenthal_multiplicity_direct(rs, lam, mu, memo) == m


def test_adjoint_module():
    rs = build_root_system("D5")
    table = freudenthal_table(rs, rs.highest_root)
    assert table[(0,) * 5] == 5
    assert table.dimension() == rs.dim


def test_weyl_dimension_small_cases():
    rs = build_root_system("A2")
    assert rs.weyl_dimension(rs.fundamental_weight(1)) == 3
    assert rs.weyl_dimension((2, 2)) == 27
    assert build_root_system("E8").weyl_dimension(build_root_system("E8").highest_root) == 248


def test_non_dominant_highest_weight_rejected():
    rs = build_root_system("A2")
    with pytest.raises(ValueError):
        freudenthal_table(rs, (1, 0))


def test_cache_round_trip(tmp_path):
    rs = build_root_system("D5")
    a = freudenthal_table(rs, two_theta(rs), cache_dir=tmp_path)
    assert list(tmp_path.iterdir())
    b = freudenthal_table(rs, two_theta(rs), cache_dir=tmp_path)
    assert a.dominant == b.dominant


@pytest.mark.parametrize("name", ["A3", "D4", "E6"])
def test_dim_i2_zero_is_triangular_number(name):
    rs = build_root_system(name)
    n = rs.rank
    assert dim_i2_zero(rs) == n * (n + 1) // 2


RS = build_root_system("D4")
weights = st.lists(st.integers(-3, 3), min_size=4, max_size=4).map(tuple)


@given(weights)
def test_dominant_conjugate_is_dominant_and_in_orbit(w):
    d = dominant_conjugate(RS, w)
    assert RS.is_dominant(d)
    assert RS.inner(d, d) == RS.inner(w, w)


@given(weights)
def test_multiplicities_are_weyl_invariant(w):
    table = freudenthal_table(RS, two_theta(RS))
    m = table[w]
    for i in range(RS.rank):
        assert table[RS.reflect(i, w)] == m


def test_orbit_of_highest_root_is_all_roots():
    rs = build_root_system("E6")
    orbit = weyl_orbit(rs, rs.highest_root)
    assert len(orbit) == 2 * len(rs.positive_roots)
