import pytest

from adehikita.rootsystem import (AsymmetryFunction, LieType, build_root_system,
                                  default_orientation, inner, is_root, wadd)

# Positive-root counts: n(n+1)/2, n(n-1), 36, 63, 120.
COUNTS = {"A1": 1, "A2": 3, "A3": 6, "A5": 15, "A8": 36, "D4": 12, "D5": 20,
          "D8": 56, "E6": 36, "E7": 63, "E8": 120}

HIGHEST = {
    "A3": (1, 1, 1),
    "D5": (1, 2, 2, 1, 1),
    "E6": (1, 2, 2, 3, 2, 1),
    "E7": (2, 2, 3, 4, 3, 2, 1),
    "E8": (2, 3, 4, 6, 5, 4, 3, 2),
}


@pytest.mark.parametrize("name,count", sorted(COUNTS.items()))
def test_positive_root_count(name, count):
    rs = build_root_system(name)
    assert len(rs.positive_roots) == count
    assert rs.dim == rs.rank + 2 * count


@pytest.mark.parametrize("name,theta", sorted(HIGHEST.items()))
def test_highest_root(name, theta):
    rs = build_root_system(name)
    assert rs.highest_root == theta
    assert inner(rs, theta, theta) == 2


@pytest.mark.parametrize("name", sorted(COUNTS))
def test_every_root_has_norm_two(name):
    rs = build_root_system(name)
    assert all(rs.inner(r, r) == 2 for r in rs.positive_roots)
    assert all(is_root(rs, tuple(-x for x in r)) for r in rs.positive_roots)


def test_cartan_matrix_d4():
    rs = build_root_system("D4")
    assert rs.cartan == ((2, -1, 0, 0), (-1, 2, -1, -1), (0, -1, 2, 0), (0, -1, 0, 2))


def test_e6_branch_node_is_4():
    rs = build_root_system("E6")
    assert [j + 1 for j in range(6) if rs.cartan[3][j] == -1] == [2, 3, 5]


def test_two_delta_is_sum_of_positive_roots():
    rs = build_root_system("A3")
    assert rs.two_delta == (3, 4, 3)
    assert rs.dynkin_labels(rs.two_delta) == (2, 2, 2)


def test_inverse_cartan():
    rs = build_root_system("E8")
    n = rs.rank
    for i in range(n):
        for j in range(n):
            s = sum(rs.cartan[i][k] * rs.inverse_cartan[k][j] for k in range(n))
            assert s == (1 if i == j else 0)


@pytest.mark.parametrize("text", ["B3", "A0", "D3", "E5", "E9", "", "A", "3A"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        LieType.parse(text)


def test_parse_accepts_variants():
    assert LieType.parse("a_3") == LieType("A", 3)
    assert str(LieType.parse(" E8 ")) == "E8"


def test_inner_checks_length():
    rs = build_root_system("A2")
    with pytest.raises(ValueError):
        inner(rs, (1, 0, 0), (1, 0))


def test_e6_default_orientation():
    assert default_orientation("E6") == {(3, 1), (4, 3), (4, 5), (5, 6), (4, 2)}


def test_orientation_must_cover_every_edge_once():
    with pytest.raises(ValueError):
        AsymmetryFunction.for_type("A3", [(1, 2)])
    with pytest.raises(ValueError):
        AsymmetryFunction.for_type("A3", [(1, 2), (2, 1), (2, 3)])


@pytest.mark.parametrize("name", ["A4", "D5", "E6"])
def test_asymmetry_cocycle_relations(name):
    rs = build_root_system(name)
    eps = AsymmetryFunction.for_type(name)
    roots = rs.positive_roots + tuple(tuple(-x for x in r) for r in rs.positive_roots)
    for a in roots:
        # eps(a, a) = (-1)^{(a,a)/2}
        assert eps(a, a) == -1
        for b in roots:
            # eps(a, b) eps(b, a) = (-1)^{(a,b)}
            assert eps(a, b) * eps(b, a) == (-1) ** (rs.inner(a, b) % 2)
    for a in roots[:6]:
        for b in roots[:6]:
            for c in roots[:6]:
                assert eps(wadd(a, b), c) == eps(a, c) * eps(b, c)
