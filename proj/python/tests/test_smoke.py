from fractions import Fraction

import pytest

import micp_forge as mf


def test_hnf_identity():
    h, u = mf.hermite_normal_form([[1, 0], [0, 1]])
    assert h == [[1, 0], [0, 1]]
    assert u == [[1, 0], [0, 1]]


def test_hnf_product():
    a = [[4, 6, 1], [2, 8, 0], [1, -3, 5]]
    h, u = mf.hermite_normal_form(a)
    prod = [[sum(a[i][k] * u[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert prod == h


def test_unimodular_completion():
    u = mf.unimodular_completion([2, 3])
    assert [row[1] for row in u] == [2, 3]
    assert abs(u[0][0] * u[1][1] - u[0][1] * u[1][0]) == 1
    with pytest.raises(mf.MicpError, match="non-primitive"):
        mf.unimodular_completion([2, 4])


def test_parity_witness():
    w = mf.strongest_witness(mf.even_parity_points(4))
    assert w["w"] == 8
    assert w["bound"] == 3


def test_naturals_round_trip():
    members = [x for x in range(1001) if x % 3 != 0]
    r = mf.detect_periodicity(members, 1000, 20)
    assert r["periodic"]
    assert r["set"]["period"] == "3"
    compiled = mf.nat_compile([1, 2], 3)
    pieces = mf.slice_union(compiled["formulation"], [(0, 1), (0, 1), (0, 5)])
    values = sorted(Fraction(p["interval"]["lo"]) for p in pieces)
    assert values[:4] == [1, 2, 4, 5]


def test_s_epsilon():
    assert mf.s_epsilon_member("2/5", 0)
    assert mf.s_epsilon_member(Fraction(2, 5), 5)
    with pytest.raises(mf.MicpError):
        mf.s_epsilon_member("1", 3)


def test_staircase_pwl():
    d = mf.pwl_decompose([1, 0], [Fraction(3, 2)])
    assert d["threshold"] == 1
    assert d["period"] == 1
    assert len(d["head"]) == 1


def test_fixture_and_lp():
    f = mf.fixture("parity_cube", n=2)["formulation"]
    lp = mf.emit_lp(f)
    assert "General\n z0\n" in lp
    assert mf.parse_lp(lp)["n"] == 2
    assert mf.check_ideal(mf.fixture("parity_cube", n=2)["formulation"])["verdict"] in {"ideal", "indeterminate"}
    with pytest.raises(mf.MicpError, match="unknown fixture"):
        mf.fixture("nope")


def test_brunn_minkowski():
    sq = [[0, 0], [1, 0], [0, 1], [1, 1]]
    rect = [[0, 0], [2, 0], [0, Fraction(1, 2)], [2, Fraction(1, 2)]]
    g = mf.brunn_minkowski_gap(sq, rect)
    assert g["sign"] == 1
    assert g["mixed_volume"] == Fraction(9, 8)


def test_classify_family():
    fam = {"members": [{"z": [z], "vertices": [[str(z)], [str(z + 1)]]} for z in range(6)]}
    assert mf.classify_family(fam)["verdict"] == "theorem_consistent"
