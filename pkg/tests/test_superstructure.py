import pytest
from hypothesis import given, settings, strategies as st

from wsuper import algebra_data as ad
from wsuper import superstructure as ss


def _simple(kind):
    return ss.build_M(*kind[1]) if kind[0] == "M" else ss.build_Q(kind[1])


kinds = st.one_of(
    st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(lambda t: sum(t) > 0)
      .map(lambda t: ("M", (max(t), min(t)))),
    st.integers(1, 2).map(lambda n: ("Q", n)))


@pytest.mark.parametrize("kind", [("M", (1, 0)), ("M", (1, 1)), ("M", (2, 1)), ("Q", 1), ("Q", 2)])
def test_classify_simple(kind):
    T = _simple(kind)
    assert ss.check_associativity(T)
    assert ss.classify_simple(T) == kind


def test_centers():
    z = ss.center(ss.build_Q(2))
    assert (len(z[0]), len(z[1])) == (1, 1)
    sz = ss.center(ss.build_Q(2), super_=True)
    assert (len(sz[0]), len(sz[1])) == (1, 0)


@settings(max_examples=20, deadline=None)
@given(kinds, kinds)
def test_graded_tensor_type(k1, k2):
    T = ss.graded_tensor(_simple(k1), _simple(k2))
    assert ss.normalize_kind(ss.classify_simple(T)) == ss.predicted_tensor(k1, k2)


def test_tensor_table_up_to_size_three():
    rep = ss.tensor_table_report(3)
    assert rep["ok"]
    assert len(rep["rows"]) == 144


def test_q1_cubed_is_q2():
    Q1 = ss.build_Q(1)
    assert ss.classify_simple(ss.graded_tensor(ss.graded_tensor(Q1, Q1), Q1)) == ("Q", 2)


def test_q_tensor_q_outer_splits():
    V = ss.natural_module(ss.build_Q(1))
    res = ss.decompose_outer(V, V)
    assert res["kind"] == "M+PiM" and res["dims"] == [2, 2]
    assert res["idempotent"] and res["constituent_kind"] == "M" and res["odd_swap"]


@pytest.mark.parametrize("left,right,want", [(("M", (1, 1)), ("M", (2, 0)), "M"),
                                             (("M", (1, 1)), ("Q", 1), "Q"),
                                             (("Q", 1), ("Q", 2), "M+PiM")])
def test_outer_tensor_types(left, right, want):
    V, W = ss.natural_module(_simple(left)), ss.natural_module(_simple(right))
    assert ss.decompose_outer(V, W)["kind"] == want


def test_outer_type_table():
    rep = ss.outer_type_report(4)
    assert rep["ok"] and len(rep["rows"]) == 324


def test_direct_sum_bound():
    rep = ss.direct_sum_bound([(2, 1), (2, 1)], 5)
    assert rep["bound"] == 100 and rep["l"] == 2
    assert ss.single_bound(4, 2, 5) == 50
    with pytest.raises(ValueError):
        ss.direct_sum_bound([(1, 0)], 5)
    assert ss.direct_sum_bound([(2, 1)], 5)["bound"] == 10


def test_arbitrary_characteristic_bound_gl21():
    G = ad.build_gl(2, 1)
    rep = ss.arbitrary_char_bound(G, G.element({"E11": 1, "E22": 1, "E12": 1}), 7)
    assert (rep["d0"], rep["d1"]) == (2, 4) and rep["agree"]
    assert rep["bound"] == 28 and rep["u_dims"] == [0, 2]
    assert rep["attainability"]["holds"] and not rep["violation"]


def test_bound_for_nilpotent_matches_frame_counts():
    G = ad.build_gl(2, 1)
    rep = ss.arbitrary_char_bound(G, G.element({"E12": 1}), 5)
    assert (rep["d0"], rep["d1"]) == (2, 2) and rep["agree"]
    assert rep["bound"] == 10
