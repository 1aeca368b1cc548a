from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wsuper import algebra_data as ad
from wsuper import nilpotent_frame as nf
from wsuper import walgebra as wa


@pytest.fixture(scope="module")
def osp_w():
    O = ad.build_osp12n(1)
    fr = nf.frame_for(O, nf.nilpotent_from_spec(O, {"type": "principal"}))
    return wa.WAlgebra(fr, 10)


@pytest.fixture(scope="module")
def osp_table(osp_w):
    return osp_w.commutator_table()


@pytest.fixture(scope="module")
def gl_w():
    G = ad.build_gl(2, 1)
    fr = nf.frame_for(G, nf.nilpotent_from_spec(G, {"type": "jordan", "even": [2], "odd": [1]}))
    return wa.WAlgebra(fr, 8)


@pytest.fixture(scope="module")
def gl_table(gl_w):
    return gl_w.commutator_table()


def _named(w, poly):
    return {" ".join(f"T{k + 1}^{a}" for k, a in enumerate(E) if a): c for E, c in poly.items()}


# osp(1|2), principal nilpotent: frozen values

def test_osp_invariant_dimensions(osp_w):
    assert osp_w.inv.per_degree() == [1, 1, 0, 1, 2, 1, 0, 1, 2, 1, 0]


def test_osp_generators(osp_w):
    q = osp_w.q
    assert [(g.name, g.degree, g.parity) for g in osp_w.gens] == [("x1", 4, 0), ("y1", 3, 1), ("v1", 1, 1)]
    texts = [q.to_text(g.theta) for g in osp_w.gens]
    assert texts == ["1 * x1 + 1/4 * x2^2 + 1/2 * x2", "1/2 * x2 v1 + 1 * y1", "1 * v1"]


def test_osp_generator_properties(osp_w):
    fr, q, gens = osp_w.frame, osp_w.q, osp_w.gens
    assert wa.check_leading_terms(q, gens)
    assert wa.check_vanishing(fr, q, gens)
    assert wa.check_invariance(fr, q, [g.theta for g in gens])
    assert wa.check_sigma_generators(osp_w)
    assert wa.check_sigma_multiplicative(osp_w)
    assert wa.check_gr_supercommutative(osp_w)


def test_osp_relations(osp_table):
    F = {k: _named(None, v) for k, v in osp_table.F.items()}
    assert F == {
        (0, 1): {"T1^1 T3^1": 1, "T2^1": Fraction(-3, 4)},
        (0, 2): {"T2^1": 1, "T3^1": Fraction(1, 4)},
        (1, 1): {"T2^1 T3^1": 1, "T1^1": -2},
        (1, 2): {"": Fraction(-1, 2)},
        (2, 2): {"": 2},
    }
    assert osp_table.odd_extra_constant() == {(0, 0, 0): 2}
    assert osp_table.odd_extra_constant()[(0, 0, 0)] == osp_table.w.frame.c


def test_osp_relation_structure(osp_table):
    assert osp_table.check_leading()
    assert osp_table.check_refined()
    assert osp_table.check_antisymmetry()


def test_osp_pbw_basis(osp_w):
    rep = osp_w.pbw_check()
    assert rep["independent"] and rep["spans_invariants"] and rep["match"]


def test_osp_w_prime_is_image_of_theta_v(osp_w):
    rep = wa.w_prime_report(osp_w, 6)
    assert rep["identity"] and rep["type_q"] and rep["v_not_in_W_prime"]
    assert [r["dim_W_prime"] for r in rep["rows"]] == [1, 1, 1, 2, 3, 3, 3]


def test_osp_onedim_system_is_infeasible(osp_table):
    sysm = wa.onedim_system(osp_table)
    const = sysm.equations["theta_v_square"]
    assert const.t == {(0,): -1}
    assert not const.variables_used()


def test_osp_twodim_solutions_mod5(osp_table):
    sysm = wa.twodim_system(osp_table)
    assert len(sysm.free) == 6
    sols = wa.search_rep_modular(sysm, 5)
    assert len(sols) == 20


def test_osp_twodim_exact_point(osp_table):
    sysm = wa.twodim_system(osp_table)
    point = {"X0_1": 0, "Y1_1": Fraction(-1, 4), "X1_2": 1, "Y0_2": 0, "X1_3": -2, "Y0_3": Fraction(-1, 2)}
    assert wa.verify_rep(sysm, point)["ok"]
    bad = dict(point, X0_1=1)
    assert not wa.verify_rep(sysm, bad)["ok"]


def test_rep_zero_pattern_enforced(osp_table):
    sysm = wa.twodim_system(osp_table)
    with pytest.raises(ValueError):
        wa.verify_rep(sysm, {"X0_2": 1})


# gl(2|1), e = E12: frozen values

def test_gl_generators_and_hilbert(gl_w):
    assert [(g.name, g.degree, g.parity) for g in gl_w.gens] == [
        ("x1", 2, 0), ("x2", 2, 0), ("x3", 4, 0), ("y1", 3, 1), ("y2", 3, 1)]
    assert gl_w.inv.per_degree() == [1, 0, 2, 2, 4, 4, 7, 8, 11]
    assert gl_w.inv.per_degree() == [wa.hilbert_coefficient(gl_w.gdeg, gl_w.gpar, d) for d in range(9)]
    assert gl_w.pbw_check()["match"]


def test_gl_relations(gl_table):
    assert gl_table.check_leading() and gl_table.check_refined() and gl_table.check_antisymmetry()
    F = {k: _named(None, v) for k, v in gl_table.F.items()}
    assert F[(0, 3)] == {"T4^1": 1}
    assert F[(3, 4)] == {"T3^1": 1, "T2^2": -1, "T1^1 T2^1": -1, "T1^2": Fraction(-1, 4)}
    assert not F[(3, 3)] and not F[(4, 4)]


def test_gl_abelianization(gl_table):
    rep = wa.abelianization_dims(gl_table)
    assert rep["even_pairs_vanish"]
    assert not rep["all_vanish"]
    assert rep["nonzero"] == ["F'_4,5"]
    assert rep["quotient_polynomial_vars"] == 2


@settings(max_examples=30, deadline=None)
@given(st.fractions(min_value=-9, max_value=9, max_denominator=7),
       st.fractions(min_value=-9, max_value=9, max_denominator=7))
def test_gl_onedim_points_on_the_quotient(gl_table, x1, x2):
    sysm = wa.onedim_system(gl_table)
    x3 = x2 * x2 + x1 * x2 + x1 * x1 / 4
    assert wa.verify_rep(sysm, {"X_1": x1, "X_2": x2, "X_3": x3})["ok"]
    assert not wa.verify_rep(sysm, {"X_1": x1, "X_2": x2, "X_3": x3 + 1})["ok"]


def test_gl_weight_normalization_is_identity(gl_w):
    G = gl_w.frame.alg
    te = [G.element({"E11": 1, "E22": 1}), G.element({"E33": 1})]
    gens, changed = wa.weight_normalize(gl_w, te)
    assert not changed
    assert [g.theta for g in gens] == [g.theta for g in gl_w.gens]


def test_cap_too_small_reports_needed_degree(gl_w):
    w = wa.WAlgebra(gl_w.frame, 4)
    with pytest.raises(wa.CapTooSmall) as err:
        w.commutator_table()
    assert err.value.needed == 5


@pytest.mark.parametrize("degs,pars,d,want", [([1], [0], 5, 1), ([1], [1], 1, 1), ([1], [1], 2, 0),
                                              ([2, 2], [0, 0], 4, 3), ([1, 1], [1, 1], 2, 1)])
def test_hilbert_coefficient(degs, pars, d, want):
    assert wa.hilbert_coefficient(degs, pars, d) == want


def test_zero_nilpotent_generators_are_the_algebra():
    G = ad.build_gl(1, 1)
    w = wa.WAlgebra(nf.frame_for(G, G.zero()), 2)
    assert w.N == 4 and all(d == 2 for d in w.gdeg)
    T = w.commutator_table()
    assert T.check_leading()
