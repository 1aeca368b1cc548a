import pytest
from hypothesis import given, settings, strategies as st

from wsuper import algebra_data as ad
from wsuper import modular as md
from wsuper import nilpotent_frame as nf
from wsuper.pbw_engine import full_context


@pytest.fixture(scope="module")
def osp5():
    O = ad.build_osp12n(1)
    e = nf.nilpotent_from_spec(O, {"type": "principal"})
    return md.modular_frame(O, e, 5)


@pytest.fixture(scope="module")
def gl3():
    G = ad.build_gl(2, 1)
    e = nf.nilpotent_from_spec(G, {"type": "jordan", "even": [2], "odd": [1]})
    return md.modular_frame(G, e, 3)


def test_admissibility_osp(osp5):
    malg, _ = osp5
    rep = malg.admissibility
    assert rep["admissible"] and rep["large"]


@pytest.mark.parametrize("p", [2, 3])
def test_inadmissible_primes_d21a(p):
    with pytest.raises(md.InadmissiblePrime):
        md.reduce_mod_p(ad.build_d21a(2), p)


def test_d21a_parameter_check_at_admissible_prime():
    rep = md.reduce_mod_p(ad.build_d21a(2), 7).admissibility
    assert rep["parameter_nondegenerate"] and rep["admissible"]
    assert not md.admissibility(ad.build_d21a(4), 5)["parameter_nondegenerate"]


def test_p_map(osp5, gl3):
    for malg, _ in (osp5, gl3):
        assert md.check_p_map(malg)
        assert md.check_p_map_paths(malg)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=5, max_size=5),
       st.lists(st.integers(0, 4), min_size=5, max_size=5), st.integers(0, 4))
def test_p_map_semilinear(osp5, xs, ys, lam):
    malg, _ = osp5
    alg = malg.base
    F = alg.field
    x = [F(c) if not alg.parities[i] else F.zero for i, c in enumerate(xs)]
    y = [F(c) if not alg.parities[i] else F.zero for i, c in enumerate(ys)]
    assert md.check_semilinearity(malg, x, y, F(lam))


def test_delta_two_routes_and_matrix_identity(osp5):
    _, fr = osp5
    assert md.delta(fr, 5) == md.delta_from_m(fr, 5) == 5
    assert md.delta_m_prime(fr, 5) == 10
    rep = md.matrix_size_identity(fr, 5)
    assert rep == {"dim_U_chi": 500, "delta": 5, "reduced_w_dim": 20, "holds": True}
    assert md.kw_divisibility(10, fr, 5)


def test_reduced_invariants_dimension(osp5):
    _, fr = osp5
    assert md.reduced_invariants_dim(fr, 5) == {"dim_Q": 100, "dim_invariants": md.reduced_w_dim(fr, 5)}


def test_gl_matrix_identity_and_p_center(gl3):
    _, fr = gl3
    assert md.matrix_size_identity(fr, 3) == {"dim_U_chi": 3888, "delta": 6, "reduced_w_dim": 108,
                                              "holds": True}
    assert md.check_p_center(full_context(fr), fr, md.frame_p_powers(fr, 3), 3)


@pytest.mark.parametrize("lam,kind,gdim", [(0, "M", 100), (1, "M", 100), (2, "M", 100),
                                           (3, "Q", 50), (4, "M", 100)])
def test_baby_verma_modules(osp5, lam, kind, gdim):
    malg, fr = osp5
    mod = md.build_baby_verma(malg, fr, lam, 5)
    assert mod.dims() == (5, 5)
    assert md.check_module_brackets(malg.base, mod)
    assert md.check_p_character(malg.base, mod)
    rep = md.irreducibility_report(mod, fr)
    assert rep["irreducible"] and rep["type"] == kind and rep["generated_algebra_dim"] == gdim
    assert rep["whittaker_dims"] == [1, 1]
    assert md.kw_divisibility(mod.dim, fr, 5)


def test_transition_tensor_check():
    O = ad.build_osp12n(1)
    e = nf.nilpotent_from_spec(O, {"type": "principal"})
    rep = md.transition_tensor_check(O, e, 3, 8)
    assert rep["a_letters"] == ["x2"]
    assert rep["independent"] and rep["counts_match"] and rep["top_term_law"]
    assert rep["rank"] == 12
    assert [r["family"] for r in rep["rows"]] == [1, 1, 0, 1, 2, 1, 1, 2, 2]


def test_transition_check_needs_cap():
    from wsuper.walgebra import CapTooSmall
    O = ad.build_osp12n(1)
    e = nf.nilpotent_from_spec(O, {"type": "principal"})
    with pytest.raises(CapTooSmall) as err:
        md.transition_tensor_check(O, e, 5, 8)
    assert err.value.needed == 10


def test_is_prime():
    assert [p for p in range(20) if md.is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
