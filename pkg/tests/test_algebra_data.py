from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wsuper import algebra_data as ad


def test_gl21_structure():
    G = ad.build_gl(2, 1)
    assert G.dims == (5, 4)
    assert all(ad.validate(G).values())
    assert G.bracket(G.unit("E13"), G.unit("E31")) == G.element({"E11": 1, "E33": 1})


def test_gl11_super_bracket_of_odd_elements():
    G = ad.build_gl(1, 1)
    assert G.bracket(G.unit("E12"), G.unit("E21")) == G.element({"E11": 1, "E22": 1})
    assert G.bracket(G.unit("E12"), G.unit("E12")) == G.zero()


def test_sl21_traceless():
    S = ad.build_sl(2, 1)
    assert S.dims == (4, 4)
    assert all(ad.validate(S).values())


@pytest.mark.parametrize("n", [1, 2])
def test_osp_structure(n):
    O = ad.build_osp12n(n)
    assert O.dims == (n * (2 * n + 1), 2 * n)
    assert all(ad.validate(O).values())


def test_osp12_basis_shape():
    O = ad.build_osp12n(1)
    assert O.parities == [0, 0, 0, 1, 1]


def _d21a_checks(a):
    D = ad.build_d21a(a)
    rep = ad.validate(D)
    assert all(rep.values()), rep
    e = {i: D.unit(f"e{i}") for i in (1, 2, 3)}
    f = {i: D.unit(f"f{i}") for i in (1, 2, 3)}
    h = {i: ad.d21a_h(D, i) for i in (1, 2, 3)}
    a = Fraction(a)
    assert D.form(e[1], f[1]) == 1
    assert D.form(e[2], f[2]) == -1
    assert D.form(e[3], f[3]) == -1 / a
    assert D.form(h[1], h[2]) == -1 and D.form(h[1], h[3]) == -1
    assert D.form(h[2], h[2]) == -2 and D.form(h[3], h[3]) == -2 / a
    assert D.form(h[1], h[1]) == 0 and D.form(h[2], h[3]) == 0
    cartan = [[0, 1, a], [-1, 2, 0], [-1, 0, 2]]
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            assert D.bracket(h[i], e[j]) == [cartan[i - 1][j - 1] * c for c in e[j]]
            assert D.bracket(e[i], f[j]) == (h[i] if i == j else D.zero())


@pytest.mark.parametrize("a", [2, 3, Fraction(-1, 2), Fraction(1, 3)])
def test_d21a_table(a):
    _d21a_checks(a)


@settings(max_examples=6, deadline=None)
@given(st.fractions(min_value=-4, max_value=4, max_denominator=5).filter(lambda a: a not in (0, -1)))
def test_d21a_random_parameter(a):
    _d21a_checks(a)


def test_d21a_rejects_degenerate_parameter():
    for a in (0, -1):
        with pytest.raises(ValueError):
            ad.build_d21a(a)


def test_invariant_form_unique_up_to_scale():
    for alg in (ad.build_osp12n(1), ad.build_d21a(2)):
        assert len(ad.invariant_forms(alg)) == 1


def test_direct_sum_blocks():
    S = ad.direct_sum([ad.build_osp12n(1), ad.build_gl(1, 1)])
    assert S.dims == (5, 4)
    assert all(ad.validate(S).values())
    x = S.unit(S.names[0])
    y = S.unit(S.names[5])
    assert S.bracket(x, y) == S.zero()


def test_algebra_from_spec_and_table_roundtrip():
    G = ad.algebra_from_spec({"type": "gl", "m": 1, "n": 1})
    spec = {"type": "table", "names": G.names, "parities": G.parities,
            "brackets": [[G.names[i], G.names[j], {G.names[k]: str(c) for k, c in t.items()}]
                         for (i, j), t in G.table.items()],
            "gram": [[str(c) for c in r] for r in G.gram]}
    T = ad.algebra_from_spec(spec)
    assert T.table == G.table and all(ad.validate(T).values())
    assert ad.algebra_from_spec({"type": "D21a", "a": "2"}).dim == 17


def test_unknown_spec_rejected():
    with pytest.raises(ValueError):
        ad.algebra_from_spec({"type": "F4"})


def test_gram_determinant_nonzero():
    assert ad.gram_determinant(ad.build_osp12n(1)) != 0
