import random

import pytest
from hypothesis import given, settings, strategies as st

from wsuper import algebra_data as ad
from wsuper import nilpotent_frame as nf
from wsuper.pbw_engine import (PBWContext, add, chi_context, commute_past_prefix, full_context,
                               invariance_defect, koszul_sign)


@pytest.fixture(scope="module")
def osp_frame():
    O = ad.build_osp12n(1)
    return nf.frame_for(O, nf.nilpotent_from_spec(O, {"type": "principal"}))


@pytest.fixture(scope="module")
def gl_frame():
    G = ad.build_gl(2, 1)
    return nf.frame_for(G, nf.nilpotent_from_spec(G, {"type": "jordan", "even": [2], "odd": [1]}))


def _random_element(ctx, rng, terms=2, maxlen=3):
    out = {}
    for _ in range(terms):
        word = [rng.randrange(ctx.n) for _ in range(rng.randrange(maxlen + 1))]
        out = add(out, ctx.apply_word(word))
    return out


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_associativity_in_enveloping_algebra(seed):
    rng = random.Random(seed)
    ctx = PBWContext(ad.build_gl(1, 1))
    a, b, c = (_random_element(ctx, rng) for _ in range(3))
    assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_letter_commutator_is_lie_bracket(seed):
    rng = random.Random(seed)
    alg = ad.build_osp12n(1)
    ctx = PBWContext(alg)
    i, j = rng.randrange(alg.dim), rng.randrange(alg.dim)
    lhs = ctx.supercommutator(ctx.letter(i), ctx.letter(j))
    rhs = {}
    for k, c in alg.bracket_basis(i, j).items():
        if c:
            rhs = add(rhs, {m: c * v for m, v in ctx.letter(k).items()})
    assert lhs == rhs


def test_odd_letters_square_to_half_bracket():
    alg = ad.build_gl(1, 1)
    ctx = PBWContext(alg)
    i, j = alg.names.index("E12"), alg.names.index("E21")
    sq = ctx.apply_word([j, j])
    assert sq == {}
    assert ctx.mul(ctx.letter(i), ctx.letter(i)) == {}


def test_koszul_sign():
    par = [1, 1, 0]
    assert koszul_sign((0, 1, 0), (1, 0, 0), par) == -1
    assert koszul_sign((1, 0, 0), (0, 1, 0), par) == 1
    assert koszul_sign((1, 0, 0), (1, 0, 0), par) == 0


@pytest.mark.parametrize("which", ["osp_frame", "gl_frame"])
def test_commutation_formula_matches_straightening(which, request):
    fr = request.getfixturevalue(which)
    ctx = full_context(fr)
    nx, ny = fr.m_count, fr.n_count
    rng = random.Random(7)
    checked = 0
    for _ in range(60):
        k = rng.randrange(ctx.alg.dim)
        w = ctx.alg.unit(k)
        mono = [0] * ctx.n
        for i in range(nx):
            mono[i] = rng.randrange(3)
        for i in range(nx, nx + ny):
            mono[i] = rng.randrange(2)
        mono = tuple(mono)
        direct = ctx.mul(ctx.letter(k), {mono: ctx.F.one})
        assert commute_past_prefix(ctx, w, mono, nx, ny) == direct
        checked += 1
    assert checked == 60


def test_chi_context_acts_by_character(osp_frame):
    q = chi_context(osp_frame)
    for k in range(q.n, osp_frame.falg.dim):
        assert q.apply_word([k]) == ({q.one_mono: osp_frame.fchi[k]} if osp_frame.fchi[k] else {})


def test_unit_is_not_invariant_only_if_defect(osp_frame):
    q = chi_context(osp_frame)
    assert all(d == {} for d in invariance_defect(q, osp_frame, q.one()))
    x = q.letter(0)
    assert any(d for d in invariance_defect(q, osp_frame, x)) or q.degree(x) == 0


def test_monomials_count_by_degree(osp_frame):
    q = chi_context(osp_frame)
    counts = [len(q.monomials(d)) for d in range(6)]
    assert counts[0] == 1
    assert all(c > 0 for c in counts[1:])
    for d in range(6):
        assert all(q.kazhdan_degree(m) == d for m in q.monomials(d))
