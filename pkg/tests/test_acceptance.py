"""Acceptance suite: ten end-to-end criteria, all checked with exact arithmetic."""
import time

import pytest

from wsuper import algebra_data as ad
from wsuper import modular as md
from wsuper import nilpotent_frame as nf
from wsuper import superstructure as ss
from wsuper import walgebra as wa


class Checks:
    def __init__(self, record_property, limit):
        self.items = []
        self.record = record_property
        self.limit = limit
        self.t0 = time.perf_counter()

    def __call__(self, name, ok, detail=""):
        self.items.append((name, bool(ok), detail))

    def finish(self):
        elapsed = time.perf_counter() - self.t0
        self(f"runtime < {self.limit} s", elapsed < self.limit, f"{elapsed:.2f} s")
        self.record("checks", self.items)
        failed = [f"{n} ({d})" if d else n for n, ok, d in self.items if not ok]
        assert not failed, "failed: " + "; ".join(failed)


@pytest.fixture
def checks(record_property, request):
    limit = request.node.get_closest_marker("limit").args[0]
    return Checks(record_property, limit)


def osp_frame():
    O = ad.build_osp12n(1)
    return O, nf.nilpotent_from_spec(O, {"type": "principal"})


def gl_frame():
    G = ad.build_gl(2, 1)
    return G, nf.nilpotent_from_spec(G, {"type": "jordan", "even": [2], "odd": [1]})


@pytest.mark.limit(5)
def test_criterion_1_structure_validation(checks):
    for name, alg in (("gl(2|1)", ad.build_gl(2, 1)), ("osp(1|2)", ad.build_osp12n(1)),
                      ("D(2,1;2)", ad.build_d21a(2))):
        rep = ad.validate(alg)
        for key in ("jacobi", "antisymmetry", "parity", "even", "supersymmetric", "invariant",
                    "nondegenerate"):
            checks(f"{name} {key}", rep[key])
    D = ad.build_d21a(2)
    e1, f1, e2, f2 = (D.unit(n) for n in ("e1", "f1", "e2", "f2"))
    checks("D(2,1;2) (e1,f1) = 1", D.form(e1, f1) == 1, str(D.form(e1, f1)))
    checks("D(2,1;2) (e2,f2) = -1", D.form(e2, f2) == -1, str(D.form(e2, f2)))
    checks.finish()


@pytest.mark.limit(5)
def test_criterion_2_frame_decompositions(checks):
    for name, (alg, e) in (("osp(1|2)", osp_frame()), ("gl(2|1)", gl_frame())):
        fr = nf.frame_for(alg, e)
        checks(f"{name} m-perp decomposition", nf.check_m_perp(fr))
        checks(f"{name} p decomposition", nf.check_p_decomposition(fr))
        checks(f"{name} dimension identity", nf.check_dimension_identity(fr))
    checks.finish()


def _ge_hilbert(fr, d):
    """Hilbert coefficient of S(g^e) (times one exterior generator when r is odd),
    counted from the frame letters rather than from computed generators."""
    degs = [fr.letter_weights[k] + 2 for k in range(fr.l)] + \
           [fr.letter_weights[fr.m_count + j] + 2 for j in range(fr.q)]
    pars = [0] * fr.l + [1] * fr.q
    if fr.r_odd:
        degs.append(1)
        pars.append(1)
    return wa.hilbert_coefficient(degs, pars, d)


@pytest.mark.limit(120)
def test_criterion_3_pbw_basis(checks):
    for name, (alg, e), D in (("osp(1|2)", osp_frame(), 10), ("gl(2|1)", gl_frame(), 8)):
        fr = nf.frame_for(alg, e)
        w = wa.WAlgebra(fr, D)
        per = w.inv.per_degree()
        want = [_ge_hilbert(fr, d) for d in range(D + 1)]
        checks(f"{name} invariant dims match Hilbert series to D={D}", per == want, f"{per} vs {want}")
        rep = w.pbw_check()
        checks(f"{name} Theta-monomials independent", rep["independent"])
        checks(f"{name} Theta-monomials span invariants", rep["spans_invariants"])
        checks(f"{name} Theta-monomial counts match", rep["match"])
    checks.finish()


@pytest.mark.limit(60)
def test_criterion_4_relations(checks):
    alg, e = osp_frame()
    fr = nf.frame_for(alg, e)
    w = wa.WAlgebra(fr, 10)
    try:
        table = w.commutator_table()
    except wa.CapTooSmall as exc:
        checks("relation table closes", False, str(exc))
        checks.finish()
    checks("relation table closes", len(table.F) == 5, f"{len(table.F)} pairs")
    checks("leading parts equal structure constants of g^e", table.check_leading())
    checks("refined congruence", table.check_refined())
    sq = table.odd_extra_constant()
    want = {(0,) * w.N: fr.c}
    checks("[T3, T3] = c with the frame constant", sq == want, f"{sq} vs c = {fr.c}")
    checks.finish()


@pytest.mark.limit(60)
def test_criterion_5_representation_systems(checks):
    alg, e = osp_frame()
    w = wa.WAlgebra(nf.frame_for(alg, e), 10)
    table = w.commutator_table()
    two = wa.twodim_system(table)
    sols = wa.search_rep_modular(two, 5)
    checks("two-dim system solvable over F_5", len(sols) > 0, f"{len(sols)} solutions")
    lift = None
    for so in sols:
        lift = wa.lift_solution(two, so, 5)
        if lift:
            break
    checks("lifted solution verified over Q", lift is not None and wa.verify_rep(two, lift)["ok"],
           str(lift))
    one = wa.onedim_system(table)
    const = one.equations["theta_v_square"]
    checks("one-dim system contains a nonzero constant equation",
           bool(const) and not const.variables_used())
    checks("one-dim system has no solution over F_5", wa.search_rep_modular(one, 5) == [])
    checks.finish()


@pytest.mark.limit(60)
def test_criterion_6_modular_pipeline(checks):
    alg, e = osp_frame()
    malg, fr = md.modular_frame(alg, e, 5)
    delta = md.delta(fr, 5)
    checks("delta == 10", delta == 10, f"got {delta}")
    for lam in range(5):
        mod = md.build_baby_verma(malg, fr, lam, 5)
        rep = md.irreducibility_report(mod, fr)
        checks(f"lambda={lam} baby Verma dim 10", mod.dim == 10, str(mod.dim))
        checks(f"lambda={lam} module relations", md.check_module_brackets(malg.base, mod)
               and md.check_p_character(malg.base, mod))
        checks(f"lambda={lam} cyclic from every basis vector", rep["basis_cyclic"])
        checks(f"lambda={lam} irreducible", rep["irreducible"])
        checks(f"lambda={lam} dim of m-Whittaker vectors == 2", rep["whittaker_dim"] == 2,
               str(rep["whittaker_dim"]))
        checks(f"lambda={lam} KW divisibility", md.kw_divisibility(mod.dim, fr, 5))
    ident = md.matrix_size_identity(fr, 5)
    checks("dim U_chi(g) == delta^2 * reduced W dim",
           ident["dim_U_chi"] == delta ** 2 * md.reduced_w_dim(fr, 5),
           f"{ident['dim_U_chi']} vs {delta}^2 * {md.reduced_w_dim(fr, 5)}")
    checks.finish()


@pytest.mark.limit(120)
def test_criterion_7_transition_tensor(checks):
    alg, e = osp_frame()
    rep = md.transition_tensor_check(alg, e, 3, 8)
    checks("monomial families independent through degree 8", rep["independent"])
    checks("family counts match restricted counts", rep["counts_match"])
    checks("top term of x^p - x^[p] is x^p", rep["top_term_law"])
    checks.finish()


@pytest.mark.limit(10)
def test_criterion_8_superalgebra_calculus(checks):
    tt = ss.tensor_table_report(3)
    checks("tensor rules for all block sizes <= 3", tt["ok"],
           str([r for r in tt["rows"] if not r["ok"]][:3]))
    ot = ss.outer_type_report(4)
    checks("outer tensor type table for dim <= 4", ot["ok"],
           str([r for r in ot["rows"] if not r["ok"]][:3]))
    Q1 = ss.build_Q(1)
    got = ss.classify_simple(ss.graded_tensor(ss.graded_tensor(Q1, Q1), Q1))
    checks("Q1 (x) Q1 (x) Q1 is Q2", got == ("Q", 2), str(got))
    checks.finish()


@pytest.mark.limit(10)
def test_criterion_9_bound_calculators(checks):
    p = 7
    G = ad.build_gl(2, 1)
    xi = G.element({"E11": 1, "E22": 1, "E12": 1})
    rep = ss.arbitrary_char_bound(G, xi, p)
    d0, d1 = rep["direct"]
    checks("Levi and direct d-counters agree", rep["agree"] and (rep["d0"], rep["d1"]) == (d0, d1),
           f"{(rep['d0'], rep['d1'])} vs {(d0, d1)}")
    checks("bound == p^(d0/2) 2^floor(d1/2)", rep["bound"] == p ** (d0 // 2) * 2 ** (d1 // 2),
           str(rep["bound"]))
    summands = [(sm["d0"], sm["d1"]) for sm in rep["summands"]]
    ds = ss.direct_sum_bound(summands, p)
    s0 = sum(a for a, _ in summands)
    s1 = sum(b for _, b in summands)
    l = sum(1 for _, b in summands if b % 2)
    checks("direct-sum bound == p^(d0'/2) 2^((d1'+l)/2)",
           ds["bound"] == p ** (s0 // 2) * 2 ** ((s1 + l) // 2), str(ds))
    checks("composed Levi bound is attained", rep["attainability"]["holds"])
    checks("at most one odd summand", not rep["violation"])
    checks.finish()


@pytest.mark.limit(5)
def test_criterion_10_zero_nilpotent(checks):
    G = ad.build_gl(1, 1)
    fr = nf.frame_for(G, G.zero())
    w = wa.WAlgebra(fr, 4)
    singles = all(len(g.theta) == 1 and sum(next(iter(g.theta))) == 1 for g in w.gens)
    checks("generators are the basis of g", w.N == G.dim and singles, f"{w.N} generators")
    checks("W equals U(g) through degree 4", w.pbw_check()["match"])
    for p in (3, 5):
        checks(f"delta == 1 at p={p}", md.delta(fr, p) == 1 and md.delta_from_m(fr, p) == 1)
        checks(f"KW bound == 1 at p={p}", md.kw_bound(fr, p) == 1)
        cb = ss.arbitrary_char_bound(G, G.zero(), p)
        checks(f"character bound == 1 at p={p}", cb["bound"] == 1 and cb["agree"], str(cb["bound"]))
    malg, mf = md.modular_frame(G, G.zero(), 5)
    red = md.reduced_invariants_dim(mf, 5)
    checks("reduced W is all of U_0(g)", red["dim_invariants"] == red["dim_Q"] == 5 ** 2 * 2 ** 2,
           str(red))
    checks.finish()
