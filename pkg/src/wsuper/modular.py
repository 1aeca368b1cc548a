"""Reduction modulo p: p-maps, p-centers, reduced enveloping algebras, baby Verma
modules, Whittaker vectors, and the transition-algebra tensor check."""
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra_data import gram_determinant, mat_mul
from .fields import GF, ModInt
from .linalg import Echelon, kernel, nullspace, solve
from .nilpotent_frame import frame_for, reduce_frame
from .pbw_engine import PBWContext, _addto, add, chi_context, full_context


class InadmissiblePrime(ValueError):
    pass


def is_prime(p):
    return p >= 2 and all(p % k for k in range(2, int(p ** 0.5) + 1))


def _denominators(alg):
    out = 1
    for t in alg.table.values():
        for c in t.values():
            if isinstance(c, Fraction):
                out = out * c.denominator
    for r in alg.gram:
        for c in r:
            if isinstance(c, Fraction):
                out = out * c.denominator
    return out


def admissibility(alg, p, frame=None):
    """Which of the working conditions for 'p large' the prime satisfies."""
    rep = {"p": p, "odd_prime": is_prime(p) and p % 2 == 1}
    det = gram_determinant(alg)
    rep["gram_invertible"] = bool(det) and Fraction(det).numerator % p != 0 \
        and Fraction(det).denominator % p != 0
    rep["constants_integral"] = _denominators(alg) % p != 0
    a = getattr(alg, "param", None)
    if a is not None:
        a = Fraction(a)
        rep["parameter_nondegenerate"] = all(
            x.numerator % p != 0 and x.denominator % p != 0 for x in (a, 1 + a))
    if frame is not None:
        top = max([w + 2 for w in frame.letter_weights], default=0)
        rep["above_kazhdan_degrees"] = p > top
    hard = ("odd_prime", "gram_invertible", "constants_integral", "parameter_nondegenerate")
    rep["admissible"] = all(rep.get(k, True) for k in hard)
    rep["large"] = rep["admissible"] and rep.get("above_kazhdan_degrees", True)
    return rep


@dataclass
class ModularAlgebra:
    base: object
    p: int
    p_map: dict
    admissibility: dict

    @property
    def field(self):
        return self.base.field


def _matpow(M, p):
    out = M
    for _ in range(p - 1):
        out = mat_mul(out, M)
    return out


def p_power_adjoint(alg, x, p):
    """Solve ad(y) = (ad x)^p for y in the even part; raises if not unique."""
    A = alg.ad_matrix(x)
    P = _matpow(A, p)
    even = [i for i in range(alg.dim) if not alg.parities[i]]
    adj = [alg.ad_matrix(alg.unit(i)) for i in even]
    n = alg.dim
    rows = [[adj[k][r][c] for k in range(len(even))] for r in range(n) for c in range(n)]
    rhs = [P[r][c] for r in range(n) for c in range(n)]
    sol = solve(rows, rhs, len(even), alg.field.zero)
    if sol is None:
        raise ValueError("(ad x)^p is not inner")
    ker = nullspace(rows, len(even), alg.field.zero)
    y = [alg.field.zero] * n
    for k, i in enumerate(even):
        y[i] = sol[k]
    return y, len(ker)


def p_power_matrix(alg, x, p):
    X = alg.matrix_of(x)
    return alg.coords_of_matrix(_matpow(X, p))


def p_power(alg, x, p):
    """x^[p]; the matrix realization is authoritative when it exists (it resolves
    the ambiguity from a center), and is checked against the adjoint equation."""
    if alg.matrices is not None:
        y = p_power_matrix(alg, x, p)
        if y is None:
            raise ValueError("matrix p-th power leaves the algebra")
        A = _matpow(alg.ad_matrix(x), p)
        if alg.ad_matrix(y) != A:
            raise ValueError("matrix and adjoint p-maps disagree")
        return y
    y, amb = p_power_adjoint(alg, x, p)
    if amb:
        raise ValueError("adjoint p-map is ambiguous without a matrix realization")
    return y


def reduce_mod_p(alg, p, frame=None):
    rep = admissibility(alg, p, frame)
    if not rep["admissible"]:
        bad = [k for k, v in rep.items() if v is False]
        raise InadmissiblePrime(f"p={p} fails: {', '.join(bad)}")
    F = GF(p)
    base = alg.with_field(F)
    for k in ("param",):
        if hasattr(alg, k):
            setattr(base, k, getattr(alg, k))
    pmap = {i: p_power(base, base.unit(i), p) for i in range(base.dim) if not base.parities[i]}
    return ModularAlgebra(base, p, pmap, rep)


def check_p_map(malg):
    """[x^[p], y] = (ad x)^p (y) for every even basis x and basis y."""
    alg = malg.base
    for i, y in malg.p_map.items():
        if alg.ad_matrix(y) != _matpow(alg.ad_matrix(alg.unit(i)), malg.p):
            return False
    return True


def check_p_map_paths(malg):
    """Adjoint solve and matrix power agree up to the center."""
    alg = malg.base
    if alg.matrices is None:
        return None
    for i in malg.p_map:
        y1 = p_power_matrix(alg, alg.unit(i), malg.p)
        y2, _ = p_power_adjoint(alg, alg.unit(i), malg.p)
        if alg.ad_matrix(y1) != alg.ad_matrix(y2):
            return False
    return True


def check_semilinearity(malg, x, y, lam):
    """(lam x)^[p] = lam^p x^[p] and, with the p-1 Lie words of the expansion of
    (ad(lam x + y))^{p-1}, the additivity law of the p-map checked on ad."""
    alg = malg.base
    p = malg.p
    lx = [lam * c for c in x]
    lhs = p_power(alg, lx, p)
    rhs = [lam ** p * c for c in p_power(alg, x, p)]
    if lhs != rhs:
        return False
    s = [a + b for a, b in zip(x, y)]
    ps = p_power(alg, s, p)
    px, py = p_power(alg, x, p), p_power(alg, y, p)
    diff = [a - b - c for a, b, c in zip(ps, px, py)]
    # the difference must be a sum of Lie words in x, y of length p
    words = _lie_words(alg, x, y, p)
    ech = Echelon()
    for w in words:
        ech.add({k: c for k, c in enumerate(w) if c})
    return ech.contains({k: c for k, c in enumerate(diff) if c})


def _lie_words(alg, x, y, n):
    level = [x, y]
    for _ in range(n - 1):
        nxt = []
        for w in level:
            for g in (x, y):
                nxt.append(alg.bracket(g, w))
        level = nxt
    return level


def dim_reduced_env(malg):
    d0, d1 = malg.base.dims
    return {"p_exponent": d0, "two_exponent": d1, "dim": malg.p ** d0 * 2 ** d1}


def delta(frame, p):
    """dim U_chi(m): p^{d0/2} 2^{floor(d1/2)}."""
    if frame.d0 % 2:
        raise ValueError("d0 is odd: broken frame")
    return p ** (frame.d0 // 2) * 2 ** (frame.d1 // 2)


def delta_from_m(frame, p):
    """dim U_chi(m) counted from the parities of the m basis."""
    pars = [frame.alg.parity_of(v) for v in frame.m_basis]
    return p ** pars.count(0) * 2 ** pars.count(1)


def delta_m_prime(frame, p):
    """dim U_chi(m'): p^{d0/2} 2^{ceil(d1/2)}."""
    return p ** (frame.d0 // 2) * 2 ** ((frame.d1 + 1) // 2)


def reduced_w_dim(frame, p):
    return p ** frame.l * 2 ** (frame.q + (1 if frame.r_odd else 0))


def matrix_size_identity(frame, p):
    d0, d1 = frame.alg.dims
    lhs = p ** d0 * 2 ** d1
    rhs = delta(frame, p) ** 2 * reduced_w_dim(frame, p)
    return {"dim_U_chi": lhs, "delta": delta(frame, p), "reduced_w_dim": reduced_w_dim(frame, p),
            "holds": lhs == rhs}


def kw_bound(frame, p):
    return p ** (frame.d0 // 2) * 2 ** (frame.d1 // 2)


def kw_divisibility(dim, frame, p):
    return dim % kw_bound(frame, p) == 0


# ---------------------------------------------------------------- frames mod p

def modular_frame(alg, e, p):
    """Frame over Q reduced mod p (e given over Q)."""
    fr = frame_for(alg, e)
    malg = reduce_mod_p(fr.alg, p, fr)
    return malg, reduce_frame(fr, malg.field)


def letter_coords(frame, vec):
    """Coordinates of an algebra vector in the frame letter basis."""
    if not hasattr(frame, "_letter_ech"):
        ech = Echelon()
        for k, v in enumerate(frame.letters):
            ech.add({i: c for i, c in enumerate(v) if c}, tag=k)
        frame._letter_ech = ech
    combo = frame._letter_ech.express({i: c for i, c in enumerate(vec) if c})
    return [combo.get(k, frame.alg.field.zero) for k in range(len(frame.letters))]


def frame_p_powers(frame, p):
    """x^[p] in letter coordinates for every even letter."""
    alg = frame.alg
    out = {}
    for k, v in enumerate(frame.letters):
        if not frame.letter_parities[k]:
            out[k] = letter_coords(frame, p_power(alg, v, p))
    return out


def p_center_element(fctx, frame, k, pmap, p):
    """x^p - x^[p] in the full PBW basis of U(g) (x the k-th letter)."""
    mono = tuple(p if t == k else 0 for t in range(fctx.n))
    out = {mono: fctx.F.one}
    for t, c in enumerate(pmap[k]):
        if c:
            _addto(out, tuple(1 if s == t else 0 for s in range(fctx.n)), -c)
    return out


def check_p_center(fctx, frame, pmap, p):
    """Every x^p - x^[p] supercommutes with every letter."""
    for k in pmap:
        z = p_center_element(fctx, frame, k, pmap, p)
        for t in range(fctx.n):
            a = fctx.mul(fctx.letter(t), z)
            b = fctx.mul(z, fctx.letter(t))
            if add(a, b, -1):
                return False
    return True


def reduced_chi_context(frame, p, pmap=None):
    """Q_chi^chi: even p~ letters satisfy x^p = x^[p] + chi(x)^p."""
    pmap = pmap or frame_p_powers(frame, p)
    red = {}
    for k in range(frame.n_ptilde):
        if not frame.letter_parities[k]:
            shift = frame.fchi[k] ** p
            red[k] = (p, pmap[k], shift)
    return chi_context(frame, red)


def reduced_invariants_dim(frame, p):
    """dim of the ad m-invariants of the finite-dimensional Q_chi^chi."""
    q = reduced_chi_context(frame, p)
    caps = [1 if frame.letter_parities[k] else p - 1 for k in range(q.n)]
    monos = list(itertools.product(*[range(c + 1) for c in caps]))
    total = 0
    for par in (0, 1):
        cols = []
        for mono in monos:
            if q.mono_parity(mono) != par:
                continue
            col = {}
            for z in range(q.n, frame.falg.dim):
                for mm, c in q.left_mul(z, mono).items():
                    _addto(col, (z, mm), c)
                cz = frame.fchi[z]
                if cz:
                    _addto(col, (z, mono), -cz)
            cols.append(col)
        total += len(kernel(cols, q.F.one))
    return {"dim_Q": len(monos), "dim_invariants": total}


# ---------------------------------------------------------------- modules

@dataclass
class FiniteModule:
    dim: int
    parities: list
    action: list          # action[i] = matrix of basis element i (rows act on column vectors)
    field: object
    p: int
    xi: list              # p-character values on the even basis (None for odd)
    labels: list

    def dims(self):
        return (self.parities.count(0), self.parities.count(1))


def build_baby_verma(malg, frame, lam, p=None):
    """Z_chi(lam) for a rank-one frame: PBW letters are the negative part of the
    Dynkin grading, g(>=0) acts through lam (on g(0)) and 0 (on g(>0))."""
    p = p or malg.p
    alg = frame.alg
    F = alg.field
    gr = frame.grading
    if any(gr.dims(0)[1:]) or gr.dims(0)[0] != 1:
        raise ValueError("baby Verma construction supports g(0) one-dimensional and even")
    neg = [v for d in sorted(gr.degrees()) if d < 0 for v in gr.components[d]]
    nonneg = [v for d in sorted(gr.degrees()) if d >= 0 for v in gr.components[d]]
    from .algebra_data import change_basis
    names = [f"n{k + 1}" for k in range(len(neg))] + [f"b{k + 1}" for k in range(len(nonneg))]
    balg = change_basis(alg, neg + nonneg, names, alg.tag + " [triangular basis]")
    h = gr.components[0][0]
    lam = F(lam)
    char = [lam if v == h else F.zero for v in nonneg]
    chi = [alg.form(frame.triple.e, v) for v in neg]
    red = {}
    for k, v in enumerate(neg):
        if not alg.parity_of(v):
            pv = p_power(alg, v, p)
            coords = _coords(neg + nonneg, pv, F)
            red[k] = (p, coords, chi[k] ** p)
    ctx = PBWContext(balg, len(neg), char, reduction=red)
    caps = [1 if alg.parity_of(v) else p - 1 for v in neg]
    monos = list(itertools.product(*[range(c + 1) for c in caps]))
    index = {m: i for i, m in enumerate(monos)}
    N = len(monos)
    action = []
    for i in range(alg.dim):
        x = _coords(neg + nonneg, alg.unit(i), F)
        M = [[F.zero] * N for _ in range(N)]
        for col, m in enumerate(monos):
            img = {}
            for k, c in enumerate(x):
                if c:
                    for mm, cc in ctx.left_mul(k, m).items():
                        _addto(img, mm, c * cc)
            for mm, cc in img.items():
                M[index[mm]][col] = M[index[mm]][col] + cc
        action.append(M)
    pars = [ctx.mono_parity(m) for m in monos]
    chi_full = [alg.form(frame.triple.e, alg.unit(i)) for i in range(alg.dim)]
    xi = [chi_full[i] if not alg.parities[i] else None for i in range(alg.dim)]
    return FiniteModule(N, pars, action, F, p, xi, [ctx.to_text({m: F.one}) for m in monos])


def _coords(basis, vec, F):
    ech = Echelon()
    for k, v in enumerate(basis):
        ech.add({i: c for i, c in enumerate(v) if c}, tag=k)
    combo = ech.express({i: c for i, c in enumerate(vec) if c})
    return [combo.get(k, F.zero) for k in range(len(basis))]


def _mat_sub(a, b, s=1):
    return [[x - s * y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def _lin_mat(alg, mod, vec):
    N = mod.dim
    out = [[mod.field.zero] * N for _ in range(N)]
    for i, c in enumerate(vec):
        if c:
            out = [[x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(out, mod.action[i])]
    return out


def check_module_brackets(alg, mod):
    for i in range(alg.dim):
        for j in range(alg.dim):
            s = -1 if alg.parities[i] and alg.parities[j] else 1
            lhs = _mat_sub(mat_mul(mod.action[i], mod.action[j]), mat_mul(mod.action[j], mod.action[i]), s)
            if lhs != _lin_mat(alg, mod, alg.bracket_basis_vec(i, j) if hasattr(alg, "bracket_basis_vec")
                               else alg.bracket(alg.unit(i), alg.unit(j))):
                return False
    return True


def check_p_character(alg, mod):
    """x^p acts as x^[p] + xi(x)^p for every even basis x."""
    F = mod.field
    for i in range(alg.dim):
        if alg.parities[i]:
            continue
        lhs = _matpow(mod.action[i], mod.p)
        pm = _lin_mat(alg, mod, p_power(alg, alg.unit(i), mod.p))
        shift = mod.xi[i] ** mod.p
        rhs = [[pm[r][c] + (shift if r == c else F.zero) for c in range(mod.dim)] for r in range(mod.dim)]
        if lhs != rhs:
            return False
    return True


def whittaker_vectors(mod, frame):
    """Common kernel of x - chi(x) over the m basis."""
    alg = frame.alg
    F = mod.field
    rows = []
    for z in frame.m_basis:
        M = _lin_mat(alg, mod, z)
        cz = alg.form(frame.triple.e, z)
        for r in range(mod.dim):
            rows.append([M[r][c] - (cz if r == c else F.zero) for c in range(mod.dim)])
    if not rows:
        return [[F.one if r == c else F.zero for r in range(mod.dim)] for c in range(mod.dim)]
    return nullspace(rows, mod.dim, F.zero)


def cyclic_span_dim(mod, vec):
    """Dimension of the submodule generated by vec."""
    ech = Echelon()
    todo = [list(vec)]
    ech.add({i: c for i, c in enumerate(vec) if c})
    while todo:
        v = todo.pop()
        for M in mod.action:
            w = [sum((M[r][c] * v[c] for c in range(mod.dim) if v[c]), mod.field.zero) for r in range(mod.dim)]
            sw = {i: c for i, c in enumerate(w) if c}
            if sw and ech.add(sw) is None:
                todo.append(w)
    return len(ech)


def generated_algebra_dim(mod):
    """Dimension of the associative algebra generated by the action matrices."""
    N = mod.dim
    one = mod.field.one
    ident = [[one if r == c else mod.field.zero for c in range(N)] for r in range(N)]

    def flat(M):
        return {(r, c): x for r, row in enumerate(M) for c, x in enumerate(row) if x}

    ech = Echelon()
    ech.add(flat(ident))
    todo = [ident]
    while todo:
        A = todo.pop()
        for M in mod.action:
            B = mat_mul(M, A)
            fb = flat(B)
            if fb and ech.add(fb) is None:
                todo.append(B)
    return len(ech)


def homogeneous_whittaker(mod, frame):
    """Whittaker vectors split by parity (m is even, so the space is graded)."""
    F = mod.field
    out = {}
    for par in (0, 1):
        idx = [r for r in range(mod.dim) if mod.parities[r] == par]
        sub = FiniteModule(mod.dim, mod.parities, mod.action, F, mod.p, mod.xi, mod.labels)
        rows = []
        alg = frame.alg
        for z in frame.m_basis:
            M = _lin_mat(alg, sub, z)
            cz = alg.form(frame.triple.e, z)
            for r in range(mod.dim):
                rows.append([M[r][c] - (cz if r == c else F.zero) for c in idx])
        ker = nullspace(rows, len(idx), F.zero) if rows else \
            [[F.one if a == b else F.zero for a in range(len(idx))] for b in range(len(idx))]
        full = []
        for v in ker:
            w = [F.zero] * mod.dim
            for k, r in enumerate(idx):
                w[r] = v[k]
            full.append(w)
        out[par] = full
    return out


def irreducibility_report(mod, frame):
    """Graded irreducibility: cyclic from every basis vector, and from every nonzero
    homogeneous Whittaker vector over F_p (a graded submodule always contains one,
    since x - chi(x) is nilpotent for x in m).  The generated matrix algebra has
    dimension N^2 for type M and N^2/2 for type Q."""
    F = mod.field
    N = mod.dim
    basis_cyclic = all(cyclic_span_dim(mod, [F.one if r == c else F.zero for r in range(N)]) == N
                       for c in range(N))
    wh = homogeneous_whittaker(mod, frame)
    wh_cyclic = True
    for par, vecs in wh.items():
        for coeffs in itertools.product(range(mod.p), repeat=len(vecs)):
            if not any(coeffs):
                continue
            v = [sum((F(a) * w[r] for a, w in zip(coeffs, vecs)), F.zero) for r in range(N)]
            if cyclic_span_dim(mod, v) != N:
                wh_cyclic = False
    gdim = generated_algebra_dim(mod)
    kind = "M" if gdim == N * N else ("Q" if 2 * gdim == N * N else None)
    return {"basis_cyclic": basis_cyclic, "whittaker_cyclic": wh_cyclic,
            "whittaker_dim": sum(len(v) for v in wh.values()),
            "whittaker_dims": [len(wh[0]), len(wh[1])],
            "generated_algebra_dim": gdim, "type": kind,
            "irreducible": basis_cyclic and wh_cyclic and kind is not None}


def module_to_json(mod):
    return {"dim": mod.dim, "parities": mod.parities,
            "action": [[[x.v for x in row] for row in M] for M in mod.action]}


# ---------------------------------------------------------------- transition check

def transition_tensor_check(alg, e, p, D):
    """Through Kazhdan degree D: products of p-center monomials in the a_k letters
    with Theta-monomials are independent in Q_chi over F_p; their counts match
    p-center monomials in all even p~ letters times restricted Theta-monomials;
    and x^p - x^[p] has top Kazhdan term x^p."""
    from .walgebra import WAlgebra
    malg, fr = modular_frame(alg, e, p)
    q = chi_context(fr)
    degs = q.degrees
    even_pt = [k for k in range(fr.n_ptilde) if not fr.letter_parities[k]]
    pure = set(fr.generator_letters())
    a_letters = [k for k in even_pt if k not in pure]
    need = p * min([degs[k] for k in even_pt] or [1])
    if D < need:
        from .walgebra import CapTooSmall
        raise CapTooSmall(f"degree cap {D} too small to witness a p-center element", need)
    pmap = frame_p_powers(fr, p)
    zp = {}
    top_law = True
    for k in even_pt:
        z = q.letter(k)
        zpow = q.one()
        for _ in range(p):
            zpow = q.mul(z, zpow)
        img = {}
        for t, c in enumerate(pmap[k]):
            if c:
                for mm, cc in q.left_mul(t, q.one_mono).items():
                    _addto(img, mm, c * cc)
        el = add(zpow, img, -1)
        zp[k] = el
        mono = tuple(p if t == k else 0 for t in range(q.n))
        if q.top_part(el) != {mono: q.F.one} or q.degree(el) != p * degs[k]:
            top_law = False
    w = WAlgebra(fr, max(D, max((degs[k] for k in pure), default=0)), q)
    rows = []
    independent = True
    counts_match = True
    ech = Echelon()

    def zmono(letters, E):
        out = q.one()
        for k, a in zip(letters, E):
            for _ in range(a):
                out = q.mul(zp[k], out)
        return out

    def zexps(letters, deg):
        out = []
        for E in itertools.product(*[range(deg // (p * degs[k]) + 1) for k in letters]):
            if sum(a * p * degs[k] for a, k in zip(E, letters)) == deg:
                out.append(E)
        return out

    for d in range(D + 1):
        fam = []
        for dz in range(0, d + 1):
            for E in zexps(a_letters, dz):
                for T in w.theta_exponents(d - dz):
                    fam.append((E, T))
        for E, T in fam:
            el = q.mul(zmono(a_letters, E), w.theta_monomial(T))
            if ech.add(el) is not None:
                independent = False
        # restricted Theta-monomials times p-center monomials in all even p~ letters
        alt = 0
        for dz in range(0, d + 1):
            nz = len(zexps(even_pt, dz))
            if nz:
                alt += nz * sum(1 for T in w.theta_exponents(d - dz)
                                if all(a < p for a, par in zip(T, w.gpar) if not par))
        counts_match = counts_match and alt == len(fam)
        rows.append({"degree": d, "family": len(fam), "restricted_count": alt})
    return {"p": p, "D": D, "a_letters": [fr.letter_names[k] for k in a_letters],
            "rows": rows, "independent": independent, "counts_match": counts_match,
            "top_term_law": top_law, "rank": p ** fr.l * 2 ** (fr.q + (1 if fr.r_odd else 0)),
            "note": f"verified to degree {D}"}
