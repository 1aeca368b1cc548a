"""sl2-triples, Dynkin gradings, symplectic/symmetric frames of g(-1) and the
subspaces m, m', p, p~ attached to an even nilpotent element."""
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra_data import LieSuperalgebra, change_basis, mat_zero
from .fields import QQ, QuadElt, is_rational_square, squarefree_part
from .linalg import Echelon, kernel, matvec, nullspace, same_span, solve, to_dense


def _sparse(v):
    return {i: c for i, c in enumerate(v) if c}


def _lin(alg, coeffs, vecs):
    out = alg.zero()
    for c, v in zip(coeffs, vecs):
        if c:
            out = [a + c * b for a, b in zip(out, v)]
    return out


def is_zero(v):
    return not any(v)


def ad_nilpotent(alg, x):
    A = alg.ad_matrix(x)
    P = A
    for _ in range(alg.dim):
        if all(not c for r in P for c in r):
            return True
        P = [[sum((r[k] * A[k][j] for k in range(alg.dim) if r[k] and A[k][j]), alg.field.zero)
              for j in range(alg.dim)] for r in P]
    return all(not c for r in P for c in r)


@dataclass
class SL2Triple:
    e: list
    h: list
    f: list
    form_scale: object = 1
    degenerate: bool = False


def _diagonal_indices(alg):
    """Even basis elements whose adjoint action is diagonal in the basis."""
    out = []
    for i in range(alg.dim):
        if alg.parities[i]:
            continue
        if all(set(alg.bracket_basis(i, j)) <= {j} for j in range(alg.dim)):
            out.append(i)
    return out


def complete_sl2(alg, e):
    """Find h, f with [h,e]=2e, [e,f]=h, [h,f]=-2f by linear solves.

    The invariant form is rescaled (form_scale) so that (e, f) = 1."""
    F = alg.field
    if is_zero(e):
        return SL2Triple(alg.zero(), alg.zero(), alg.zero(), F.one, True)
    if alg.parity_of(e) != 0:
        raise ValueError("e must be even")
    if not ad_nilpotent(alg, e):
        raise ValueError("e is not ad-nilpotent")
    even = [i for i in range(alg.dim) if not alg.parities[i]]
    d = alg.dim
    two_e = [2 * c for c in e]
    h = None
    diag = _diagonal_indices(alg)
    if diag:
        # unknowns: z (even part) and t (coefficients of h on diagonal basis)
        nz = len(even)
        cols = []
        for i in even:
            c = alg.bracket(e, alg.unit(i))
            cols.append(c + alg.zero())
        for i in diag:
            u = alg.unit(i)
            cols.append([-x for x in u] + alg.bracket(u, e))
        rows = [[col[r] for col in cols] for r in range(2 * d)]
        sol = solve(rows, alg.zero() + two_e, len(cols), F.zero)
        if sol is not None:
            h = _lin(alg, sol[nz:], [alg.unit(i) for i in diag])
    if h is None:
        # [e,[e,z]] = -2e for z even; h = [e,z]
        cols = [alg.bracket(e, alg.bracket(e, alg.unit(i))) for i in even]
        rows = [[col[r] for col in cols] for r in range(d)]
        sol = solve(rows, [-c for c in two_e], len(cols), F.zero)
        if sol is None:
            raise ValueError("no rational h found for this nilpotent")
        z = _lin(alg, sol, [alg.unit(i) for i in even])
        h = alg.bracket(e, z)
    # f: [e,f] = h and [h,f] + 2f = 0
    cols = []
    for i in even:
        u = alg.unit(i)
        hu = alg.bracket(h, u)
        cols.append(alg.bracket(e, u) + [a + 2 * b for a, b in zip(hu, u)])
    rows = [[col[r] for col in cols] for r in range(2 * d)]
    sol = solve(rows, h + alg.zero(), len(cols), F.zero)
    if sol is None:
        raise ValueError("no rational f found for this nilpotent")
    f = _lin(alg, sol, [alg.unit(i) for i in even])
    kappa = alg.form(e, f)
    if not kappa:
        raise ValueError("(e, f) = 0: the form is degenerate on this triple")
    return SL2Triple(e, h, f, F.one / kappa, False)


def check_triple(alg, t):
    two = lambda v: [2 * c for c in v]
    return (alg.bracket(t.h, t.e) == two(t.e) and alg.bracket(t.e, t.f) == t.h
            and alg.bracket(t.h, t.f) == [-c for c in two(t.f)])


@dataclass
class DynkinGrading:
    components: dict   # i -> list of basis vectors (even ones first)
    parities: dict     # i -> list of parities

    def degrees(self):
        return sorted(self.components)

    def basis(self, i, parity=None):
        vs = self.components.get(i, [])
        ps = self.parities.get(i, [])
        return [v for v, p in zip(vs, ps) if parity is None or p == parity]

    def dims(self, i):
        ps = self.parities.get(i, [])
        return (ps.count(0), ps.count(1))


def _restricted_nullspace(alg, A, idx):
    """Nullspace of the square matrix A restricted to the coordinates idx."""
    rows = [[A[r][j] for j in idx] for r in range(len(A))]
    out = []
    for v in nullspace(rows, len(idx), alg.field.zero):
        w = alg.zero()
        for j, c in zip(idx, v):
            w[j] = c
        out.append(w)
    return out


def dynkin_grading(alg, h):
    F = alg.field
    A = alg.ad_matrix(h)
    d = alg.dim
    comps, pars = {}, {}
    found = 0
    even = [i for i in range(d) if not alg.parities[i]]
    odd = [i for i in range(d) if alg.parities[i]]
    bound = 4 * d + 4
    for k in range(bound):
        for i in ([0] if k == 0 else [k, -k]):
            Ai = [[A[r][c] - (F(i) if r == c else 0) for c in range(d)] for r in range(d)]
            vs = []
            ps = []
            for par, idx in ((0, even), (1, odd)):
                for v in _restricted_nullspace(alg, Ai, idx):
                    vs.append(v)
                    ps.append(par)
            if vs:
                comps[i], pars[i] = vs, ps
                found += len(vs)
        if found == d:
            return DynkinGrading(comps, pars)
    raise ValueError("ad h is not diagonalizable with integer eigenvalues")


def check_grading(alg, gr):
    allv = [v for i in gr.degrees() for v in gr.components[i]]
    ok_partition = len(allv) == alg.dim and len(Echelon_of(allv)) == alg.dim
    ok_bracket = True
    ok_form = True
    for i in gr.degrees():
        for j in gr.degrees():
            target = gr.components.get(i + j, [])
            ech = Echelon_of(target)
            for x in gr.components[i]:
                for y in gr.components[j]:
                    b = alg.bracket(x, y)
                    if any(b) and not ech.contains(_sparse(b)):
                        ok_bracket = False
                    if i + j != 0 and alg.form(x, y):
                        ok_form = False
    return {"partition": ok_partition, "bracket": ok_bracket, "form": ok_form}


def Echelon_of(vectors):
    ech = Echelon()
    for v in vectors:
        ech.add(_sparse(v))
    return ech


def centralizer(alg, x, within=None):
    """Graded basis of {y : [x, y] = 0} (x homogeneous), optionally inside a span."""
    F = alg.field
    if within is None:
        A = alg.ad_matrix(x)
        if alg.parity_of(x) == 0:
            out = []
            for par in (0, 1):
                idx = [i for i in range(alg.dim) if alg.parities[i] == par]
                out += _restricted_nullspace(alg, A, idx)
            return out
        return [v for v in nullspace(A, alg.dim, F.zero)]
    cols = [_sparse(alg.bracket(x, w)) for w in within]
    return [_lin(alg, to_dense(k, len(within), F.zero), within) for k in kernel(cols, F.one)]


@dataclass
class NilpotentFrame:
    alg: LieSuperalgebra           # algebra with the rescaled form
    triple: SL2Triple
    grading: DynkinGrading
    chi: list                      # chi(b_i) = (e, b_i) on the original basis
    u_frame: list
    v_frame: list
    v_consts: list                 # <v_i, v_{r+1-i}> = v_consts[i-1]
    x_basis: list
    y_basis: list
    x_weights: list
    y_weights: list
    l: int
    q: int
    s: int
    r: int
    m_basis: list
    m_weights: list
    letters: list = dc_field(default_factory=list)
    letter_names: list = dc_field(default_factory=list)
    letter_weights: list = dc_field(default_factory=list)
    letter_parities: list = dc_field(default_factory=list)
    n_ptilde: int = 0
    falg: LieSuperalgebra = None   # the algebra written in the letter basis
    fchi: list = None              # chi on the letter basis

    @property
    def t(self):
        return self.r // 2

    @property
    def tprime(self):
        return (self.r + 1) // 2

    @property
    def c(self):
        """Pairing constant of the middle odd vector (r odd)."""
        return self.v_consts[(self.r - 1) // 2] if self.r % 2 else None

    @property
    def d0(self):
        return self.alg.dims[0] - self.l

    @property
    def d1(self):
        return self.alg.dims[1] - self.q

    @property
    def r_odd(self):
        return self.r % 2 == 1

    @property
    def m_count(self):
        return len(self.x_basis)

    @property
    def n_count(self):
        return len(self.y_basis)

    @property
    def ge_basis(self):
        return self.x_basis[:self.l] + self.y_basis[:self.q]

    @property
    def mprime_basis(self):
        if self.r_odd:
            return self.m_basis + [self.v_frame[(self.r - 1) // 2]]
        return list(self.m_basis)

    @property
    def p_basis(self):
        return self.x_basis + self.y_basis

    @property
    def ptilde_basis(self):
        return self.letters[:self.n_ptilde]

    def letter_kind(self, k):
        """('x'|'y'|'u'|'v'|'m', index within block starting at 1)."""
        return self._kinds[k]

    def pure_letters(self):
        """Letters allowed in the pure part: x_1..x_l, y_1..y_q and the middle v."""
        out = list(range(self.l)) + [self.m_count + j for j in range(self.q)]
        if self.r_odd:
            out.append(self.n_ptilde - 1)
        return out

    def generator_letters(self):
        """Leading symbols Y_k of the generators, as letter indices."""
        return self.pure_letters()

    def counters(self):
        return {"s": self.s, "r": self.r, "t": self.t, "tprime": self.tprime,
                "l": self.l, "q": self.q, "m": self.m_count, "n": self.n_count,
                "d0": self.d0, "d1": self.d1, "r_parity": "odd" if self.r_odd else "even"}


def _pairing(alg, chi, x, y):
    b = alg.bracket(x, y)
    return sum((c * w for c, w in zip(b, chi) if c and w), alg.field.zero)


def _symplectic_frame(alg, chi, W):
    """Pairs (a_k, b_k) with <a_k, b_k> = -1, mutually orthogonal."""
    W = [w for w in W]
    pairs = []
    while W:
        a = W.pop(0)
        k = next((i for i, w in enumerate(W) if _pairing(alg, chi, a, w)), None)
        if k is None:
            raise ValueError("<.,.> is degenerate on g(-1)_even")
        b = W.pop(k)
        ab = _pairing(alg, chi, a, b)
        b = [-c / ab for c in b]
        newW = []
        for w in W:
            al = _pairing(alg, chi, w, b)
            be = -_pairing(alg, chi, w, a)
            w2 = [x + al * y + be * z for x, y, z in zip(w, a, b)]
            if any(w2):
                newW.append(w2)
        W = _independent(newW)
        pairs.append((a, b))
    return pairs


def _independent(vs):
    ech = Echelon()
    out = []
    for v in vs:
        if ech.add(_sparse(v)) is None:
            out.append(v)
    return out


def _isotropic(alg, chi, W):
    F = alg.field
    for w in W:
        if not _pairing(alg, chi, w, w):
            return w
    for i in range(len(W)):
        for j in range(i + 1, len(W)):
            A = _pairing(alg, chi, W[i], W[i])
            B = _pairing(alg, chi, W[i], W[j])
            C = _pairing(alg, chi, W[j], W[j])
            disc = B * B - A * C
            root = _field_sqrt(F, disc)
            if root is not None:
                # A + 2tB + t^2 C = 0
                t = (-B + root) / C
                return [x + t * y for x, y in zip(W[i], W[j])]
    return None


def _field_sqrt(F, x):
    if F.kind == "Q":
        x = Fraction(x)
        if is_rational_square(x):
            from math import isqrt
            return Fraction(isqrt(x.numerator), isqrt(x.denominator))
        return None
    if F.kind == "Fp":
        for y in range(F.p):
            if F(y) * F(y) == x:
                return F(y)
        return None
    if isinstance(x, QuadElt) and x.b:
        return None
    a = x.a if isinstance(x, QuadElt) else Fraction(x)
    r = _field_sqrt(QQ, a)
    if r is not None:
        return F(r)
    ratio = a / F.q
    r = _field_sqrt(QQ, ratio)
    if r is not None:
        return F.sqrt() * r
    return None


def _symmetric_frame(alg, chi, W, normalize):
    F = alg.field
    W = list(W)
    pairs = []
    while len(W) >= 2:
        a = _isotropic(alg, chi, W)
        if a is None:
            raise ValueError("no isotropic vector in g(-1)_odd over this field; "
                             "enable a quadratic extension")
        b = next((w for w in W if _pairing(alg, chi, a, w)), None)
        ab = _pairing(alg, chi, a, b)
        b = [c / ab for c in b]
        bb = _pairing(alg, chi, b, b)
        b = [y - bb / 2 * x for x, y in zip(a, b)]
        rest = []
        for w in W:
            w2 = [z - _pairing(alg, chi, w, b) * x - _pairing(alg, chi, w, a) * y
                  for z, x, y in zip(w, a, b)]
            if any(w2):
                rest.append(w2)
        W = _independent(rest)
        pairs.append((a, b))
    mid = None
    cmid = None
    if W:
        mid = W[0]
        c = _pairing(alg, chi, mid, mid)
        if not c:
            raise ValueError("<.,.> is degenerate on g(-1)_odd")
        if F.kind == "Q":
            sf, rr = squarefree_part(c)
            mid = [x / rr for x in mid]
        elif F.kind == "quad" and normalize:
            root = _field_sqrt(F, c)
            if root is None:
                raise ValueError("the chosen quadratic extension does not contain sqrt(c)")
            mid = [x / root for x in mid]
        cmid = _pairing(alg, chi, mid, mid)
    return pairs, mid, cmid


def build_frame(alg, triple, normalize=False):
    """Assemble the frame data; the form is rescaled so that (e, f) = 1."""
    F = alg.field
    if triple.form_scale != 1:
        alg = alg.scaled_form(triple.form_scale)
    e, h, f = triple.e, triple.h, triple.f
    gr = dynkin_grading(alg, h) if not triple.degenerate else \
        DynkinGrading({0: [alg.unit(i) for i in _by_parity(alg)]},
                      {0: [alg.parities[i] for i in _by_parity(alg)]})
    chi = [alg.form(e, alg.unit(i)) for i in range(alg.dim)]
    u_pairs = _symplectic_frame(alg, chi, gr.basis(-1, 0))
    s = len(u_pairs)
    u_frame = [a for a, _ in u_pairs] + [b for _, b in reversed(u_pairs)]
    v_pairs, mid, cmid = _symmetric_frame(alg, chi, gr.basis(-1, 1), normalize)
    t = len(v_pairs)
    v_frame = [a for a, _ in v_pairs] + ([mid] if mid is not None else []) + \
        [b for _, b in reversed(v_pairs)]
    r = len(v_frame)
    v_consts = [F.one] * t + ([cmid] if mid is not None else []) + [F.one] * t
    # centralizer pieces and complements, degree by degree (degrees >= 0)
    xg, xw, yg, yw, xc, xcw, yc, ycw = [], [], [], [], [], [], [], []
    pos = [i for i in gr.degrees() if i >= 0]
    comp = {}
    for j in gr.degrees():
        if j >= 2:
            for w in gr.components[j]:
                comp.setdefault(j - 2, []).append(alg.bracket(f, w))
    for i in pos:
        for par, gl, gw, cl, cw in ((0, xg, xw, xc, xcw), (1, yg, yw, yc, ycw)):
            base = gr.basis(i, par)
            if not base:
                continue
            cen = centralizer(alg, e, within=base) if not triple.degenerate else base
            gl += cen
            gw += [i] * len(cen)
            img = [v for v in comp.get(i, []) if alg.parity_of(v) == par and any(v)] \
                if comp.get(i) else []
            img = _independent(img)
            cl += img
            cw += [i] * len(img)
    l, q = len(xg), len(yg)
    x_basis, y_basis = xg + xc, yg + yc
    x_weights, y_weights = xw + xcw, yw + ycw
    m_basis, m_weights = [], []
    for i in gr.degrees():
        if i <= -2:
            m_basis += gr.components[i]
            m_weights += [i] * len(gr.components[i])
    m_basis += u_frame[s:]
    m_weights += [-1] * s
    tp = (r + 1) // 2
    m_basis += v_frame[tp:]
    m_weights += [-1] * (r - tp)
    fr = NilpotentFrame(alg, triple, gr, chi, u_frame, v_frame, v_consts, x_basis, y_basis,
                        x_weights, y_weights, l, q, s, r, m_basis, m_weights)
    letters, names, weights, kinds = [], [], [], []
    for k, (v, w) in enumerate(zip(x_basis, x_weights)):
        letters.append(v), names.append(f"x{k + 1}"), weights.append(w), kinds.append(("x", k + 1))
    for k, (v, w) in enumerate(zip(y_basis, y_weights)):
        letters.append(v), names.append(f"y{k + 1}"), weights.append(w), kinds.append(("y", k + 1))
    for k in range(s):
        letters.append(u_frame[k]), names.append(f"u{k + 1}"), weights.append(-1), kinds.append(("u", k + 1))
    for k in range(tp):
        letters.append(v_frame[k]), names.append(f"v{k + 1}"), weights.append(-1), kinds.append(("v", k + 1))
    fr.n_ptilde = len(letters)
    for k, (v, w) in enumerate(zip(m_basis, m_weights)):
        letters.append(v), names.append(f"z{k + 1}"), weights.append(w), kinds.append(("m", k + 1))
    if len(letters) != alg.dim:
        raise ValueError("frame letters do not form a basis")
    fr.letters, fr.letter_names, fr.letter_weights = letters, names, weights
    fr.letter_parities = [alg.parity_of(v) for v in letters]
    fr._kinds = kinds
    fr.falg = change_basis(alg, letters, names, alg.tag + " [frame basis]")
    fr.fchi = [alg.form(e, v) for v in letters]
    return fr


def _by_parity(alg):
    return [i for i in range(alg.dim) if not alg.parities[i]] + \
        [i for i in range(alg.dim) if alg.parities[i]]


def frame_for(alg, e, normalize=False):
    return build_frame(alg, complete_sl2(alg, e), normalize)


# ---------------------------------------------------------------- checks

def check_u_frame(fr):
    s = fr.s
    for i in range(2 * s):
        for j in range(2 * s):
            want = 0
            if i + j + 2 == 2 * s + 1:
                want = -1 if i < s else 1
            if _pairing(fr.alg, fr.chi, fr.u_frame[i], fr.u_frame[j]) != want:
                return False
    return True


def check_v_frame(fr):
    r = fr.r
    for i in range(r):
        for j in range(r):
            want = fr.v_consts[i] if i + j + 2 == r + 1 else 0
            if _pairing(fr.alg, fr.chi, fr.v_frame[i], fr.v_frame[j]) != want:
                return False
    return all(c for c in fr.v_consts)


def check_chi_odd(fr):
    return all(not c for c, p in zip(fr.chi, fr.alg.parities) if p)


def check_m_perp(fr):
    """m-perp = [m', e] + g^f as a direct sum."""
    alg = fr.alg
    e, f = fr.triple.e, fr.triple.f
    rows = [[alg.form(alg.unit(i), x) for i in range(alg.dim)] for x in fr.m_basis]
    mperp = nullspace(rows, alg.dim, alg.field.zero) if rows else [alg.unit(i) for i in range(alg.dim)]
    part1 = _independent([alg.bracket(x, e) for x in fr.mprime_basis])
    gf = centralizer(alg, f)
    direct = len(_independent(part1 + gf)) == len(part1) + len(gf)
    return direct and same_span([_sparse(v) for v in mperp], [_sparse(v) for v in part1 + gf])


def check_p_decomposition(fr):
    """p = sum_{j>=2} [f, g(j)] + g^e as a direct sum."""
    alg = fr.alg
    comp = []
    for j in fr.grading.degrees():
        if j >= 2:
            comp += [alg.bracket(fr.triple.f, w) for w in fr.grading.components[j]]
    comp = _independent([c for c in comp if any(c)])
    ge = fr.ge_basis
    direct = len(_independent(comp + ge)) == len(comp) + len(ge)
    p = [v for j in fr.grading.degrees() if j >= 0 for v in fr.grading.components[j]]
    return direct and same_span([_sparse(v) for v in p], [_sparse(v) for v in comp + ge])


def check_dimension_identity(fr):
    """dim g - dim g^e = sum_{k>=2} 2 dim g(-k) + dim g(-1), per parity."""
    gr = fr.grading
    for par, ge in ((0, fr.l), (1, fr.q)):
        lhs = fr.alg.dims[par] - ge
        rhs = sum(2 * len(gr.basis(k, par)) for k in gr.degrees() if k <= -2) + len(gr.basis(-1, par))
        if lhs != rhs:
            return False
    return True


def check_e_surjective(fr):
    """[e, g(i)] = g(i+2) for i >= -1."""
    alg, gr = fr.alg, fr.grading
    top = max(gr.degrees())
    for i in range(-1, top + 1):
        img = [_sparse(alg.bracket(fr.triple.e, v)) for v in gr.components.get(i, [])]
        img = [v for v in img if v]
        tgt = [_sparse(v) for v in gr.components.get(i + 2, [])]
        if not same_span(img, tgt):
            return False
    return True


def check_ge_nonnegative(fr):
    return all(w >= 0 for w in fr.x_weights[:fr.l] + fr.y_weights[:fr.q])


def check_parity_r_d1(fr):
    return fr.d1 % 2 == fr.r % 2


def frame_report(fr):
    rep = dict(check_grading(fr.alg, fr.grading))
    rep.update({"triple": check_triple(fr.alg, fr.triple) or fr.triple.degenerate,
                "e_f_pairing": fr.triple.degenerate or fr.alg.form(fr.triple.e, fr.triple.f) == 1,
                "u_frame": check_u_frame(fr), "v_frame": check_v_frame(fr),
                "chi_odd_zero": check_chi_odd(fr), "m_perp": check_m_perp(fr),
                "p_decomposition": check_p_decomposition(fr),
                "dimension_identity": check_dimension_identity(fr),
                "e_surjective": check_e_surjective(fr), "ge_nonnegative": check_ge_nonnegative(fr),
                "r_d1_parity": check_parity_r_d1(fr)})
    return rep


# ---------------------------------------------------------------- restricted roots

def _eigen_split(alg, A, basis):
    """Split span(basis) (A-stable) into eigenspaces of A; eigenvalues must be in the field."""
    import sympy
    F = alg.field
    if not basis:
        return {}
    # matrix of A restricted to span(basis)
    ech = Echelon()
    for k, b in enumerate(basis):
        ech.add(_sparse(b), tag=k)
    n = len(basis)
    R = [[F.zero] * n for _ in range(n)]
    for k, b in enumerate(basis):
        img = matvec(A, b)
        combo = ech.express(_sparse(img))
        if combo is None:
            raise ValueError("subspace not stable")
        for t, c in combo.items():
            R[t][k] = c
    if F.kind != "Q":
        raise ValueError("restricted roots are computed over Q")
    M = sympy.Matrix(n, n, lambda i, j: sympy.Rational(R[i][j].numerator, R[i][j].denominator))
    out = {}
    total = 0
    for ev in M.eigenvals():
        if not ev.is_rational:
            raise ValueError("non-rational eigenvalue")
        lam = Fraction(int(ev.p), int(ev.q))
        rows = [[R[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        vs = nullspace(rows, n, F.zero)
        total += len(vs)
        out[lam] = [_lin(alg, v, basis) for v in vs]
    if total != n:
        raise ValueError("element is not ad-diagonalizable")
    return out


def simultaneous_weights(alg, te_basis, basis):
    pieces = {(): list(basis)}
    for t in te_basis:
        A = alg.ad_matrix(t)
        new = {}
        for w, vs in pieces.items():
            for lam, sub in _eigen_split(alg, A, vs).items():
                new[w + (lam,)] = sub
        pieces = new
    return pieces


def restricted_roots(alg, frame, te_basis):
    """Weights of ad t^e on g and on g^e, with multiplicities."""
    for t in te_basis:
        for t2 in te_basis:
            if any(alg.bracket(t, t2)):
                raise ValueError("te_basis elements do not commute")
    on_g = simultaneous_weights(alg, te_basis, [alg.unit(i) for i in range(alg.dim)])
    on_ge = simultaneous_weights(alg, te_basis, frame.ge_basis)
    return {"g": {w: len(v) for w, v in on_g.items()},
            "ge": {w: len(v) for w, v in on_ge.items()},
            "g_spaces": on_g, "ge_spaces": on_ge,
            "weight_sets_equal": set(on_g) == set(on_ge)}


# ---------------------------------------------------------------- Jordan and Levi

def jordan_decompose(alg, x):
    """x = s + n with s semisimple, n nilpotent, both polynomials in x.

    Uses Newton iteration on the squarefree part of the characteristic
    polynomial, so no field extension is ever needed."""
    import sympy
    if alg.matrices is None:
        raise ValueError("jordan_decompose needs a matrix realization")
    if alg.field.kind != "Q":
        raise ValueError("jordan_decompose works over Q")
    X = alg.matrix_of(x)
    N = len(X)
    M = sympy.Matrix(N, N, lambda i, j: sympy.Rational(X[i][j].numerator, X[i][j].denominator))
    lam = sympy.Symbol("lam")
    P = M.charpoly(lam).as_expr()
    Q = sympy.Poly(sympy.quo(P, sympy.gcd(P, sympy.diff(P, lam))), lam)
    dQ = Q.diff(lam)

    def ev(poly, A):
        out = sympy.zeros(N, N)
        for c in poly.all_coeffs():
            out = out * A + c * sympy.eye(N)
        return out

    S = M
    for _ in range(2 * N + 2):
        QS = ev(Q, S)
        if QS.is_zero_matrix:
            break
        S = S - QS * ev(dQ, S).inv()
    else:
        raise ValueError("Newton iteration did not converge")
    to_frac = lambda v: Fraction(int(v.p), int(v.q))
    Smat = [[to_frac(S[i, j]) for j in range(N)] for i in range(N)]
    s = alg.coords_of_matrix(Smat)
    if s is None:
        raise ValueError("semisimple part is not in the algebra")
    n = [a - b for a, b in zip(x, s)]
    return s, n


def _subalgebra(alg, vectors, names, tag):
    """Structure constants of a subalgebra spanned by vectors (closed under bracket)."""
    ech = Echelon()
    for k, v in enumerate(vectors):
        ech.add(_sparse(v), tag=k)
    table = {}
    for i, a in enumerate(vectors):
        for j, b in enumerate(vectors):
            br = alg.bracket(a, b)
            if any(br):
                combo = ech.express(_sparse(br))
                if combo is None:
                    raise ValueError("not closed under the bracket")
                table[(i, j)] = combo
    gram = [[alg.form(a, b) for b in vectors] for a in vectors]
    sub = LieSuperalgebra(names, [alg.parity_of(v) for v in vectors], table, gram, alg.field, tag=tag)
    sub.embedding = vectors
    return sub


def levi_split(alg, s):
    """Centralizer g^s split into ideal summands of its derived algebra plus its center."""
    L = centralizer(alg, s)
    Lalg = _subalgebra(alg, L, [f"l{k + 1}" for k in range(len(L))], "centralizer")
    # center of L: common kernel of ad b over all b
    rows = []
    for i in range(Lalg.dim):
        A = Lalg.ad_matrix(Lalg.unit(i))
        rows += [[-c for c in r] for r in A]
    # kernel of x -> [x, b_i] for all i  (equivalently [b_i, x] up to sign)
    center_L = nullspace(rows, Lalg.dim, alg.field.zero) if rows else []
    derived = _independent([Lalg.bracket(Lalg.unit(i), Lalg.unit(j))
                            for i in range(Lalg.dim) for j in range(Lalg.dim)])
    derived = [v for v in derived if any(v)]
    # connected components of the bracket-adjacency graph on the derived basis
    n = len(derived)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    ech = Echelon()
    for k, v in enumerate(derived):
        ech.add(_sparse(v), tag=k)
    for i in range(n):
        for j in range(n):
            br = Lalg.bracket(derived[i], derived[j])
            if any(br):
                parent[find(i)] = find(j)
                for k in ech.express(_sparse(br)) or {}:
                    parent[find(k)] = find(i)
    groups = {}
    for k in range(n):
        groups.setdefault(find(k), []).append(k)
    summands = []
    for gi, (root, ks) in enumerate(sorted(groups.items(), key=lambda kv: kv[1][0])):
        vecs = [_lin(alg, derived[k], L) for k in ks]
        vecs = sorted(vecs, key=lambda v: alg.parity_of(v))
        summands.append(_subalgebra(alg, vecs, [f"s{gi + 1}_{k + 1}" for k in range(len(vecs))],
                                    f"summand {gi + 1}"))
    cvecs = [_lin(alg, v, L) for v in center_L]
    toral = _subalgebra(alg, cvecs, [f"t{k + 1}" for k in range(len(cvecs))], "toral")
    direct = len(_independent([v for sm in summands for v in sm.embedding] + cvecs)) == len(L)
    return {"centralizer": L, "summands": summands, "toral": toral, "direct": direct,
            "dims": {"centralizer": (sum(1 for v in L if alg.parity_of(v) == 0),
                                     sum(1 for v in L if alg.parity_of(v) == 1))}}


def project_to_summand(alg, split, x, k):
    """Component of x (an element of g^s) in the k-th summand."""
    basis = [v for sm in split["summands"] for v in sm.embedding] + split["toral"].embedding
    ech = Echelon()
    for t, v in enumerate(basis):
        ech.add(_sparse(v), tag=t)
    combo = ech.express(_sparse(x))
    if combo is None:
        raise ValueError("element is not in the centralizer decomposition")
    off = sum(sm.dim for sm in split["summands"][:k])
    sm = split["summands"][k]
    return [combo.get(off + i, alg.field.zero) for i in range(sm.dim)]


# ---------------------------------------------------------------- nilpotent specs

def jordan_block_nilpotent(alg, even_blocks, odd_blocks):
    """gl(m|n): principal nilpotents on each Jordan block of the two diagonal blocks."""
    m, n = alg.super_m, alg.super_n
    if sum(even_blocks) != m or sum(odd_blocks) != n:
        raise ValueError("block sizes must partition m and n")
    N = m + n
    mat = mat_zero(N, alg.field.zero)
    pos = 0
    for blocks in (even_blocks, odd_blocks):
        for b in blocks:
            for i in range(b - 1):
                mat[pos + i][pos + i + 1] = alg.field.one
            pos += b
    x = alg.coords_of_matrix(mat)
    if x is None:
        raise ValueError("nilpotent is not in the algebra")
    return x


def nilpotent_from_spec(alg, spec):
    from .algebra_data import osp_principal_nilpotent
    if spec is None or spec == "zero" or spec.get("type") == "zero":
        return alg.zero()
    t = spec.get("type")
    if t == "coeffs":
        return alg.element(spec["coeffs"])
    if t == "principal":
        if alg.tag.startswith("osp"):
            return osp_principal_nilpotent(alg)
        if alg.matrices is not None:
            return jordan_block_nilpotent(alg, [alg.super_m] if alg.super_m else [],
                                          [alg.super_n] if alg.super_n else [])
    if t == "jordan":
        return jordan_block_nilpotent(alg, spec["even"], spec["odd"])
    if t == "matrix":
        mat = [[alg.field(Fraction(str(c))) for c in row] for row in spec["matrix"]]
        x = alg.coords_of_matrix(mat)
        if x is None:
            raise ValueError("matrix is not in the algebra")
        return x
    raise ValueError(f"unknown nilpotent spec {spec!r}")


def reduce_frame(fr, field):
    """The same frame with every vector and constant converted into another field.

    The grading is read off over Q, where the ad h eigenvalues stay distinct."""
    import copy

    def vec(v):
        return [field(c) for c in v]

    def vecs(vs):
        return [vec(v) for v in vs]

    out = copy.copy(fr)
    out.alg = fr.alg.with_field(field)
    for attr in ("param",):
        if hasattr(fr.alg, attr):
            setattr(out.alg, attr, getattr(fr.alg, attr))
    t = fr.triple
    out.triple = SL2Triple(vec(t.e), vec(t.h), vec(t.f), field(t.form_scale), t.degenerate)
    out.grading = DynkinGrading({i: vecs(vs) for i, vs in fr.grading.components.items()},
                                dict(fr.grading.parities))
    out.chi = vec(fr.chi)
    for attr in ("u_frame", "v_frame", "x_basis", "y_basis", "m_basis", "letters"):
        setattr(out, attr, vecs(getattr(fr, attr)))
    out.v_consts = vec(fr.v_consts)
    out.falg = fr.falg.with_field(field)
    out.fchi = vec(fr.fchi)
    return out
