"""The finite W-superalgebra as ad m-invariants of Q_chi, computed degree by degree."""
import itertools
from dataclasses import dataclass, field as dc_field

from .fields import to_json_scalar, scalar_str
from .linalg import Echelon, kernel
from .pbw_engine import _addto, add, chi_context, koszul_sign, scale


class CapTooSmall(ValueError):
    def __init__(self, msg, needed):
        super().__init__(msg)
        self.needed = needed


def _progress(msg):
    import os
    import sys
    if os.environ.get("WSUPER_QUIET") != "1":
        print(msg, file=sys.stderr)


class InvariantSpace:
    """Basis of (Q_chi)^{ad m} up to a Kazhdan degree cap, compatible with the filtration."""

    def __init__(self, frame, D, qctx=None, progress=False):
        self.frame = frame
        self.D = D
        self.q = qctx or chi_context(frame)
        F = self.q.F
        self.monos = []
        for d in range(D + 1):
            self.monos += self.q.monomials(d)
        self.index = {m: k for k, m in enumerate(self.monos)}
        n = self.q.n
        mletters = range(n, frame.falg.dim)
        self.basis = []
        for par in (0, 1):
            cols = []
            idx = [k for k, m in enumerate(self.monos) if self.q.mono_parity(m) == par]
            for k in idx:
                mono = self.monos[k]
                col = {}
                for z in mletters:
                    img = self.q.left_mul(z, mono)
                    cz = frame.fchi[z]
                    for mm, c in img.items():
                        _addto(col, (z, mm), c)
                    if cz:
                        _addto(col, (z, mono), -cz)
                cols.append(col)
            for vec in kernel(cols, F.one):
                elem = {self.monos[idx[j]]: c for j, c in vec.items()}
                top = max(idx[j] for j in vec)
                self.basis.append((top, elem))
            if progress:
                _progress(f"invariants parity {par}: done")
        self.basis.sort(key=lambda t: t[0])
        self.elements = [e for _, e in self.basis]
        self.degrees = [self.q.kazhdan_degree(self.monos[t]) for t, _ in self.basis]

    def dim_filtered(self, d):
        return sum(1 for x in self.degrees if x <= d)

    def per_degree(self):
        return [self.dim_filtered(d) - (self.dim_filtered(d - 1) if d else 0) for d in range(self.D + 1)]

    def upto(self, d):
        return [e for e, x in zip(self.elements, self.degrees) if x <= d]


def invariants_up_to(frame, D, qctx=None):
    return InvariantSpace(frame, D, qctx)


@dataclass
class WGenerator:
    theta: dict
    letter: int        # index of the leading symbol Y_k in the PBW alphabet
    name: str
    weight: int
    parity: int

    @property
    def degree(self):
        return self.weight + 2


def compute_generators(frame, D=None, qctx=None, inv=None):
    """One invariant per Y_k whose projection onto pure monomials (g^e letters
    and the middle odd vector) is exactly Y_k."""
    q = qctx or (inv.q if inv else chi_context(frame))
    letters = frame.generator_letters()
    need = max((q.degrees[i] for i in letters), default=0)
    if D is not None and D < need:
        raise CapTooSmall(f"degree cap {D} below generator degree {need}", need)
    if inv is None or inv.D < need:
        inv = InvariantSpace(frame, need, q)
    pure = set(letters)
    ech = Echelon()
    elems = inv.upto(need)
    for k, el in enumerate(elems):
        proj = {m: c for m, c in el.items() if all(not a or i in pure for i, a in enumerate(m))}
        if ech.add(proj, tag=k) is not None:
            raise ValueError("projection to pure monomials is not injective")
    gens = []
    for i in letters:
        mono = tuple(1 if t == i else 0 for t in range(q.n))
        combo = ech.express({mono: q.F.one})
        if combo is None:
            raise CapTooSmall(f"no invariant with leading symbol {q.names[i]} within degree {need}", need)
        theta = {}
        for k, c in combo.items():
            for m, cc in elems[k].items():
                _addto(theta, m, c * cc)
        gens.append(WGenerator(theta, i, q.names[i], frame.letter_weights[i], frame.letter_parities[i]))
    return gens


def check_leading_terms(q, gens):
    """Top Kazhdan component is Y_k plus terms of strictly lower weight."""
    ok = True
    for g in gens:
        top = q.top_part(g.theta)
        mono = tuple(1 if t == g.letter else 0 for t in range(q.n))
        if q.degree(g.theta) != q.degrees[g.letter] or top.get(mono) != 1:
            ok = False
        for m in top:
            if m != mono and q.weight(m) >= g.weight:
                ok = False
    return ok


def check_vanishing(frame, q, gens):
    """Lower terms avoid pure monomials."""
    pure = set(frame.generator_letters())
    for g in gens:
        for m in g.theta:
            if sum(m) == 1 and m[g.letter] == 1:
                continue
            if all(not a or i in pure for i, a in enumerate(m)):
                return False
    return True


def check_invariance(frame, q, elems):
    n = q.n
    for el in elems:
        for z in range(n, frame.falg.dim):
            img = q.mul_letter(z, el)
            cz = frame.fchi[z]
            if cz:
                img = add(img, el, -cz)
            if img:
                return False
    return True


class WAlgebra:
    """Generators, Theta-monomials and relations of U(g, e) up to a degree cap."""

    def __init__(self, frame, D, qctx=None, progress=False):
        self.frame = frame
        self.q = qctx or chi_context(frame)
        self.D = D
        self.progress = progress
        self.inv = InvariantSpace(frame, D, self.q, progress)
        self.gens = compute_generators(frame, D, self.q, self.inv)
        self.N = len(self.gens)
        self.gdeg = [g.degree for g in self.gens]
        self.gpar = [g.parity for g in self.gens]
        self._mono_cache = {(0,) * self.N: self.q.one()}

    # Theta monomials, ordered Theta_1^{e_1} ... Theta_N^{e_N}
    def theta_exponents(self, deg):
        out = []
        cur = [0] * self.N

        def rec(k, left):
            if k == self.N:
                if left == 0:
                    out.append(tuple(cur))
                return
            d = self.gdeg[k]
            top = 1 if self.gpar[k] else left // d
            for a in range(min(top, left // d) + 1):
                cur[k] = a
                rec(k + 1, left - a * d)
            cur[k] = 0

        rec(0, deg)
        return sorted(out)

    def theta_monomial(self, E):
        E = tuple(E)
        hit = self._mono_cache.get(E)
        if hit is not None:
            return hit
        i = next(k for k, a in enumerate(E) if a)
        rest = list(E)
        rest[i] -= 1
        val = self.q.mul(self.gens[i].theta, self.theta_monomial(rest))
        self._mono_cache[E] = val
        return val

    def theta_degree(self, E):
        return sum(a * d for a, d in zip(E, self.gdeg))

    def pbw_check(self, D=None):
        """Per degree: Theta-monomial count, Hilbert series, invariant dimension, independence."""
        D = self.D if D is None else D
        ech = Echelon()
        rows = []
        independent = True
        for d in range(D + 1):
            exps = self.theta_exponents(d)
            for E in exps:
                if ech.add(self.theta_monomial(E), tag=E) is not None:
                    independent = False
            inv_dim = self.inv.dim_filtered(d) - (self.inv.dim_filtered(d - 1) if d else 0) \
                if d <= self.inv.D else None
            rows.append({"degree": d, "theta_monomials": len(exps), "hilbert": hilbert_coefficient(
                self.gdeg, self.gpar, d), "invariants": inv_dim, "rank_so_far": len(ech)})
            if self.progress:
                _progress(f"pbw check degree {d}: {len(exps)} monomials")
        spans = all(ech.contains(e) for e in self.inv.upto(D))
        match = all(r["theta_monomials"] == r["hilbert"] and
                    (r["invariants"] is None or r["invariants"] == r["hilbert"]) for r in rows)
        return {"rows": rows, "independent": independent, "spans_invariants": spans,
                "match": match and independent and spans}

    def _theta_basis(self, d):
        ech = Echelon()
        for dd in range(d + 1):
            for E in self.theta_exponents(dd):
                ech.add(self.theta_monomial(E), tag=E)
        return ech

    def express(self, elem, d):
        """Write an invariant of degree <= d as a polynomial in the Thetas."""
        ech = self._theta_basis(d)
        return ech.express(elem)

    def commutator(self, i, j):
        a, b = self.gens[i].theta, self.gens[j].theta
        s = -1 if self.gpar[i] and self.gpar[j] else 1
        return add(self.q.mul(a, b), self.q.mul(b, a), -s)

    def commutator_table(self):
        pairs = [(i, j) for i in range(self.N) for j in range(i, self.N) if i < j or self.gpar[i]]
        need = max((max(self.gdeg[i] + self.gdeg[j] - 2, 0) for i, j in pairs), default=0)
        if need > self.D:
            raise CapTooSmall(f"relations need degree cap {need}", need)
        ech = self._theta_basis(need)
        F = {}
        for i, j in pairs:
            c = self.commutator(i, j)
            combo = ech.express(c)
            if combo is None:
                raise CapTooSmall(f"[Theta_{i + 1}, Theta_{j + 1}] not closed", need + 1)
            F[(i, j)] = combo
            if self.progress:
                _progress(f"relation ({i + 1},{j + 1}) done")
        return RelationTable(self, F, ge_structure_constants(self))


def hilbert_coefficient(degs, pars, d):
    """Coefficient of t^d in prod 1/(1-t^deg) (even) * (1+t^deg) (odd)."""
    coeffs = [0] * (d + 1)
    coeffs[0] = 1
    for deg, par in zip(degs, pars):
        if deg <= 0:
            continue
        if par:
            for k in range(d, deg - 1, -1):
                coeffs[k] += coeffs[k - deg]
        else:
            for k in range(deg, d + 1):
                coeffs[k] += coeffs[k - deg]
    return coeffs[d]


def ge_structure_constants(w):
    """alpha[(i, j)] = {k: c} with [Y_i, Y_j] = sum c Y_k for generators coming from g^e."""
    fr = w.frame
    lq = fr.l + fr.q
    letter_to_gen = {g.letter: k for k, g in enumerate(w.gens[:lq])}
    alpha = {}
    for i in range(lq):
        for j in range(lq):
            br = fr.falg.bracket_basis(w.gens[i].letter, w.gens[j].letter)
            if any(k not in letter_to_gen for k, c in br.items() if c):
                raise ValueError("g^e is not closed under the bracket in the frame basis")
            alpha[(i, j)] = {letter_to_gen[k]: c for k, c in br.items() if c}
    return alpha


@dataclass
class RelationTable:
    w: WAlgebra
    F: dict
    alpha: dict

    def leading_report(self):
        """Top-degree part of F_ij against sum alpha Theta_k; constant/linear part of q_ij;
        and whether the degree m_i+m_j+1 part vanishes (refined congruence)."""
        w = self.w
        lq = w.frame.l + w.frame.q
        out = {}
        for (i, j), poly in self.F.items():
            top = w.gdeg[i] + w.gdeg[j] - 2
            top_part = {E: c for E, c in poly.items() if w.theta_degree(E) == top}
            linear = {E.index(1): c for E, c in top_part.items() if sum(E) == 1}
            constant = top_part.get((0,) * w.N)
            alpha_ok = None
            if i < lq and j < lq:
                want = {k: c for k, c in self.alpha[(i, j)].items()}
                alpha_ok = linear == want and not constant
            mid = [E for E in poly if w.theta_degree(E) == top - 1]
            out[(i, j)] = {"alpha_ok": alpha_ok, "refined": not mid}
        return out

    def check_leading(self):
        rep = self.leading_report()
        return all(v["alpha_ok"] in (True, None) for v in rep.values())

    def check_refined(self):
        return all(v["refined"] for v in self.leading_report().values())

    def check_antisymmetry(self):
        w = self.w
        for i in range(w.N):
            for j in range(w.N):
                a = w.commutator(i, j)
                b = w.commutator(j, i)
                s = -1 if w.gpar[i] and w.gpar[j] else 1
                if add(a, b, s):
                    return False
        return True

    def odd_extra_constant(self):
        w = self.w
        if not w.frame.r_odd:
            return None
        k = w.N - 1
        return self.F[(k, k)]

    def to_text(self):
        w = self.w
        lines = []
        for (i, j), poly in sorted(self.F.items()):
            lines.append(f"[T{i + 1}, T{j + 1}] = {poly_text(poly, w)}")
        return "\n".join(lines)

    def to_json(self):
        w = self.w
        return {f"{i + 1},{j + 1}": [[list(E), to_json_scalar(c)] for E, c in sorted(poly.items())]
                for (i, j), poly in sorted(self.F.items())}


def poly_text(poly, w):
    if not poly:
        return "0"
    parts = []
    for E in sorted(poly, key=lambda E: (-w.theta_degree(E), E)):
        mono = " ".join(f"T{k + 1}^{a}" if a > 1 else f"T{k + 1}" for k, a in enumerate(E) if a)
        parts.append(f"{scalar_str(poly[E])} * {mono}" if mono else scalar_str(poly[E]))
    return " + ".join(parts)


# ---------------------------------------------------------------- sigma and weights

def check_sigma_generators(w):
    """sigma(Theta_k) = (-1)^{deg Y_k} Theta_k."""
    for g in w.gens:
        sg = w.q.sigma(g.theta)
        want = g.theta if g.degree % 2 == 0 else scale(g.theta, -1)
        if add(sg, want, -1):
            return False
    return True


def check_sigma_multiplicative(w, pairs=None):
    q = w.q
    gens = [g.theta for g in w.gens]
    for a in gens:
        for b in gens:
            lhs = q.sigma(q.mul(a, b))
            rhs = q.mul(q.sigma(a), q.sigma(b))
            if add(lhs, rhs, -1):
                return False
    return True


def check_gr_supercommutative(w):
    """Top-degree part of [Theta_i, Theta_j] lies strictly below deg_i + deg_j."""
    for i in range(w.N):
        for j in range(w.N):
            c = w.commutator(i, j)
            if c and w.q.degree(c) >= w.gdeg[i] + w.gdeg[j]:
                return False
    return True


def letter_te_weights(frame, te_basis):
    """t^e weight of every PBW letter (letters must be eigenvectors)."""
    alg = frame.alg
    out = []
    for v in frame.letters[:frame.n_ptilde] + frame.letters[frame.n_ptilde:]:
        wt = []
        for t in te_basis:
            b = alg.bracket(t, v)
            k = next((i for i, c in enumerate(v) if c), None)
            lam = b[k] / v[k] if k is not None else 0
            if any(x - lam * y for x, y in zip(b, v)):
                raise ValueError("frame letters are not t^e weight vectors")
            wt.append(lam)
        out.append(tuple(wt))
    return out


def weight_normalize(w, te_basis):
    """Project each Theta_k to the t^e weight of Y_k; return (new generators, changed flag)."""
    if not te_basis:
        return w.gens, False
    lw = letter_te_weights(w.frame, te_basis)
    n = w.q.n
    changed = False
    new = []
    for g in w.gens:
        target = lw[g.letter]
        proj = {}
        for m, c in g.theta.items():
            wt = tuple(sum(a * x[k] for a, x in zip(m, lw[:n])) for k in range(len(te_basis)))
            if wt == target:
                proj[m] = c
        if len(proj) != len(g.theta):
            changed = True
        mono = tuple(1 if t == g.letter else 0 for t in range(n))
        if proj.get(mono) != 1:
            raise ValueError("weight projection kills the leading term")
        new.append(WGenerator(proj, g.letter, g.name, g.weight, g.parity))
    return new, changed


# ---------------------------------------------------------------- W'

def w_prime_report(w, D=None):
    """W' = super-centralizer of Theta_v in W, against [Theta_v, W] per degree."""
    fr = w.frame
    D = w.D - 1 if D is None else D
    if not fr.r_odd:
        return {"r_even": True, "identity": True, "rows": []}
    q = w.q
    tv = w.gens[-1].theta
    rows = []
    ok = True
    typeq = True
    for d in range(D + 1):
        basis = w.inv.upto(d)
        # kernel of ad Theta_v restricted to W cap F_d
        cols = []
        for el in basis:
            cols.append(_supercomm(q, tv, el))
        ker = kernel(cols, q.F.one)
        kern_elems = []
        for vec in ker:
            e = {}
            for k, c in vec.items():
                for m, cc in basis[k].items():
                    _addto(e, m, c * cc)
            kern_elems.append(e)
        img = [_supercomm(q, tv, el) for el in w.inv.upto(d + 1)]
        img = [x for x in img if x]
        e1, e2 = Echelon(), Echelon()
        for x in kern_elems:
            e1.add(x)
        for x in img:
            e2.add(x)
        same = len(e1) == len(e2) and all(e1.contains(x) for x in img)
        for x in img:
            if _supercomm(q, tv, x):
                typeq = False
        ok = ok and same
        rows.append({"degree": d, "dim_W_prime": len(e1), "dim_image": len(e2), "equal": same})
    v_in_wprime = not _supercomm(q, tv, tv)
    return {"r_even": False, "identity": ok, "rows": rows, "type_q": typeq,
            "v_not_in_W_prime": not v_in_wprime}


def _supercomm(q, a, b):
    pa = q.parity(a)
    pb = q.parity(b)
    s = -1 if pa and pb else 1
    return add(q.mul(a, b), q.mul(b, a), -s)


# ---------------------------------------------------------------- polynomials and rep systems

class Poly:
    """Commutative polynomial: {exponent tuple: coefficient} over named variables."""

    def __init__(self, nvars, terms=None):
        self.n = nvars
        self.t = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, n, c):
        return cls(n, {(0,) * n: c} if c else {})

    @classmethod
    def var(cls, n, i, one=1):
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): one})

    def __add__(self, o):
        out = dict(self.t)
        for k, v in o.t.items():
            _addto(out, k, v)
        return Poly(self.n, out)

    def __neg__(self):
        return Poly(self.n, {k: -v for k, v in self.t.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if not isinstance(o, Poly):
            return Poly(self.n, {k: v * o for k, v in self.t.items()})
        out = {}
        for k1, v1 in self.t.items():
            for k2, v2 in o.t.items():
                _addto(out, tuple(a + b for a, b in zip(k1, k2)), v1 * v2)
        return Poly(self.n, out)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.t)

    def evaluate(self, point):
        s = 0
        for k, v in self.t.items():
            term = v
            for x, a in zip(point, k):
                if a:
                    term = term * x ** a
            s = s + term
        return s

    def variables_used(self):
        return {i for k in self.t for i, a in enumerate(k) if a}

    def text(self, names):
        if not self.t:
            return "0"
        parts = []
        for k in sorted(self.t, reverse=True):
            mono = "*".join(f"{names[i]}^{a}" if a > 1 else names[i] for i, a in enumerate(k) if a)
            c = scalar_str(self.t[k])
            parts.append(f"{c}*{mono}" if mono else c)
        return " + ".join(parts)


@dataclass
class RepSystem:
    variant: str
    names: list
    equations: dict            # label -> Poly
    free: list                 # indices of variables not forced to zero
    info: dict = dc_field(default_factory=dict)

    def text(self):
        return "\n".join(f"{lab}: {p.text(self.names)} = 0" for lab, p in self.equations.items())


def onedim_system(table):
    """Drop all monomials containing an odd generator; equations in the even variables."""
    w = table.w
    l = w.frame.l
    names = [f"X_{i + 1}" for i in range(l)]
    eqs = {}
    vacuous = []
    for (i, j), poly in sorted(table.F.items()):
        P = Poly(l)
        for E, c in poly.items():
            if any(E[k] for k in range(w.N) if w.gpar[k]):
                continue
            P = P + Poly(l, {tuple(E[:l]): c})
        if i < l <= j and not P:
            vacuous.append((i + 1, j + 1))
        eqs[f"F'_{i + 1},{j + 1}"] = P
    info = {"r_odd": w.frame.r_odd, "mixed_pairs_vacuous": all(
        not eqs[f"F'_{i + 1},{j + 1}"] for (i, j) in table.F if i < l <= j)}
    if w.frame.r_odd:
        k = w.N - 1
        # Theta_v^2 = c/2 with Theta_v acting by 0
        c = table.F[(k, k)].get((0,) * w.N, 0)
        eqs["theta_v_square"] = Poly.const(l, -c / 2)
        info["flag"] = "r odd: one-dimensional representations are obstructed"
    return RepSystem("onedim", names, eqs, list(range(l)), info)


def twodim_system(table):
    """2x2 ansatz: rho(Theta_i) = [[X0_i, Y0_i], [X1_i, Y1_i]] on the basis (v, Theta_v.v).

    Even generators: X1_i = Y0_i = 0; odd generators: X0_i = Y1_i = 0.
    A, B, C, D are the (1,1), (1,2), (2,1), (2,2) entries of
    rho(T_i) rho(T_j) - s rho(T_j) rho(T_i) - rho(F_ij)."""
    w = table.w
    N = w.N
    names = []
    for i in range(N):
        names += [f"X0_{i + 1}", f"X1_{i + 1}", f"Y0_{i + 1}", f"Y1_{i + 1}"]
    nv = len(names)
    F = w.q.F
    zero = Poly(nv)
    mats = []
    free = []
    for i in range(N):
        v = {nm: Poly.var(nv, 4 * i + k, F.one) for k, nm in enumerate(("X0", "X1", "Y0", "Y1"))}
        if w.gpar[i]:
            v["X0"] = v["Y1"] = zero
            free += [4 * i + 1, 4 * i + 2]
        else:
            v["X1"] = v["Y0"] = zero
            free += [4 * i, 4 * i + 3]
        mats.append([[v["X0"], v["Y0"]], [v["X1"], v["Y1"]]])

    def mm(a, b):
        return [[a[r][0] * b[0][c] + a[r][1] * b[1][c] for c in range(2)] for r in range(2)]

    ident = [[Poly.const(nv, F.one), zero], [zero, Poly.const(nv, F.one)]]
    powcache = {}

    def rho_mono(E):
        out = ident
        for k, a in enumerate(E):
            for _ in range(a):
                out = mm(out, mats[k])
        return out

    eqs = {}
    for (i, j), poly in sorted(table.F.items()):
        s = -1 if w.gpar[i] and w.gpar[j] else 1
        lhs = [[x - y * s for x, y in zip(r1, r2)] for r1, r2 in zip(mm(mats[i], mats[j]), mm(mats[j], mats[i]))]
        rhs = [[zero, zero], [zero, zero]]
        for E, c in poly.items():
            R = rho_mono(E)
            rhs = [[rhs[r][cc] + R[r][cc] * c for cc in range(2)] for r in range(2)]
        diff = [[lhs[r][cc] - rhs[r][cc] for cc in range(2)] for r in range(2)]
        for lab, (r, cc) in zip("ABCD", ((0, 0), (0, 1), (1, 0), (1, 1))):
            eqs[f"{lab}_{i + 1},{j + 1}"] = diff[r][cc]
    return RepSystem("twodim", names, eqs, sorted(free), {"r_odd": w.frame.r_odd})


def verify_rep(system, point):
    """point: {variable name: scalar}; unspecified variables are zero."""
    vals = [point.get(nm, 0) for nm in system.names]
    for k, v in enumerate(vals):
        if v and k not in system.free:
            raise ValueError(f"{system.names[k]} violates the zero pattern")
    res = {lab: p.evaluate(vals) for lab, p in system.equations.items()}
    return {"residuals": res, "ok": all(not v for v in res.values())}


def search_rep_modular(system, p, limit=7):
    """All points over F_p (free variables only) solving the system."""
    from .fields import GF
    F = GF(p)
    free = system.free
    if len(free) > limit:
        raise ValueError(f"{len(free)} free variables exceed the brute-force limit {limit}")
    eqs = [(lab, Poly(P.n, {k: F(v) for k, v in P.t.items()})) for lab, P in system.equations.items()]
    sols = []
    vals = [F(0)] * len(system.names)
    elems = [F(x) for x in range(p)]
    for combo in itertools.product(elems, repeat=len(free)):
        for k, v in zip(free, combo):
            vals[k] = v
        if all(not P.evaluate(vals) for _, P in eqs):
            sols.append({system.names[k]: v.v for k, v in zip(free, combo)})
    return sols


def lift_solution(system, modsol, p, max_num=8, max_den=4):
    """Try small rationals congruent to a modular solution; return an exact point or None."""
    from fractions import Fraction
    cands = []
    for nm in [system.names[k] for k in system.free]:
        r = modsol[nm] % p
        opts = []
        for d in range(1, max_den + 1):
            for n in range(-max_num, max_num + 1):
                if (n - r * d) % p == 0:
                    q = Fraction(n, d)
                    if q not in opts:
                        opts.append(q)
        opts.sort(key=lambda q: (abs(q.numerator) + q.denominator, q))
        cands.append(opts[:6])
    count = 0
    for combo in itertools.product(*cands):
        count += 1
        if count > 200000:
            return None
        point = {nm: v for nm, v in zip([system.names[k] for k in system.free], combo)}
        if verify_rep(system, point)["ok"]:
            return point
    return None


def abelianization_dims(table):
    """Even-generator count, the nonzero F'_ij, and how many variables they eliminate.

    A nonzero F'_ij eliminates X_k when X_k occurs in it only as a linear term
    and in no other nonzero relation; if every relation eliminates a variable the
    quotient is a polynomial ring in the remaining variables."""
    sysm = onedim_system(table)
    l = table.w.frame.l
    rels = {lab: P for lab, P in sysm.equations.items() if lab.startswith("F'") and P}
    even_pairs = [f"F'_{i + 1},{j + 1}" for (i, j) in table.F if j < l]
    used = {lab: P.variables_used() for lab, P in rels.items()}
    eliminated = []
    for lab, P in rels.items():
        others = set().union(*[u for k, u in used.items() if k != lab]) if len(used) > 1 else set()
        for k in sorted(used[lab]):
            unit = tuple(1 if t == k else 0 for t in range(l))
            if k in others or k in eliminated:
                continue
            if all(E == unit or not E[k] for E in P.t):
                eliminated.append(k)
                break
    polynomial = len(eliminated) == len(rels)
    return {"l": l, "relations": len(rels), "nonzero": sorted(rels),
            "even_pairs_vanish": not any(lab in rels for lab in even_pairs),
            "all_vanish": not rels,
            "quotient_polynomial_vars": l - len(eliminated) if polynomial else None}
