"""PBW straightening in U(g) and in the Q_chi model U(p~) (x) 1_chi.

Elements are dicts {exponent tuple: coefficient}. The first `n_model`
letters of the algebra's basis form the PBW alphabet; any remaining letters
(the basis of m) act on the generating vector through a character.
"""
import sys
from itertools import product

from .fields import scalar_str

sys.setrecursionlimit(max(sys.getrecursionlimit(), 100000))


def _addto(acc, mono, c):
    v = acc.get(mono)
    v = c if v is None else v + c
    if v:
        acc[mono] = v
    else:
        acc.pop(mono, None)


def add(a, b, s=1):
    out = dict(a)
    for k, c in b.items():
        _addto(out, k, s * c)
    return out


def scale(a, c):
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


class PBWContext:
    """Straightening engine.

    alg      -- LieSuperalgebra whose basis is the letter alphabet
    n_model  -- letters 0..n_model-1 are PBW letters; the rest act by `char`
    char     -- values of the character on letters >= n_model
    degrees  -- Kazhdan degree of each PBW letter (for filtrations)
    weights  -- ad h weight of each PBW letter
    reduction -- optional {letter: (p, pmap_vector, shift)}: even letter x
                 satisfies x^p = x^[p] + shift on the module (central element)
    """

    def __init__(self, alg, n_model=None, char=None, degrees=None, weights=None, names=None,
                 reduction=None):
        self.alg = alg
        self.F = alg.field
        self.n = alg.dim if n_model is None else n_model
        self.char = list(char) if char is not None else [self.F.zero] * (alg.dim - self.n)
        self.par = alg.parities
        self.degrees = degrees if degrees is not None else [1] * self.n
        self.weights = weights if weights is not None else [0] * self.n
        self.names = names if names is not None else alg.names[:self.n]
        self.reduction = reduction or {}
        self.one_mono = (0,) * self.n
        self._cache = {}
        self._half = self.F.one / 2 if not (self.F.kind == "Fp" and self.F.p == 2) else None
        self._table = [[alg.bracket_basis(i, j) for j in range(alg.dim)] for i in range(alg.dim)]

    # ------------------------------------------------------------ basics
    def one(self):
        return {self.one_mono: self.F.one}

    def letter(self, i):
        m = [0] * self.n
        m[i] = 1
        return {tuple(m): self.F.one}

    def mono_parity(self, mono):
        return sum(a for a, p in zip(mono, self.par) if p) % 2

    def parity(self, elem):
        ps = {self.mono_parity(m) for m in elem}
        if len(ps) > 1:
            raise ValueError("element is not homogeneous")
        return ps.pop() if ps else 0

    def kazhdan_degree(self, mono):
        return sum(a * d for a, d in zip(mono, self.degrees))

    def weight(self, mono):
        return sum(a * w for a, w in zip(mono, self.weights))

    def degree(self, elem):
        return max((self.kazhdan_degree(m) for m in elem), default=-1)

    def top_part(self, elem, deg=None):
        if deg is None:
            deg = self.degree(elem)
        return {m: c for m, c in elem.items() if self.kazhdan_degree(m) == deg}

    def homogeneous_parts(self, elem):
        out = {}
        for m, c in elem.items():
            out.setdefault(self.kazhdan_degree(m), {})[m] = c
        return out

    # ------------------------------------------------------------ straightening
    def left_mul(self, i, mono):
        """letter_i * (mono (x) 1) as a dict."""
        key = (i, mono)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        res = self._left_mul(i, mono)
        self._cache[key] = res
        return res

    def _bracket_terms(self, i, j, rest):
        out = {}
        for k, c in self._table[i][j].items():
            for mm, cc in self.left_mul(k, rest).items():
                _addto(out, mm, c * cc)
        return out

    def _left_mul(self, i, mono):
        n = self.n
        j = next((t for t, a in enumerate(mono) if a), None)
        if i >= n:
            if j is None:
                c = self.char[i - n]
                return {mono: c} if c else {}
            rest = list(mono)
            rest[j] -= 1
            rest = tuple(rest)
            out = {}
            sign = -1 if self.par[i] and self.par[j] else 1
            for mm, cc in self.left_mul(i, rest).items():
                for m2, c2 in self.left_mul(j, mm).items():
                    _addto(out, m2, sign * cc * c2)
            for mm, cc in self._bracket_terms(i, j, rest).items():
                _addto(out, mm, cc)
            return out
        if j is None or i < j or (i == j and not self.par[i]):
            new = list(mono)
            new[i] += 1
            new = tuple(new)
            red = self.reduction.get(i)
            if red is not None and new[i] >= red[0]:
                return self._reduce_power(i, new, red)
            return {new: self.F.one}
        if i == j:
            # odd letter squared: y y = 1/2 [y, y]
            rest = list(mono)
            rest[i] = 0
            rest = tuple(rest)
            return scale(self._bracket_terms(i, i, rest), self._half)
        rest = list(mono)
        rest[j] -= 1
        rest = tuple(rest)
        sign = -1 if self.par[i] and self.par[j] else 1
        out = {}
        for mm, cc in self.left_mul(i, rest).items():
            for m2, c2 in self.left_mul(j, mm).items():
                _addto(out, m2, sign * cc * c2)
        for mm, cc in self._bracket_terms(i, j, rest).items():
            _addto(out, mm, cc)
        return out

    def _reduce_power(self, i, mono, red):
        p, pvec, shift = red
        rest = list(mono)
        rest[i] -= p
        rest = tuple(rest)
        out = {}
        if shift:
            out[rest] = shift
        for k, c in enumerate(pvec):
            if c:
                for mm, cc in self.left_mul(k, rest).items():
                    _addto(out, mm, c * cc)
        return out

    def mul_letter(self, i, elem):
        out = {}
        for m, c in elem.items():
            for mm, cc in self.left_mul(i, m).items():
                _addto(out, mm, c * cc)
        return out

    def apply_word(self, word, elem=None):
        """word[0] * word[1] * ... * word[-1] * elem (default elem = generator)."""
        out = self.one() if elem is None else elem
        for i in reversed(word):
            out = self.mul_letter(i, out)
        return out

    def mono_word(self, mono):
        return [i for i, a in enumerate(mono) for _ in range(a)]

    def apply_mono(self, mono, elem):
        return self.apply_word(self.mono_word(mono), elem)

    def mul(self, a, b):
        """Product of a (read as an element of U in PBW form) with b."""
        out = {}
        for m, c in a.items():
            for mm, cc in self.apply_mono(m, b).items():
                _addto(out, mm, c * cc)
        return out

    def supercommutator(self, a, b):
        pa, pb = self.parity(a), self.parity(b)
        sign = -1 if pa and pb else 1
        return add(self.mul(a, b), self.mul(b, a), -sign)

    def act(self, x, q):
        """Left action of a Lie algebra element x (coordinates over the letters)."""
        out = {}
        for i, c in enumerate(x):
            if c:
                for m, cc in self.mul_letter(i, q).items():
                    _addto(out, m, c * cc)
        return out

    def ad_action(self, x, q):
        """x q - (-1)^{|x||q|} q x, for x in the span of the character letters."""
        xq = self.act(x, q)
        cx = sum((c * self.char[i - self.n] for i, c in enumerate(x) if c and i >= self.n),
                 self.F.zero)
        if any(c for i, c in enumerate(x) if c and i < self.n):
            raise ValueError("ad_action is defined for elements acting by the character")
        return add(xq, scale(q, cx), -1)

    def normal_form(self, word, coeff=None):
        out = self.apply_word(list(word))
        return scale(out, coeff) if coeff is not None else out

    # ------------------------------------------------------------ misc
    def sigma(self, q):
        return {m: (-c if self.kazhdan_degree(m) % 2 else c) for m, c in q.items()}

    def monomials(self, deg, pure=None, caps=None):
        """All PBW monomials of exact Kazhdan degree deg (odd exponents <= 1).

        pure -- restrict to these letters; caps -- {letter: max exponent}."""
        letters = list(range(self.n)) if pure is None else list(pure)
        out = []
        cur = [0] * self.n

        def rec(pos, left):
            if pos == len(letters):
                if left == 0:
                    out.append(tuple(cur))
                return
            i = letters[pos]
            d = self.degrees[i]
            top = 1 if self.par[i] else (left // d if d > 0 else 0)
            if caps and i in caps:
                top = min(top, caps[i])
            if d <= 0:
                top = 0
            for a in range(min(top, left // d if d > 0 else 0) + 1):
                cur[i] = a
                rec(pos + 1, left - a * d)
            cur[i] = 0

        rec(0, deg)
        return sorted(out)

    def to_text(self, elem):
        if not elem:
            return "0"
        parts = []
        for m in sorted(elem, key=lambda m: (-self.kazhdan_degree(m), tuple(-a for a in m))):
            c = elem[m]
            letters = " ".join(f"{self.names[i]}^{a}" if a > 1 else self.names[i]
                               for i, a in enumerate(m) if a)
            parts.append(f"{scalar_str(c)} * {letters}" if letters else scalar_str(c))
        return " + ".join(parts)

    def to_terms(self, elem):
        from .fields import to_json_scalar
        keys = sorted(elem, key=lambda m: (-self.kazhdan_degree(m), tuple(-a for a in m)))
        return [[list(m), to_json_scalar(elem[m])] for m in keys]


def koszul_sign(mono1, mono2, parities):
    """Sign of sorting the odd letters of mono1 followed by those of mono2;
    0 if an odd letter occurs in both."""
    a = [i for i, e in enumerate(mono1) if e and parities[i]]
    b = [i for i, e in enumerate(mono2) if e and parities[i]]
    if set(a) & set(b):
        return 0
    seq = a + b
    inv = sum(1 for x in range(len(seq)) for y in range(x + 1, len(seq)) if seq[x] > seq[y])
    return -1 if inv % 2 else 1


def chi_context(frame, reduction=None):
    """Q_chi model: PBW letters are p~, the m letters act by chi."""
    n = frame.n_ptilde
    degrees = [w + 2 if k in ("x", "y") else 1
               for w, (k, _) in zip(frame.letter_weights[:n], frame._kinds[:n])]
    return PBWContext(frame.falg, n, frame.fchi[n:], degrees, frame.letter_weights[:n],
                      frame.letter_names[:n], reduction)


def full_context(frame):
    """U(g) on the whole frame alphabet (p~ letters, then m letters)."""
    degrees = [w + 2 if k in ("x", "y", "m") else 1
               for w, (k, _) in zip(frame.letter_weights, frame._kinds)]
    return PBWContext(frame.falg, frame.falg.dim, None, degrees, frame.letter_weights,
                      frame.letter_names)


def reduce_mod_Ichi(frame, poly, qctx=None, fctx=None):
    """Image in Q_chi of an element of U(g) given in the full frame PBW basis."""
    qctx = qctx or chi_context(frame)
    out = {}
    for m, c in poly.items():
        for mm, cc in qctx.apply_word([i for i, a in enumerate(m) for _ in range(a)]).items():
            _addto(out, mm, c * cc)
    return out


def invariance_defect(qctx, frame, q):
    """ad_action of each m-basis letter on q (all zero iff q is invariant)."""
    n = qctx.n
    out = []
    for k in range(n, frame.falg.dim):
        z = [qctx.F.zero] * frame.falg.dim
        z[k] = qctx.F.one
        out.append(qctx.ad_action(z, q))
    return out


def commute_past_prefix(ctx, w, mono, nx, ny):
    """w * mono by the closed commutation formula.

    Letters 0..nx-1 must be even and nx..nx+ny-1 odd; the rest of mono is left in
    place.  Returns sum_i sum_j C(a, i) x^{a-i} y^{b-j} [w x^i y^j] (rest), where
    [w x^i y^j] = prod_t k_t (-1)^{|i|} (ad y_n)^{j_n}..(ad y_1)^{j_1}(ad x_m)^{i_m}..(ad x_1)^{i_1}(w)
    and k_t = (-1)^{|w| + j_1 + ... + j_{t-1} + j_t} when b_t = 1."""
    import itertools
    from math import comb
    alg = ctx.alg
    F = ctx.F
    pars = {alg.parity_of(w)} if any(w) else {0}
    if len(pars) != 1:
        raise ValueError("w must be homogeneous")
    pw = pars.pop()
    if any(alg.parities[k] for k in range(nx)) or not all(alg.parities[k] for k in range(nx, nx + ny)):
        raise ValueError("prefix letters have the wrong parities")
    a, b = mono[:nx], mono[nx:nx + ny]
    rest = tuple(0 if k < nx + ny else e for k, e in enumerate(mono))
    rest_el = {rest: F.one}
    out = {}
    for ivec in itertools.product(*[range(x + 1) for x in a]):
        g = list(w)
        for k, i in enumerate(ivec):
            for _ in range(i):
                g = alg.bracket(alg.unit(k), g)
        coeff = F.one * (-1) ** sum(ivec)
        for k, i in enumerate(ivec):
            coeff = coeff * comb(a[k], i)
        if not coeff or not any(g):
            continue
        for jvec in itertools.product(*[range(x + 1) for x in b]):
            h = g
            kc = coeff
            acc = 0
            for t, j in enumerate(jvec):
                if b[t]:
                    kc = kc * (-1) ** (pw + acc + j)
                if j:
                    h = alg.bracket(alg.unit(nx + t), h)
                acc += j
            if not kc or not any(h):
                continue
            left = tuple(list(x - i for x, i in zip(a, ivec)) + list(y - j for y, j in zip(b, jvec))
                         + [0] * (len(mono) - nx - ny))
            h_el = {}
            for k, c in enumerate(h):
                if c:
                    for mm, cc in ctx.left_mul(k, ctx.one_mono).items():
                        _addto(h_el, mm, c * cc)
            term = ctx.mul(ctx.mul({left: kc}, h_el), rest_el)
            for mm, cc in term.items():
                _addto(out, mm, cc)
    return out
