"""Basic classical Lie superalgebras as exact structure-constant tables."""
from fractions import Fraction
from itertools import product

from .fields import QQ, parse_rational
from .linalg import Echelon, determinant, kernel, to_dense


def mat_zero(N, zero=0):
    return [[zero] * N for _ in range(N)]


def mat_mul(a, b):
    N = len(a)
    out = mat_zero(N, 0 * a[0][0] if N else 0)
    for i in range(N):
        for k in range(N):
            x = a[i][k]
            if x:
                bk = b[k]
                row = out[i]
                for j in range(N):
                    if bk[j]:
                        row[j] = row[j] + x * bk[j]
    return out


def mat_add(a, b, s=1):
    return [[x + s * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in r] for r in a]


def super_bracket_mat(x, y, px, py):
    sign = -1 if px and py else 1
    return mat_add(mat_mul(x, y), mat_mul(y, x), -sign)


def supertrace(a, m):
    return sum((a[i][i] if i < m else -a[i][i]) for i in range(len(a)))


class LieSuperalgebra:
    """Lie superalgebra with a fixed ordered basis.

    table maps (i, j) to {k: c} with [b_i, b_j] = sum c b_k (only nonzero
    brackets are stored, both orders). gram[i][j] = (b_i, b_j).
    """

    def __init__(self, names, parities, table, gram, field=QQ, matrices=None,
                 m=None, n=None, tag="", summand=None):
        self.names = list(names)
        self.parities = list(parities)
        self.table = {k: dict(v) for k, v in table.items() if v}
        self.gram = gram
        self.field = field
        self.matrices = matrices
        self.super_m, self.super_n = m, n
        self.tag = tag
        self.summand = list(summand) if summand is not None else [0] * len(self.names)
        self.index = {nm: i for i, nm in enumerate(self.names)}

    @property
    def dim(self):
        return len(self.names)

    @property
    def dims(self):
        odd = sum(self.parities)
        return (self.dim - odd, odd)

    def zero(self):
        return [self.field.zero] * self.dim

    def unit(self, i):
        if isinstance(i, str):
            i = self.index[i]
        v = self.zero()
        v[i] = self.field.one
        return v

    def element(self, coeffs):
        """Element from {name or index: scalar}."""
        v = self.zero()
        for k, c in coeffs.items():
            i = self.index[k] if isinstance(k, str) else k
            v[i] = v[i] + self.field(parse_rational(c) if isinstance(c, str) else c)
        return v

    def parity_of(self, x):
        ps = {self.parities[i] for i, c in enumerate(x) if c}
        if len(ps) > 1:
            raise ValueError("element is not homogeneous")
        return ps.pop() if ps else 0

    def bracket_basis(self, i, j):
        return self.table.get((i, j), {})

    def bracket(self, x, y):
        out = self.zero()
        xs = [(i, c) for i, c in enumerate(x) if c]
        ys = [(j, c) for j, c in enumerate(y) if c]
        for i, a in xs:
            for j, b in ys:
                t = self.table.get((i, j))
                if t:
                    ab = a * b
                    for k, c in t.items():
                        out[k] = out[k] + ab * c
        return out

    def form(self, x, y):
        s = self.field.zero
        for i, a in enumerate(x):
            if a:
                row = self.gram[i]
                for j, b in enumerate(y):
                    if b and row[j]:
                        s = s + a * b * row[j]
        return s

    def ad_matrix(self, x):
        """Matrix A with A[k][j] = coefficient of b_k in [x, b_j]."""
        n = self.dim
        A = [[self.field.zero] * n for _ in range(n)]
        for i, a in enumerate(x):
            if a:
                for j in range(n):
                    for k, c in self.table.get((i, j), {}).items():
                        A[k][j] = A[k][j] + a * c
        return A

    def coords_of_matrix(self, mat):
        """Express a matrix in the realized basis (None if outside the span)."""
        if self.matrices is None:
            raise ValueError("algebra has no matrix realization")
        if not hasattr(self, "_mat_ech"):
            ech = Echelon()
            for i, b in enumerate(self.matrices):
                ech.add(_mat_sparse(b), tag=i)
            self._mat_ech = ech
        combo = self._mat_ech.express(_mat_sparse(mat))
        if combo is None:
            return None
        return to_dense(combo, self.dim, self.field.zero)

    def matrix_of(self, x):
        N = len(self.matrices[0])
        out = mat_zero(N, self.field.zero)
        for i, c in enumerate(x):
            if c:
                out = mat_add(out, self.matrices[i], c)
        return out

    def with_field(self, field):
        """Same algebra with every constant converted into another field."""
        table = {k: {kk: field(v) for kk, v in t.items()} for k, t in self.table.items()}
        gram = [[field(v) for v in r] for r in self.gram]
        mats = None
        if self.matrices is not None:
            mats = [[[field(v) for v in r] for r in b] for b in self.matrices]
        return LieSuperalgebra(self.names, self.parities, table, gram, field, mats,
                               self.super_m, self.super_n, self.tag, self.summand)

    def scaled_form(self, c):
        gram = [[c * v for v in r] for r in self.gram]
        return LieSuperalgebra(self.names, self.parities, self.table, gram, self.field,
                               self.matrices, self.super_m, self.super_n, self.tag, self.summand)

    def __repr__(self):
        return f"LieSuperalgebra({self.tag}, dims={self.dims})"


def _mat_sparse(mat):
    return {(r, c): v for r, row in enumerate(mat) for c, v in enumerate(row) if v}


def from_matrices(names, mats, m, n, tag, field=QQ, form_fn=None):
    """Subalgebra of gl(m|n) spanned by the given homogeneous supermatrices."""
    N = m + n
    parities = []
    for b in mats:
        ps = {int((r < m) != (c < m)) for r in range(N) for c in range(N) if b[r][c]}
        if len(ps) != 1:
            raise ValueError("basis matrix is not homogeneous")
        parities.append(ps.pop())
    ech = Echelon()
    for i, b in enumerate(mats):
        if ech.add(_mat_sparse(b), tag=i) is not None:
            raise ValueError("basis matrices are dependent")
    table = {}
    d = len(mats)
    for i in range(d):
        for j in range(d):
            br = super_bracket_mat(mats[i], mats[j], parities[i], parities[j])
            sp = _mat_sparse(br)
            if not sp:
                continue
            combo = ech.express(sp)
            if combo is None:
                raise ValueError(f"span not closed under bracket: [{names[i]}, {names[j]}]")
            table[(i, j)] = combo
    if form_fn is None:
        form_fn = lambda x, y: supertrace(mat_mul(x, y), m)
    gram = [[form_fn(mats[i], mats[j]) for j in range(d)] for i in range(d)]
    alg = LieSuperalgebra(names, parities, table, gram, field, mats, m, n, tag)
    alg._mat_ech = ech
    return alg


def unit_matrix(N, i, j, one=Fraction(1)):
    mat = mat_zero(N, 0 * one)
    mat[i][j] = one
    return mat


def build_gl(m, n, traceless=False, field=QQ):
    """gl(m|n) on matrix units E_ij (row-major); sl(m|n) with traceless=True."""
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("need m + n >= 1")
    N = m + n
    one = field.one
    names, mats = [], []
    sgn = [1 if i < m else -1 for i in range(N)]
    for i in range(N):
        for j in range(N):
            if traceless and i == j:
                if i == N - 1:
                    continue
                h = unit_matrix(N, i, i, one)
                h[i + 1][i + 1] = field(-sgn[i] * sgn[i + 1])
                names.append(f"H{i + 1}")
                mats.append(h)
            else:
                names.append(f"E{i + 1}{j + 1}" if N < 10 else f"E{i + 1}_{j + 1}")
                mats.append(unit_matrix(N, i, j, one))
    tag = f"{'sl' if traceless else 'gl'}({m}|{n})"
    return from_matrices(names, mats, m, n, tag, field)


def build_sl(m, n, field=QQ):
    return build_gl(m, n, traceless=True, field=field)


def osp_form_matrix(n, field=QQ):
    """Even supersymmetric form on C^(1|2n): 1 on the even line, J on the odd part."""
    N = 1 + 2 * n
    B = mat_zero(N, field.zero)
    B[0][0] = field.one
    for i in range(n):
        B[1 + i][1 + n + i] = field.one
        B[1 + n + i][1 + i] = -field.one
    return B


def build_osp12n(n, field=QQ):
    """osp(1|2n): the subalgebra of gl(1|2n) preserving the standard form."""
    if n < 1:
        raise ValueError("need n >= 1")
    N = 1 + 2 * n
    B = osp_form_matrix(n, field)
    par = lambda a: int(a >= 1)
    mats = []
    for parity in (0, 1):
        slots = [(r, c) for r in range(N) for c in range(N) if int((r < 1) != (c < 1)) == parity]
        cols = []
        # B(X v_a, v_b) + (-1)^{|X||a|} B(v_a, X v_b) = 0 for all a, b
        for (r, c) in slots:
            col = {}
            for a in range(N):
                for b in range(N):
                    v = 0
                    if c == a:
                        v = v + B[r][b]
                    if c == b:
                        s = -1 if parity and par(a) else 1
                        v = v + s * B[a][r]
                    if v:
                        col[(a, b)] = field(v)
            cols.append(col)
        for vec in kernel(cols, field.one):
            mat = mat_zero(N, field.zero)
            for k, c in vec.items():
                r, cc = slots[k]
                mat[r][cc] = c
            mats.append(mat)
    names = [_matrix_name(mat, i) for i, mat in enumerate(mats)]
    return from_matrices(names, mats, 1, 2 * n, f"osp(1|{2 * n})", field)


def _matrix_name(mat, i):
    N = len(mat)
    ent = [(r, c) for r in range(N) for c in range(N) if mat[r][c]]
    r, c = ent[-1]
    return f"X{r + 1}{c + 1}" if N < 10 else f"X{r + 1}_{c + 1}"


def osp_principal_nilpotent(alg):
    """Principal nilpotent of the even part sp(2n) of osp(1|2n)."""
    N = len(alg.matrices[0])
    n = (N - 1) // 2
    f = alg.field
    mat = mat_zero(N, f.zero)
    for i in range(1, n):
        mat[i][i + 1] = f.one
        mat[n + i + 1][n + i] = -f.one
    mat[n][2 * n] = f.one
    x = alg.coords_of_matrix(mat)
    if x is None:
        raise ValueError("principal nilpotent not in the algebra")
    return x


# ---------------------------------------------------------------- D(2,1;a)

def _d21a_model(a, field):
    """sl2+sl2+sl2 acting on C^2 (x) C^2 (x) C^2 with odd bracket weights sigma."""
    one = field.one
    names, par = [], []
    for i in range(3):
        for s in "ehf":
            names.append(f"{s}({i + 1})")
            par.append(0)
    spins = list(product((1, -1), repeat=3))
    for w in spins:
        names.append("v" + "".join("+" if t > 0 else "-" for t in w))
        par.append(1)
    idx = {nm: k for k, nm in enumerate(names)}
    vidx = {w: 9 + k for k, w in enumerate(spins)}
    table = {}

    def put(i, j, k, c):
        if c:
            t = table.setdefault((i, j), {})
            t[k] = t.get(k, 0) + c

    for i in range(3):
        e, h, f = 3 * i, 3 * i + 1, 3 * i + 2
        for x, y, k, c in ((h, e, e, 2), (h, f, f, -2), (e, f, h, 1)):
            put(x, y, k, c * one)
            put(y, x, k, -c * one)
        for w in spins:
            v = vidx[w]
            put(h, v, v, w[i] * one)
            put(v, h, v, -w[i] * one)
            if w[i] < 0:
                w2 = list(w)
                w2[i] = 1
                put(e, v, vidx[tuple(w2)], one)
                put(v, e, vidx[tuple(w2)], -one)
            else:
                w2 = list(w)
                w2[i] = -1
                put(f, v, vidx[tuple(w2)], one)
                put(v, f, vidx[tuple(w2)], -one)
    sigma = (-(1 + a) * one, one, a * one)
    psi = lambda s, t: (1 if (s, t) == (1, -1) else -1 if (s, t) == (-1, 1) else 0)
    for w in spins:
        for u in spins:
            for i in range(3):
                j, k = [t for t in range(3) if t != i]
                c = psi(w[j], u[j]) * psi(w[k], u[k])
                if not c:
                    continue
                # P(x, y) in sl2: z -> psi(x, z) y + psi(y, z) x
                s, t = w[i], u[i]
                c = sigma[i] * c
                if s == t == 1:
                    put(vidx[w], vidx[u], 3 * i, 2 * c)
                elif s == t == -1:
                    put(vidx[w], vidx[u], 3 * i + 2, -2 * c)
                else:
                    put(vidx[w], vidx[u], 3 * i + 1, -c)
    table = {k: {kk: vv for kk, vv in v.items() if vv} for k, v in table.items()}
    return names, par, table, idx, vidx


def build_d21a(a, field=QQ):
    """D(2,1;a) on the Chevalley-type basis {H_i, e_i, f_i} plus the eight
    composite root vectors, with the invariant form normalized by (e1, f1) = 1."""
    a = parse_rational(a)
    if a == 0 or a == -1:
        raise ValueError("D(2,1;a) needs a not in {0, -1}")
    af = field(a)
    names, par, table, idx, vidx = _d21a_model(af, field)
    model = LieSuperalgebra(names, par, table, [[field.zero] * 17 for _ in range(17)], field,
                            tag="D(2,1;a)-model")
    u = model.unit
    e2, f2, e3, f3 = u("e(2)"), u("f(2)"), u("e(3)"), u("f(3)")
    e1 = u("v+--")
    f1raw = u("v-++")
    h1raw = model.bracket(e1, f1raw)
    # normalize f1 so that [h1, e2] = e2
    k = model.bracket(h1raw, e2)[idx["e(2)"]]
    f1 = [c / k for c in f1raw]
    br = model.bracket
    h1, h2, h3 = br(e1, f1), br(e2, f2), br(e3, f3)
    e12, e13 = br(e1, e2), br(e1, e3)
    e123 = br(e12, e3)
    e1123 = [c / (1 + af) for c in br(e1, e123)]
    f21, f31 = br(f2, f1), br(f3, f1)
    f321 = br(f3, f21)
    f3211 = [-c / (1 + af) for c in br(f321, f1)]
    H1, H3 = h1, h3
    H2 = [(2 * x - y - af * z) / (1 + af) for x, y, z in zip(h1, h2, h3)]
    basis = [("H1", H1), ("H2", H2), ("H3", H3), ("e1", e1), ("e2", e2), ("e3", e3),
             ("f1", f1), ("f2", f2), ("f3", f3), ("e12", e12), ("e13", e13),
             ("e123", e123), ("e1123", e1123), ("f21", f21), ("f31", f31),
             ("f321", f321), ("f3211", f3211)]
    new = change_basis(model, [b for _, b in basis], [nm for nm, _ in basis], "D(2,1;a)")
    forms = invariant_forms(new)
    if len(forms) != 1:
        raise ValueError("expected a unique invariant form on D(2,1;a)")
    G = forms[0]
    i1, j1 = new.index["e1"], new.index["f1"]
    s = G[i1][j1]
    gram = [[x / s for x in r] for r in G]
    out = LieSuperalgebra(new.names, new.parities, new.table, gram, field, tag=f"D(2,1;{a})")
    out.param = a
    return out


def d21a_h(alg, i):
    """The Cartan generators h_1, h_2, h_3 in the Chevalley basis."""
    a = alg.field(alg.param)
    H1, H2, H3 = alg.unit("H1"), alg.unit("H2"), alg.unit("H3")
    if i == 1:
        return H1
    if i == 3:
        return H3
    # H2 = (2 h1 - h2 - a h3)/(1+a)
    return [2 * x - (1 + a) * y - a * z for x, y, z in zip(H1, H2, H3)]


def change_basis(alg, vectors, names, tag):
    """The same algebra written in a new basis (vectors in old coordinates)."""
    d = alg.dim
    ech = Echelon()
    for i, v in enumerate(vectors):
        if ech.add({k: c for k, c in enumerate(v) if c}, tag=i) is not None:
            raise ValueError("new basis vectors are dependent")
    if len(vectors) != d:
        raise ValueError("wrong number of basis vectors")
    parities = [alg.parity_of(v) for v in vectors]
    table = {}
    for i in range(d):
        for j in range(d):
            br = alg.bracket(vectors[i], vectors[j])
            sp = {k: c for k, c in enumerate(br) if c}
            if sp:
                table[(i, j)] = ech.express(sp)
    gram = [[alg.form(vectors[i], vectors[j]) for j in range(d)] for i in range(d)]
    mats = None
    if alg.matrices is not None:
        mats = [alg.matrix_of(v) for v in vectors]
    return LieSuperalgebra(names, parities, table, gram, alg.field, mats,
                           alg.super_m, alg.super_n, tag)


def invariant_forms(alg):
    """Basis of the even, supersymmetric, invariant bilinear forms (as Gram matrices)."""
    d = alg.dim
    pairs = [(i, j) for i in range(d) for j in range(i, d) if alg.parities[i] == alg.parities[j]]
    pos = {pr: k for k, pr in enumerate(pairs)}

    def var(i, j):
        # (b_i, b_j) as (sign, unknown index) using supersymmetry
        if alg.parities[i] != alg.parities[j]:
            return None
        if i <= j:
            return 1, pos[(i, j)]
        return (-1 if alg.parities[i] else 1), pos[(j, i)]

    eqs = []
    for i in range(d):
        for j in range(d):
            bij = alg.bracket_basis(i, j)
            for k in range(d):
                # ([b_i, b_j], b_k) - (b_i, [b_j, b_k]) = 0
                row = {}
                for t, c in bij.items():
                    v = var(t, k)
                    if v:
                        row[v[1]] = row.get(v[1], 0) + c * v[0]
                for t, c in alg.bracket_basis(j, k).items():
                    v = var(i, t)
                    if v:
                        row[v[1]] = row.get(v[1], 0) - c * v[0]
                row = {x: y for x, y in row.items() if y}
                if row:
                    eqs.append(row)
    cols = [dict() for _ in pairs]
    for r, row in enumerate(eqs):
        for x, y in row.items():
            cols[x][r] = y
    out = []
    for vec in kernel(cols, alg.field.one):
        G = [[alg.field.zero] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                v = var(i, j)
                if v and v[1] in vec:
                    G[i][j] = v[0] * vec[v[1]]
        out.append(G)
    return out


def direct_sum(parts):
    if not parts:
        raise ValueError("direct_sum needs at least one part")
    field = parts[0].field
    names, pars, summand, table = [], [], [], {}
    offs = []
    off = 0
    for s, alg in enumerate(parts):
        offs.append(off)
        for nm in alg.names:
            names.append(f"{nm}#{s + 1}" if len(parts) > 1 else nm)
        pars += alg.parities
        summand += [s] * alg.dim
        for (i, j), t in alg.table.items():
            table[(i + off, j + off)] = {k + off: c for k, c in t.items()}
        off += alg.dim
    gram = [[field.zero] * off for _ in range(off)]
    for s, alg in enumerate(parts):
        o = offs[s]
        for i in range(alg.dim):
            for j in range(alg.dim):
                gram[i + o][j + o] = alg.gram[i][j]
    tag = " + ".join(p.tag for p in parts)
    out = LieSuperalgebra(names, pars, table, gram, field, tag=f"direct_sum({tag})", summand=summand)
    out.parts = list(parts)
    out.offsets = offs
    return out


# ---------------------------------------------------------------- validators

def check_antisymmetry(alg):
    for (i, j), t in alg.table.items():
        s = -1 if alg.parities[i] and alg.parities[j] else 1
        other = alg.table.get((j, i), {})
        for k in set(t) | set(other):
            if t.get(k, 0) != -s * other.get(k, 0):
                return False
    return True


def check_parity(alg):
    return all(alg.parities[k] == (alg.parities[i] + alg.parities[j]) % 2
               for (i, j), t in alg.table.items() for k in t)


def check_jacobi(alg):
    """[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]] on all basis triples."""
    d = alg.dim
    for i in range(d):
        for j in range(d):
            for k in range(d):
                lhs = _br_sparse(alg, {i: 1}, _br_sparse(alg, {j: 1}, {k: 1}))
                r1 = _br_sparse(alg, alg.bracket_basis(i, j), {k: 1})
                r2 = _br_sparse(alg, {j: 1}, alg.bracket_basis(i, k))
                s = -1 if alg.parities[i] and alg.parities[j] else 1
                for t in set(lhs) | set(r1) | set(r2):
                    if lhs.get(t, 0) != r1.get(t, 0) + s * r2.get(t, 0):
                        return False
    return True


def _br_sparse(alg, x, y):
    out = {}
    for i, a in x.items():
        for j, b in y.items():
            for k, c in alg.table.get((i, j), {}).items():
                out[k] = out.get(k, 0) + a * b * c
    return {k: v for k, v in out.items() if v}


def verify_form(alg):
    d = alg.dim
    G = alg.gram
    P = alg.parities
    even = all(not G[i][j] for i in range(d) for j in range(d) if P[i] != P[j])
    supersym = all(G[i][j] == (-G[j][i] if P[i] and P[j] else G[j][i])
                   for i in range(d) for j in range(d))
    invariant = True
    for i in range(d):
        for j in range(d):
            bij = alg.bracket_basis(i, j)
            for k in range(d):
                lhs = sum((c * G[t][k] for t, c in bij.items()), alg.field.zero)
                rhs = sum((c * G[i][t] for t, c in alg.bracket_basis(j, k).items()), alg.field.zero)
                if lhs != rhs:
                    invariant = False
                    break
            if not invariant:
                break
        if not invariant:
            break
    nondeg = bool(determinant(G, alg.field.one)) if d else True
    return {"even": even, "supersymmetric": supersym, "invariant": invariant, "nondegenerate": nondeg}


def check_matrix_brackets(alg):
    if alg.matrices is None:
        return True
    for i in range(alg.dim):
        for j in range(alg.dim):
            br = super_bracket_mat(alg.matrices[i], alg.matrices[j], alg.parities[i], alg.parities[j])
            x = alg.zero()
            for k, c in alg.bracket_basis(i, j).items():
                x[k] = c
            if alg.matrix_of(x) != br:
                return False
    return True


def validate(alg):
    rep = {"antisymmetry": check_antisymmetry(alg), "parity": check_parity(alg),
           "jacobi": check_jacobi(alg), "matrix_brackets": check_matrix_brackets(alg)}
    rep.update(verify_form(alg))
    return rep


def gram_determinant(alg):
    return determinant(alg.gram, alg.field.one)


# ---------------------------------------------------------------- input specs

def algebra_from_spec(spec, field=QQ):
    t = spec["type"]
    if t == "gl":
        return build_gl(int(spec["m"]), int(spec["n"]), field=field)
    if t == "sl":
        return build_sl(int(spec["m"]), int(spec["n"]), field=field)
    if t == "osp12n":
        return build_osp12n(int(spec["n"]), field=field)
    if t in ("D21a", "d21a"):
        return build_d21a(spec["a"], field=field)
    if t == "direct_sum":
        return direct_sum([algebra_from_spec(p, field) for p in spec["parts"]])
    if t == "table":
        return algebra_from_table(spec, field)
    raise ValueError(f"unknown algebra type {t!r}")


def algebra_from_table(spec, field=QQ):
    """Externally supplied structure constants: names, parities, brackets, gram."""
    names = spec["names"]
    idx = {nm: i for i, nm in enumerate(names)}
    table = {}
    for entry in spec["brackets"]:
        i, j = idx[entry[0]], idx[entry[1]]
        table[(i, j)] = {idx[k]: field(parse_rational(c)) for k, c in entry[2].items()}
    gram = [[field(parse_rational(c)) for c in row] for row in spec["gram"]]
    return LieSuperalgebra(names, [int(p) for p in spec["parities"]], table, gram, field,
                           tag=spec.get("tag", "table"))
