"""Matrix superalgebras M_{m,n} and Q_n, graded tensor products, M/Q classification,
outer tensor products of typed modules, and dimension-bound calculators."""
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .fields import QQ, QuadraticField, is_rational_square
from .linalg import Echelon, kernel


@dataclass
class SuperAlgebraTable:
    """Associative superalgebra with a monomial basis: every product of two basis
    elements is a signed basis element or zero.

    mult(i, j) -> (k, sign) or None; unit is a sparse vector {index: coeff}."""
    names: list
    parities: list
    mult: object
    unit: dict
    generators: list
    kind: tuple = None

    @property
    def dim(self):
        return len(self.names)

    @property
    def dims(self):
        return (self.parities.count(0), self.parities.count(1))

    def product(self, a, b):
        out = {}
        for i, x in a.items():
            for j, y in b.items():
                r = self.mult(i, j)
                if r is not None:
                    k, s = r
                    out[k] = out.get(k, 0) + s * x * y
        return {k: v for k, v in out.items() if v}


def _matrix_unit_mult(N):
    def mult(a, b):
        (i, j), (k, l) = a, b
        return (i, l) if j == k else None
    return mult


def build_M(m, n):
    """M_{m,n}: all (m+n)x(m+n) matrices, E_ij odd iff exactly one index is >= m."""
    N = m + n
    units = [(i, j) for i in range(N) for j in range(N)]
    index = {u: k for k, u in enumerate(units)}
    par = [int((i >= m) != (j >= m)) for i, j in units]

    def mult(a, b):
        (i, j), (k, l) = units[a], units[b]
        return (index[(i, l)], 1) if j == k else None

    gens = [{index[(i, i + 1)]: 1} for i in range(N - 1)] + [{index[(i + 1, i)]: 1} for i in range(N - 1)]
    if N == 1:
        gens = [{0: 1}]
    return SuperAlgebraTable([f"E{i}{j}" for i, j in units], par, mult,
                             {index[(i, i)]: 1 for i in range(N)}, gens, ("M", (m, n)))


def build_Q(n):
    """Q_n: block matrices (A, B; -B, A); even basis A = E_ij, odd basis B = E_ij."""
    units = [(i, j) for i in range(n) for j in range(n)]
    index = {u: k for k, u in enumerate(units)}
    N2 = n * n
    names = [f"A{i}{j}" for i, j in units] + [f"B{i}{j}" for i, j in units]
    par = [0] * N2 + [1] * N2

    def mult(a, b):
        pa, ua = divmod(a, N2)
        pb, ub = divmod(b, N2)
        (i, j), (k, l) = units[ua], units[ub]
        if j != k:
            return None
        k2 = index[(i, l)]
        if pa and pb:
            return (k2, -1)
        return (k2 + N2 * (pa ^ pb), 1)

    gens = [{index[(i, i + 1)]: 1} for i in range(n - 1)] + [{index[(i + 1, i)]: 1} for i in range(n - 1)] \
        + [{N2 + index[(0, 0)]: 1}]
    return SuperAlgebraTable(names, par, mult, {index[(i, i)]: 1 for i in range(n)}, gens, ("Q", n))


def q_matrices(n):
    """Matrices of the Q_n basis acting on k^{n|n}."""
    out = []
    for par in (0, 1):
        for i in range(n):
            for j in range(n):
                M = [[0] * (2 * n) for _ in range(2 * n)]
                if par == 0:
                    M[i][j] = 1
                    M[n + i][n + j] = 1
                else:
                    M[i][n + j] = 1
                    M[n + i][j] = -1
                out.append(M)
    return out


def graded_tensor(A, B):
    """A (x) B with (a (x) b)(a' (x) b') = (-1)^{|b||a'|} aa' (x) bb'."""
    nb = B.dim
    names = [f"{x}*{y}" for x in A.names for y in B.names]
    par = [(pa + pb) % 2 for pa in A.parities for pb in B.parities]

    def mult(x, y):
        a, b = divmod(x, nb)
        a2, b2 = divmod(y, nb)
        r1 = A.mult(a, a2)
        if r1 is None:
            return None
        r2 = B.mult(b, b2)
        if r2 is None:
            return None
        s = -1 if B.parities[b] and A.parities[a2] else 1
        return (r1[0] * nb + r2[0], s * r1[1] * r2[1])

    unit = {i * nb + j: c * d for i, c in A.unit.items() for j, d in B.unit.items()}
    gens = []
    for g in A.generators:
        gens.append({a * nb + j: c * d for a, c in g.items() for j, d in B.unit.items()})
    for g in B.generators:
        gens.append({i * nb + b: c * d for i, c in A.unit.items() for b, d in g.items()})
    return SuperAlgebraTable(names, par, mult, unit, gens)


def center(T, super_=False, gens=None):
    """Ordinary center (or supercenter) as the commutant of a generating set.
    Returns a basis split by parity: {0: [...], 1: [...]}."""
    gens = gens if gens is not None else T.generators
    gpar = []
    for g in gens:
        ps = {T.parities[i] for i in g}
        if len(ps) != 1:
            raise ValueError("generators must be homogeneous")
        gpar.append(ps.pop())
    out = {}
    for par in (0, 1):
        idx = [i for i in range(T.dim) if T.parities[i] == par]
        cols = []
        for i in idx:
            col = {}
            for gk, (g, gp) in enumerate(zip(gens, gpar)):
                s = -1 if super_ and par and gp else 1
                for k, c in T.product({i: 1}, g).items():
                    col[(gk, k)] = col.get((gk, k), 0) + c
                for k, c in T.product(g, {i: 1}).items():
                    col[(gk, k)] = col.get((gk, k), 0) - s * c
                col = {k: v for k, v in col.items() if v}
            cols.append({k: Fraction(v) for k, v in col.items()})
        out[par] = [{idx[j]: c for j, c in v.items()} for v in kernel(cols)]
    return out


def classify_simple(T):
    """(kind, size) from total dimension, even dimension and the ordinary center:
    M_{a,b} has a one-dimensional even center, Q_n a center of dimension (1|1)."""
    D = T.dim
    D0, D1 = T.dims
    z = center(T)
    zd = (len(z[0]), len(z[1]))
    if zd == (1, 0):
        N = int(round(D ** 0.5))
        if N * N != D:
            raise ValueError("not simple of type M: dimension is not a square")
        # a + b = N, a^2 + b^2 = D0
        for a in range(N, -1, -1):
            b = N - a
            if a * a + b * b == D0 and a >= b:
                return ("M", (a, b))
        raise ValueError("not simple of type M: even dimension mismatch")
    if zd == (1, 1):
        n = int(round((D / 2) ** 0.5))
        if 2 * n * n != D or D0 != n * n:
            raise ValueError("not simple of type Q: dimension mismatch")
        return ("Q", n)
    raise ValueError(f"not simple of type M/Q: center dimensions {zd}")


def normalize_kind(kind):
    k, s = kind
    if k == "M":
        a, b = s
        return ("M", (max(a, b), min(a, b)))
    return kind


def predicted_tensor(k1, k2):
    """Expected type of X (x) Y for simple X, Y."""
    (t1, s1), (t2, s2) = k1, k2
    if t1 == "M" and t2 == "M":
        (m, n), (k, l) = s1, s2
        return normalize_kind(("M", (m * k + n * l, m * l + n * k)))
    if t1 == "M" and t2 == "Q":
        return ("Q", sum(s1) * s2)
    if t1 == "Q" and t2 == "M":
        return ("Q", sum(s2) * s1)
    return ("M", (s1 * s2, s1 * s2))


def check_associativity(T, sample=None):
    idx = range(T.dim)
    triples = itertools.product(idx, idx, idx) if sample is None else sample
    for a, b, c in triples:
        lhs = T.product(T.product({a: 1}, {b: 1}), {c: 1})
        rhs = T.product({a: 1}, T.product({b: 1}, {c: 1}))
        if lhs != rhs:
            return False
    return True


def tensor_table_report(max_size=3):
    """classify(X (x) Y) against the tensor rules for all M_{m,n}, Q_k with sizes <= max_size."""
    simples = []
    for m in range(max_size + 1):
        for n in range(m + 1):
            if m + n:
                simples.append(build_M(m, n))
    for k in range(1, max_size + 1):
        simples.append(build_Q(k))
    rows = []
    for X in simples:
        for Y in simples:
            got = normalize_kind(classify_simple(graded_tensor(X, Y)))
            want = predicted_tensor(normalize_kind(X.kind), normalize_kind(Y.kind))
            rows.append({"left": X.kind, "right": Y.kind, "got": got, "want": want, "ok": got == want})
    return {"rows": rows, "ok": all(r["ok"] for r in rows)}


# ---------------------------------------------------------------- modules

@dataclass
class SuperModule:
    """Graded module given by the action of a generating set of its algebra."""
    parities: list
    action: list        # matrices (lists of lists) of the generators
    alg_parities: list  # parities of the generators
    kind: str = None

    @property
    def dim(self):
        return len(self.parities)


def _unit_matrix(N, i, j, c=1):
    M = [[0] * N for _ in range(N)]
    M[i][j] = c
    return M


def natural_module(T):
    """k^{m|n} for M_{m,n}, k^{n|n} for Q_n, acting through the algebra generators."""
    kind, size = T.kind
    if kind == "M":
        m, n = size
        N = m + n
        pars = [0] * m + [1] * n
        pairs = [(i, i + 1) for i in range(N - 1)] + [(i + 1, i) for i in range(N - 1)]
        if N == 1:
            pairs = [(0, 0)]
        mats = [_unit_matrix(N, i, j) for i, j in pairs]
        return SuperModule(pars, mats, [(pars[i] + pars[j]) % 2 for i, j in pairs], "M")
    n = size
    all_q = q_matrices(n)
    idx = [i * n + i + 1 for i in range(n - 1)] + [(i + 1) * n + i for i in range(n - 1)] + [n * n]
    return SuperModule([0] * n + [1] * n, [all_q[k] for k in idx],
                       [0] * (2 * n - 2) + [1], "Q")


def parity_shift(V):
    """Pi V: same action, parities flipped."""
    return SuperModule([1 - p for p in V.parities], V.action, V.alg_parities, V.kind)


def outer_tensor(V, W):
    """V [x] W over A (x) B with (a (x) b)(v (x) w) = (-1)^{|b||v|} av (x) bw,
    given by the generators a (x) 1 and 1 (x) b."""
    if V.kind is None or W.kind is None:
        raise ValueError("outer tensor needs typed modules")
    nv, nw = V.dim, W.dim
    N = nv * nw
    pars = [(a + b) % 2 for a in V.parities for b in W.parities]
    mats, apars = [], []
    for A, pa in zip(V.action, V.alg_parities):
        M = [[0] * N for _ in range(N)]
        for r1 in range(nv):
            for c1 in range(nv):
                if A[r1][c1]:
                    for k in range(nw):
                        M[r1 * nw + k][c1 * nw + k] = A[r1][c1]
        mats.append(M)
        apars.append(pa)
    for B, pb in zip(W.action, W.alg_parities):
        M = [[0] * N for _ in range(N)]
        for k in range(nv):
            s = -1 if pb and V.parities[k] else 1
            for r2 in range(nw):
                for c2 in range(nw):
                    if B[r2][c2]:
                        M[k * nw + r2][k * nw + c2] = s * B[r2][c2]
        mats.append(M)
        apars.append(pb)
    return SuperModule(pars, mats, apars)


def supercommutant(V, field=QQ):
    """Homogeneous T with T rho(x) = (-1)^{|T||x|} rho(x) T; basis split by parity."""
    n = V.dim
    out = {}
    for par in (0, 1):
        cells = [(r, c) for r in range(n) for c in range(n) if (V.parities[r] + V.parities[c]) % 2 == par]
        cols = []
        for (r, c) in cells:
            col = {}
            for xi, X in enumerate(V.action):
                s = -1 if par and V.alg_parities[xi] else 1
                # (E_rc X)[r][j] = X[c][j];  (X E_rc)[i][c] = X[i][r]
                for j in range(n):
                    if X[c][j]:
                        col[(xi, r, j)] = col.get((xi, r, j), 0) + X[c][j]
                for i in range(n):
                    if X[i][r]:
                        col[(xi, i, c)] = col.get((xi, i, c), 0) - s * X[i][r]
            cols.append({k: field(v) for k, v in col.items() if v})
        out[par] = [{cells[j]: c for j, c in v.items()} for v in kernel(cols, field.one)]
    return out


def _to_mat(sparse, n, F):
    M = [[F.zero] * n for _ in range(n)]
    for (r, c), v in sparse.items():
        M[r][c] = F(v) if not isinstance(v, type(F.one)) else v
    return M


def _mm(a, b, F):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n) if a[i][k]), F.zero) for j in range(n)] for i in range(n)]


def _rank(M):
    ech = Echelon()
    for row in M:
        ech.add({j: v for j, v in enumerate(row) if v})
    return len(ech)


def decompose_outer(V, W):
    """Outer tensor with its type decided from the supercommutant; for a commutant of
    dimension (2|2) an even idempotent splits it into U + Pi U, checked explicitly."""
    X = outer_tensor(V, W)
    com = supercommutant(X)
    cd = (len(com[0]), len(com[1]))
    n = X.dim
    if cd == (1, 0):
        return {"kind": "M", "dims": [n], "commutant": cd, "module": X}
    if cd == (1, 1):
        return {"kind": "Q", "dims": [n], "commutant": cd, "module": X}
    if cd != (2, 2):
        return {"kind": None, "dims": [n], "commutant": cd, "module": X}
    F = QQ
    ident = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    E = None
    for v in com[0]:
        M = _to_mat(v, n, F)
        if M != [[x * M[0][0] for x in row] for row in ident] or not M[0][0]:
            if any(M[i][j] for i in range(n) for j in range(n) if i != j) or len({M[i][i] for i in range(n)}) > 1:
                E = M
                break
    # E^2 = a E + b; shift to E'^2 = d
    E2 = _mm(E, E, F)
    # solve E2 = a E + b I from two independent entries
    ech = Echelon()
    flat = lambda M: {(i, j): M[i][j] for i in range(n) for j in range(n) if M[i][j]}
    ech.add(flat(E), tag="E")
    ech.add(flat(ident), tag="I")
    combo = ech.express(flat(E2))
    a, b = combo.get("E", F.zero), combo.get("I", F.zero)
    Ep = [[E[i][j] - (a / 2 if i == j else 0) for j in range(n)] for i in range(n)]
    d = b + a * a / 4
    if is_rational_square(d):
        K = QQ
        rt = Fraction(_isqrt_frac(d))
    else:
        K = QuadraticField(d)
        rt = K.sqrt()
    Epk = [[K(x) for x in row] for row in Ep]
    half = K.one / 2
    P = [[half * ((K.one if i == j else K.zero) + Epk[i][j] / rt) for j in range(n)] for i in range(n)]
    idem = _mm(P, P, K) == P
    r1 = _rank(P)
    Q = [[(K.one if i == j else K.zero) - P[i][j] for j in range(n)] for i in range(n)]
    r2 = _rank(Q)
    sub = restrict_module(X, P, K)
    sc = supercommutant(sub, K)
    sub_kind = "M" if (len(sc[0]), len(sc[1])) == (1, 0) else None
    odd = _to_mat(com[1][0], n, F)
    oddk = [[K(x) for x in row] for row in odd]
    swaps = _mm(_mm(Q, oddk, K), P, K)
    swap_ok = _rank(swaps) == r1
    return {"kind": "M+PiM", "dims": [r1, r2], "commutant": cd, "idempotent": idem,
            "constituent_kind": sub_kind, "odd_swap": swap_ok, "module": X}


def restrict_module(X, P, K):
    """Action on the image of an even projector P commuting with the action."""
    n = X.dim
    ech = Echelon()
    basis, pars = [], []
    for c in range(n):
        col = {r: P[r][c] for r in range(n) if P[r][c]}
        if col and ech.add(col, tag=len(basis)) is None:
            basis.append(col)
            pars.append(X.parities[c])
    mats = []
    for G in X.action:
        M = [[K.zero] * len(basis) for _ in basis]
        for j, b in enumerate(basis):
            img = {}
            for c, v in b.items():
                for r in range(n):
                    if G[r][c]:
                        img[r] = img.get(r, K.zero) + K(G[r][c]) * v
            img = {r: v for r, v in img.items() if v}
            combo = ech.express(img) if img else {}
            if combo is None:
                raise ValueError("image of the projector is not a submodule")
            for i, v in combo.items():
                M[i][j] = v
        mats.append(M)
    return SuperModule(pars, mats, X.alg_parities)


def _isqrt_frac(d):
    from math import isqrt
    d = Fraction(d)
    return Fraction(isqrt(d.numerator), isqrt(d.denominator))


def predicted_outer(k1, k2):
    if k1 == "M" and k2 == "M":
        return "M"
    if k1 == "Q" and k2 == "Q":
        return "M+PiM"
    return "Q"


def outer_type_report(max_dim=4):
    """Outer tensor types for natural modules (and parity shifts) of dim <= max_dim."""
    mods = []
    for m in range(max_dim + 1):
        for n in range(max_dim + 1 - m):
            if m + n:
                mods.append((("M", (m, n)), natural_module(build_M(m, n))))
    for k in range(1, max_dim // 2 + 1):
        V = natural_module(build_Q(k))
        mods += [(("Q", k), V), (("Q", k, "Pi"), parity_shift(V))]
    rows = []
    for (k1, V), (k2, W) in itertools.product(mods, mods):
        res = decompose_outer(V, W)
        want = predicted_outer(V.kind, W.kind)
        ok = res["kind"] == want
        if want == "M+PiM":
            ok = ok and res["dims"][0] == res["dims"][1] == V.dim * W.dim // 2 \
                and res["constituent_kind"] == "M" and res["odd_swap"]
        rows.append({"left": k1, "right": k2, "got": res["kind"], "dims": res["dims"], "ok": ok})
    return {"rows": rows, "ok": all(r["ok"] for r in rows)}


# ---------------------------------------------------------------- bounds

def direct_sum_bound(summands, p):
    """p^{d0'/2} 2^{(d1'+l)/2}, l = number of summands with odd d1."""
    d0 = sum(a for a, _ in summands)
    d1 = sum(b for _, b in summands)
    l = sum(1 for _, b in summands if b % 2)
    if d0 % 2 or (d1 + l) % 2:
        raise ValueError("parity mismatch in the summand data")
    return {"d0": d0, "d1": d1, "l": l, "p": p, "bound": p ** (d0 // 2) * 2 ** ((d1 + l) // 2),
            "p_exponent": d0 // 2, "two_exponent": (d1 + l) // 2}


def single_bound(d0, d1, p):
    return p ** (d0 // 2) * 2 ** (d1 // 2)


def _dims_of(alg, vecs):
    pars = [alg.parity_of(v) for v in vecs]
    return pars.count(0), pars.count(1)


def levi_data(alg, x):
    """Jordan decomposition x = s + n, the Levi split of g^s, and per-summand d-counters of n."""
    from .nilpotent_frame import centralizer, jordan_decompose, levi_split, project_to_summand
    s, n = jordan_decompose(alg, x)
    split = levi_split(alg, s)
    per = []
    for k, sm in enumerate(split["summands"]):
        nk = project_to_summand(alg, split, n, k)
        cen = centralizer(sm, nk)
        c0, c1 = _dims_of(sm, cen)
        per.append({"tag": sm.tag, "dims": sm.dims, "d0": sm.dims[0] - c0, "d1": sm.dims[1] - c1})
    l0, l1 = split["dims"]["centralizer"]
    g0, g1 = alg.dims
    u0, u1 = (g0 - l0) // 2, (g1 - l1) // 2
    return {"s": s, "n": n, "split": split, "summands": per, "u_dims": (u0, u1),
            "levi_dims": (l0, l1)}


def arbitrary_char_bound(alg, x, p, data=None):
    """Bound p^{d0/2} 2^{floor(d1/2)} from the Levi route, compared with direct counters."""
    from .nilpotent_frame import centralizer
    data = data or levi_data(alg, x)
    u0, u1 = data["u_dims"]
    d0 = 2 * u0 + sum(sm["d0"] for sm in data["summands"])
    d1 = 2 * u1 + sum(sm["d1"] for sm in data["summands"])
    cen = centralizer(alg, x)
    c0, c1 = _dims_of(alg, cen)
    direct = (alg.dims[0] - c0, alg.dims[1] - c1)
    odd = sum(1 for sm in data["summands"] if sm["d1"] % 2)
    levi_part = direct_sum_bound([(sm["d0"], sm["d1"]) for sm in data["summands"]], p)
    composed = levi_part["bound"] * p ** u0 * 2 ** u1
    attain = p ** (d0 // 2) * 2 ** ((d1 + levi_part["l"]) // 2)
    return {"d0": d0, "d1": d1, "direct": list(direct), "agree": (d0, d1) == direct,
            "bound": single_bound(d0, d1, p), "p": p, "p_exponent": d0 // 2, "two_exponent": d1 // 2,
            "odd_summands": odd, "violation": odd > 1, "u_dims": [u0, u1],
            "summands": [{k: v for k, v in sm.items()} for sm in data["summands"]],
            "attainability": {"levi_bound": levi_part["bound"], "composed": composed,
                              "closed_form": attain, "holds": composed == attain}}
