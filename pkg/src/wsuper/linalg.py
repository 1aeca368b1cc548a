"""Exact sparse linear algebra over any field whose elements support + - * /."""
from fractions import Fraction


class Echelon:
    """Incrementally echelonized span of sparse vectors (dicts key -> scalar).

    Every stored row has its largest key (in the natural order of the keys)
    as pivot with coefficient 1, and remembers which inputs it came from, so
    the class can both test membership and express a vector in the inputs.
    """

    def __init__(self):
        self.rows = {}
        self.count = 0

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec):
        """Return (remainder, combo): vec = remainder + sum combo[tag]*input[tag]."""
        vec = {k: c for k, c in vec.items() if c}
        combo = {}
        while True:
            hits = [k for k in vec if k in self.rows]
            if not hits:
                return vec, combo
            k = max(hits)
            c = vec[k]
            row, rc = self.rows[k]
            for kk, vv in row.items():
                nv = vec.get(kk, 0) - c * vv
                if nv:
                    vec[kk] = nv
                else:
                    vec.pop(kk, None)
            for t, vv in rc.items():
                nv = combo.get(t, 0) + c * vv
                if nv:
                    combo[t] = nv
                else:
                    combo.pop(t, None)

    def add(self, vec, tag=None):
        """Insert vec. Returns None if it was independent, else the dependency
        {tag: coeff} with vec == sum coeff * input[tag]."""
        if tag is None:
            tag = self.count
        self.count += 1
        rem, combo = self.reduce(vec)
        if not rem:
            return combo
        k = max(rem)
        piv = rem[k]
        inv = Fraction(1, piv) if isinstance(piv, int) else 1 / piv
        row = {kk: vv * inv for kk, vv in rem.items()}
        rc = {t: -vv * inv for t, vv in combo.items()}
        rc[tag] = rc.get(tag, 0) + inv
        self.rows[k] = (row, {t: v for t, v in rc.items() if v})
        return None

    def express(self, vec):
        rem, combo = self.reduce(vec)
        return None if rem else combo

    def contains(self, vec):
        return not self.reduce(vec)[0]


def kernel(columns, one=Fraction(1)):
    """Kernel of the linear map sending unknown j to the sparse vector columns[j].

    Returns a list of sparse kernel vectors {j: coeff}; the i-th one has its
    largest index j with coefficient 1, and those largest indices are distinct.
    """
    ech = Echelon()
    out = []
    for j, col in enumerate(columns):
        dep = ech.add(col, tag=j)
        if dep is not None:
            v = {t: -c for t, c in dep.items()}
            v[j] = one
            out.append({t: c for t, c in v.items() if c})
    return out


def to_sparse(vec):
    return {i: c for i, c in enumerate(vec) if c}


def to_dense(vec, n, zero=0):
    out = [zero] * n
    for i, c in vec.items():
        out[i] = c
    return out


def rank(vectors):
    ech = Echelon()
    for v in vectors:
        ech.add(v if isinstance(v, dict) else to_sparse(v))
    return len(ech)


def span_basis(vectors):
    """Indices of a maximal independent subfamily (first-come order)."""
    ech = Echelon()
    keep = []
    for i, v in enumerate(vectors):
        if ech.add(v if isinstance(v, dict) else to_sparse(v)) is None:
            keep.append(i)
    return keep


def same_span(a, b):
    ea, eb = Echelon(), Echelon()
    for v in a:
        ea.add(v if isinstance(v, dict) else to_sparse(v))
    for v in b:
        eb.add(v if isinstance(v, dict) else to_sparse(v))
    return len(ea) == len(eb) and all(ea.contains(v if isinstance(v, dict) else to_sparse(v)) for v in b)


def nullspace(rows, ncols, zero=Fraction(0)):
    """Dense nullspace of the matrix with the given rows: vectors x with rows @ x = 0."""
    cols = []
    for j in range(ncols):
        cols.append({i: r[j] for i, r in enumerate(rows) if r[j]})
    return [to_dense(v, ncols, zero) for v in kernel(cols, zero + 1)]


def solve(rows, rhs, ncols, zero=Fraction(0)):
    """One solution x of rows @ x = rhs, or None."""
    cols = []
    for j in range(ncols):
        cols.append({i: r[j] for i, r in enumerate(rows) if r[j]})
    ech = Echelon()
    for j, c in enumerate(cols):
        ech.add(c, tag=j)
    combo = ech.express({i: b for i, b in enumerate(rhs) if b})
    if combo is None:
        return None
    return to_dense(combo, ncols, zero)


def matmul(a, b):
    n, m = len(a), len(b[0]) if b else 0
    out = []
    for i in range(n):
        ai = a[i]
        row = []
        for j in range(m):
            s = 0
            for k, x in enumerate(ai):
                if x:
                    y = b[k][j]
                    if y:
                        s = s + x * y
            row.append(s)
        out.append(row)
    return out


def matvec(a, v):
    out = []
    for row in a:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def identity(n, one=1, zero=0):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def inverse(a, one=1, zero=0):
    n = len(a)
    m = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = one / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [r[n:] for r in m]


def determinant(a, one=1):
    n = len(a)
    m = [list(r) for r in a]
    det = one
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return 0 * one
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = one / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def transpose(a):
    return [list(r) for r in zip(*a)] if a else []
