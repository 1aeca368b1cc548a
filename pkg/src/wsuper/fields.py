"""Exact scalar fields: rationals, prime fields and one quadratic extension of Q."""
from fractions import Fraction
from math import isqrt


def parse_rational(s):
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s).strip())


def fmt_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class ModInt:
    """Element of the prime field F_p."""
    __slots__ = ("v", "p")

    def __init__(self, v, p):
        if isinstance(v, Fraction):
            if v.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {v} vanishes mod {p}")
            v = v.numerator * pow(v.denominator, -1, p)
        self.v = int(v) % p
        self.p = p

    def _coerce(self, o):
        if isinstance(o, ModInt):
            if o.p != self.p:
                raise ValueError("mixed characteristics")
            return o.v
        if isinstance(o, (int, Fraction)):
            return ModInt(o, self.p).v
        return None

    def __add__(self, o):
        w = self._coerce(o)
        return NotImplemented if w is None else ModInt(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._coerce(o)
        return NotImplemented if w is None else ModInt(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._coerce(o)
        return NotImplemented if w is None else ModInt(w - self.v, self.p)

    def __mul__(self, o):
        w = self._coerce(o)
        return NotImplemented if w is None else ModInt(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        w = self._coerce(o)
        if w is None:
            return NotImplemented
        if w == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModInt(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, o):
        w = self._coerce(o)
        if w is None:
            return NotImplemented
        return ModInt(w, self.p) / self

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if k < 0:
            return ModInt(pow(self.v, -1, self.p), self.p) ** (-k)
        return ModInt(pow(self.v, k, self.p), self.p)

    def __eq__(self, o):
        w = self._coerce(o) if not isinstance(o, ModInt) or o.p == self.p else None
        return w is not None and w == self.v

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


class QuadElt:
    """a + b*sqrt(q) with a, b, q rational and q not a rational square."""
    __slots__ = ("a", "b", "q")

    def __init__(self, a, b, q):
        self.a, self.b, self.q = Fraction(a), Fraction(b), Fraction(q)

    def _coerce(self, o):
        if isinstance(o, QuadElt):
            if o.q != self.q:
                raise ValueError("different quadratic extensions")
            return o
        if isinstance(o, (int, Fraction)):
            return QuadElt(o, 0, self.q)
        return None

    def __add__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is None else QuadElt(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is None else QuadElt(self.a - o.a, self.b - o.b, self.q)

    def __rsub__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is None else o - self

    def __mul__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return QuadElt(self.a * o.a + self.q * self.b * o.b, self.a * o.b + self.b * o.a, self.q)

    __rmul__ = __mul__

    def norm(self):
        return self.a * self.a - self.q * self.b * self.b

    def __truediv__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt q)")
        return self * QuadElt(o.a / n, -o.b / n, self.q)

    def __rtruediv__(self, o):
        o = self._coerce(o)
        return NotImplemented if o is None else o / self

    def __neg__(self):
        return QuadElt(-self.a, -self.b, self.q)

    def __pow__(self, k):
        r = QuadElt(1, 0, self.q)
        base = self if k >= 0 else QuadElt(1, 0, self.q) / self
        for _ in range(abs(k)):
            r = r * base
        return r

    def __eq__(self, o):
        o = self._coerce(o) if isinstance(o, (QuadElt, int, Fraction)) else None
        return o is not None and self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b, self.q)) if self.b else hash(self.a)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"{fmt_rational(self.a)} + {fmt_rational(self.b)}*sqrt({fmt_rational(self.q)})"

    __str__ = __repr__


class Field:
    """Tags which scalar type a computation uses; converts rationals into it."""

    def __init__(self, kind, p=None, q=None):
        self.kind, self.p, self.q = kind, p, q
        if kind == "Fp" and (p is None or p < 2 or any(p % d == 0 for d in range(2, isqrt(p) + 1))):
            raise ValueError(f"{p} is not prime")
        if kind == "quad":
            q = Fraction(q)
            if q == 0 or is_rational_square(q):
                raise ValueError("quadratic extension needs a non-square")
            self.q = q

    def __call__(self, x):
        if self.kind == "Q":
            if isinstance(x, QuadElt):
                if x.b:
                    raise ValueError("irrational value in Q")
                return x.a
            return Fraction(x) if not isinstance(x, ModInt) else _bad(x)
        if self.kind == "Fp":
            if isinstance(x, ModInt):
                return x
            if isinstance(x, str):
                x = Fraction(x)
            return ModInt(x, self.p)
        if isinstance(x, QuadElt):
            return x
        return QuadElt(x, 0, self.q)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def sqrt(self):
        if self.kind != "quad":
            raise ValueError("no square root available")
        return QuadElt(0, 1, self.q)

    def __eq__(self, o):
        return isinstance(o, Field) and (self.kind, self.p, self.q) == (o.kind, o.p, o.q)

    def __hash__(self):
        return hash((self.kind, self.p, self.q))

    def __repr__(self):
        if self.kind == "Q":
            return "QQ"
        if self.kind == "Fp":
            return f"GF({self.p})"
        return f"Q(sqrt({fmt_rational(self.q)}))"


def _bad(x):
    raise ValueError(f"cannot view {x!r} as a rational")


QQ = Field("Q")


def GF(p):
    return Field("Fp", p=p)


def QuadraticField(q):
    return Field("quad", q=q)


def is_rational_square(q):
    q = Fraction(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def squarefree_part(q):
    """Return (c, r) with q = c * r**2, c a squarefree integer and r rational."""
    q = Fraction(q)
    if q == 0:
        return 0, Fraction(0)
    n = q.numerator * q.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    c, r, d = 1, 1, 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            r *= d
        if n % d == 0:
            n //= d
            c *= d
        d += 1
    c *= n
    return sign * c, Fraction(r, q.denominator)


def reduce_scalar(x, p):
    """Reduce a rational (or ModInt) modulo p."""
    return x if isinstance(x, ModInt) else ModInt(Fraction(x), p)


def to_json_scalar(x):
    if isinstance(x, ModInt):
        return x.v
    if isinstance(x, QuadElt):
        return {"a": fmt_rational(x.a), "b": fmt_rational(x.b), "sqrt": fmt_rational(x.q)}
    return fmt_rational(x)


def scalar_str(x):
    if isinstance(x, (ModInt, QuadElt)):
        return str(x)
    return fmt_rational(x)
