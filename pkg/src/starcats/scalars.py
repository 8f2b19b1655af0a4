"""Exact Gaussian rationals and the bit of linear algebra the linear categories need."""

import re
from fractions import Fraction

_TERM = re.compile(r"\s*([+-]?)\s*([0-9]+(?:/[0-9]+)?)?\s*(\*?\s*i)?\s*")


class GaussQ:
    """An element re + im*i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        return cls(x)

    @classmethod
    def parse(cls, text):
        """Parse strings like ``"1/2+3/4*i"``, ``"-i"`` or ``"2"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty scalar")
        re_part, im_part = Fraction(0), Fraction(0)
        pos = 0
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse scalar {text!r}")
            sign, num, imag = m.groups()
            if num is None and imag is None:
                raise ValueError(f"cannot parse scalar {text!r}")
            value = Fraction(num) if num is not None else Fraction(1)
            if sign == "-":
                value = -value
            if imag:
                im_part += value
            else:
                re_part += value
            pos = m.end()
        return cls(re_part, im_part)

    def conj(self):
        return GaussQ(self.re, -self.im)

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return GaussQ(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return GaussQ(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _lift(other) - self

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return GaussQ(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * GaussQ(other.re / n, -other.im / n)

    def __rtruediv__(self, other):
        return _lift(other) / self

    def __eq__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussQ({self})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


def _lift(x):
    if isinstance(x, GaussQ):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussQ(x)
    return NotImplemented


ZERO = GaussQ(0)
ONE = GaussQ(1)
I = GaussQ(0, 1)


# vectors are tuples of GaussQ

def vzero(n):
    return (ZERO,) * n


def vunit(n, i):
    return tuple(ONE if k == i else ZERO for k in range(n))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def vconj(v):
    return tuple(a.conj() for a in v)


def is_zero(v):
    return not any(v)


def rref(rows, ncols):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((k for k in range(r, len(m)) if m[k][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c]:
                f = m[k][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(vectors, ncols):
    return len(rref(vectors, ncols)[1])


def nullspace(rows, ncols):
    """Basis of {x : row . x = 0 for every row}, in a canonical order."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [ZERO] * ncols
        x[fc] = ONE
        for row, pc in zip(red, pivots):
            x[pc] = -row[fc]
        basis.append(tuple(x))
    return basis


def coordinates(basis, v):
    """Solve sum c_k basis[k] = v; None when v is outside the span."""
    n = len(v)
    k = len(basis)
    if k == 0:
        return () if is_zero(v) else None
    # columns are basis vectors, augmented with v
    rows = [tuple(basis[j][i] for j in range(k)) + (v[i],) for i in range(n)]
    red, pivots = rref(rows, k + 1)
    if k in pivots:
        return None
    if len(pivots) < k:
        raise ValueError("basis vectors are linearly dependent")
    coords = [ZERO] * k
    for row, pc in zip(red, pivots):
        coords[pc] = row[k]
    return tuple(coords)
