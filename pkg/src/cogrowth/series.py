"""Exact integer polynomials, rational functions and the transfer-matrix series.

Everything here uses Python's arbitrary precision integers; nothing is ever
rounded. Polynomials are in one variable ``z`` and stored with ascending
coefficients.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence


class Poly:
    """Immutable polynomial with integer coefficients, ascending order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "Poly":
        return cls([0] * degree + [coeff])

    @classmethod
    def const(cls, a: int) -> "Poly":
        return cls([a])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self)

    def __call__(self, z):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * z + a
        return acc

    def __neg__(self) -> "Poly":
        return Poly(-a for a in self.coeffs)

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            return Poly(a * other for a in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        """Division with remainder; the divisor must have leading coefficient +-1
        or divide the dividend's coefficients exactly as the division proceeds."""
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.coeffs
        lead = d[-1]
        q = [0] * max(len(rem) - len(d) + 1, 0)
        for k in range(len(rem) - len(d), -1, -1):
            a = rem[k + len(d) - 1]
            if a == 0:
                continue
            if a % lead:
                raise ArithmeticError(
                    f"{self!r} is not divisible by {other!r} over the integers"
                )
            t = a // lead
            q[k] = t
            for j, b in enumerate(d):
                rem[k + j] -= t * b
        return Poly(q), Poly(rem)

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        """Quotient of an exact division; raises if there is a remainder."""
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{self!r} is not a multiple of {other!r}")
        return q

    def content(self) -> int:
        g = reduce(math.gcd, self.coeffs, 0)
        if self.coeffs and self.coeffs[-1] < 0:
            g = -g
        return g

    def primitive(self) -> "Poly":
        """Primitive part with positive leading coefficient."""
        g = self.content()
        return Poly(a // g for a in self.coeffs) if g else Poly()

    def shift(self, k: int) -> "Poly":
        """Multiply by z**k."""
        return Poly([0] * k + list(self.coeffs)) if self.coeffs else Poly()


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, int):
        return Poly.const(x)
    raise TypeError(f"cannot treat {x!r} as a polynomial")


Z = Poly([0, 1])
ONE = Poly([1])
ZERO = Poly()


def pseudo_rem(a: Poly, b: Poly) -> Poly:
    """Remainder of lead(b)**(deg a - deg b + 1) * a by b."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    if a.degree < b.degree:
        return a
    k = a.degree - b.degree + 1
    return divmod(a * (b.lead**k), b)[1]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor over Z[z] via the primitive remainder sequence.

    The result is primitive with positive leading coefficient; since Z[z] is a
    gcd domain this is also the gcd over Q[z] up to a rational unit.
    """
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = pseudo_rem(a, b)
        a, b = b, (r.primitive() if r else r)
    return a.primitive()


def format_poly(p: Poly, var: str = "z") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for k, a in enumerate(p.coeffs):
        if a == 0:
            continue
        mag = abs(a)
        if k == 0:
            body = str(mag)
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if mag == 1 else f"{mag}*{power}"
        sign = "-" if a < 0 else "+"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


class RationalFunction:
    """Quotient of integer polynomials kept in a canonical form.

    Numerator and denominator are coprime, the combined content of their
    coefficients is 1, and the denominator has positive constant term (or
    positive leading coefficient if its constant term vanishes). Equal
    rational functions therefore have identical representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        c = math.gcd(reduce(math.gcd, num.coeffs, 0), reduce(math.gcd, den.coeffs, 0))
        num = Poly(a // c for a in num.coeffs)
        den = Poly(a // c for a in den.coeffs)
        pivot = den.coeffs[0] if den.coeffs[0] else den.lead
        if pivot < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    @classmethod
    def from_json(cls, data: dict) -> "RationalFunction":
        return cls(Poly(data["num"]), Poly(data["den"]))

    def to_json(self) -> dict:
        return {"num": list(self.num.coeffs) or [0], "den": list(self.den.coeffs)}

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Poly)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        # cross-multiplication keeps this correct even for non-canonical input
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-_as_rf(other))

    def __rsub__(self, other) -> "RationalFunction":
        return _as_rf(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __call__(self, z):
        d = self.den(z)
        n = self.num(z)
        if isinstance(z, (int, Fraction)):
            return Fraction(n, 1) / d
        return n / d

    def __repr__(self) -> str:
        return f"RationalFunction({list(self.num.coeffs)}, {list(self.den.coeffs)})"

    def __str__(self) -> str:
        if self.den == ONE:
            return format_poly(self.num)
        return f"({format_poly(self.num)}) / ({format_poly(self.den)})"

    def is_normalized(self) -> bool:
        return RationalFunction(self.num, self.den).to_json() == self.to_json()


def _as_rf(x) -> RationalFunction:
    return x if isinstance(x, RationalFunction) else RationalFunction(x)


def series_coefficients(f: RationalFunction, count: int) -> list:
    """Taylor coefficients c_0..c_count of ``f`` at z = 0.

    Uses the linear recurrence given by the denominator. Coefficients are
    returned as ints whenever they are integral (always, for cogrowth series).
    """
    den = f.den.coeffs
    num = f.num.coeffs
    d0 = den[0]
    if d0 == 0:
        raise ZeroDivisionError("rational function has a pole at the origin")
    out: list = []
    for n in range(count + 1):
        acc = num[n] if n < len(num) else 0
        for k in range(1, min(n, len(den) - 1) + 1):
            acc -= den[k] * out[n - k]
        if isinstance(acc, int) and acc % d0 == 0:
            out.append(acc // d0)
        else:
            out.append(Fraction(acc) / d0)
    return out


def cogrowth_free_group(rank: int) -> RationalFunction:
    """Cogrowth series of F_m itself: 1 + 2m z / (1 - (2m-1) z)."""
    if rank < 1:
        raise ValueError("rank must be positive")
    return RationalFunction(1) + RationalFunction(Poly([0, 2 * rank]), Poly([1, -(2 * rank - 1)]))


# ---------------------------------------------------------------- determinants


def bareiss_det(rows: Sequence[Sequence], divide=None):
    """Determinant by fraction-free Bareiss elimination.

    ``rows`` may hold ints or :class:`Poly` entries; every division performed
    is exact. ``divide(a, b)`` overrides the exact quotient (defaults to ``//``
    for ints and :meth:`Poly.exact_div` for polynomials).
    """
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    poly = any(isinstance(x, Poly) for r in a for x in r)
    zero = ZERO if poly else 0
    if poly:
        a = [[_as_poly(x) for x in r] for r in a]
    if divide is None:
        divide = Poly.exact_div if poly else (lambda p, q: p // q)
    sign = 1
    prev = ONE if poly else 1
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return zero
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                if lead:
                    val = row_i[j] * pivot - lead * row_k[j]
                else:
                    val = row_i[j] * pivot
                row_i[j] = divide(val, prev) if val else zero
            row_i[k] = zero
        prev = pivot
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def _degree_bound(rows: Sequence[Sequence[Poly]]) -> int:
    total = 0
    for r in rows:
        d = max((p.degree for p in r), default=-1)
        if d < 0:
            return -1
        total += d
    return total


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> Poly:
    """Newton interpolation through integer points; result must be integral."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand the Newton form into monomial coefficients
    result = [Fraction(0)] * n
    basis = [Fraction(1)]
    for k in range(n):
        for i, b in enumerate(basis):
            result[i] += coef[k] * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, b in enumerate(basis):
            nxt[i + 1] += b
            nxt[i] -= xs[k] * b
        basis = nxt
    if any(c.denominator != 1 for c in result):
        raise ArithmeticError("interpolated determinant is not integral")
    return Poly(int(c) for c in result)


# Polynomial Bareiss costs grow like n^5; above this size the determinant is
# evaluated at integer points (integer Bareiss) and interpolated instead.
INTERPOLATION_THRESHOLD = 10


def det(matrix: Sequence[Sequence]) -> Poly:
    """Exact determinant of a square matrix of polynomials."""
    rows = [[_as_poly(x) for x in r] for r in matrix]
    n = len(rows)
    if n == 0:
        return ONE
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n <= INTERPOLATION_THRESHOLD:
        return bareiss_det(rows)
    bound = _degree_bound(rows)
    if bound < 0:
        return ZERO
    xs = list(range(bound + 1))
    ys = [bareiss_det([[p(x) for p in r] for r in rows]) for x in xs]
    return _interpolate(xs, ys)


def minor(matrix: Sequence[Sequence], row: int, col: int) -> list[list]:
    """Matrix with the given row and column removed."""
    return [[x for j, x in enumerate(r) if j != col] for i, r in enumerate(matrix) if i != row]


def transfer_matrix(counts: Sequence[Sequence[int]]) -> list[list[Poly]]:
    """The polynomial matrix I - z M."""
    n = len(counts)
    return [
        [Poly([1 if i == j else 0, -counts[i][j]]) for j in range(n)] for i in range(n)
    ]


def path_series(
    counts: Sequence[Sequence[int]], sources: Iterable[int], targets: Iterable[int]
) -> RationalFunction:
    """Generating function of walks from ``sources`` to ``targets``.

    Each entry of (I - zM)^-1 is evaluated by the cofactor formula
    ``(-1)^(i+j) det(I - zM : j, i) / det(I - zM)`` and the entries are summed
    over the common denominator.
    """
    sources, targets = list(sources), sorted(targets)
    a = transfer_matrix(counts)
    if not a:
        return RationalFunction(0)
    denominator = det(a)
    numerator = ZERO
    for i in sources:
        for j in targets:
            cof = det(minor(a, j, i))
            numerator = numerator + (cof if (i + j) % 2 == 0 else -cof)
    return RationalFunction(numerator, denominator)
