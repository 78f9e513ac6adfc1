"""Exact arithmetic in the Eisenstein ring O = Z + Z*w.

Here w is the primitive 6th root of unity exp(2*pi*i/6), so w**2 = w - 1,
conj(w) = 1 - w and theta = w - conj(w) = 2w - 1 is a square root of -3.

An :class:`Eis` normally has integer coordinates.  Coordinates may also be
``Fraction`` instances, in which case the value lives in the field Q(w);
this is only used where an intermediate quantity is allowed to leave O.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Number = Union[int, Fraction]


def _tidy(x: Number) -> Number:
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


class Eis:
    """The element a + b*w."""

    __slots__ = ("a", "b")

    def __init__(self, a: Number = 0, b: Number = 0) -> None:
        self.a = _tidy(a)
        self.b = _tidy(b)

    # -- construction helpers -------------------------------------------

    @classmethod
    def coerce(cls, x: "Eis | Number") -> "Eis":
        if isinstance(x, Eis):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot interpret {x!r} as an Eisenstein number")

    @classmethod
    def from_json(cls, pair) -> "Eis":
        a, b = pair
        return cls(int(a), int(b))

    def to_json(self) -> list:
        if self.is_integral():
            return [self.a, self.b]
        return [str(self.a), str(self.b)]

    @property
    def pair(self) -> tuple:
        return (self.a, self.b)

    def is_integral(self) -> bool:
        return isinstance(self.a, int) and isinstance(self.b, int)

    # -- ring structure ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Eis):
            return Eis(self.a + other.a, self.b + other.b)
        if isinstance(other, (int, Fraction)):
            return Eis(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "Eis":
        return Eis(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, Eis):
            return Eis(self.a - other.a, self.b - other.b)
        if isinstance(other, (int, Fraction)):
            return Eis(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Eis):
            # (a + bw)(c + dw) = ac + (ad + bc)w + bd(w - 1)
            bd = self.b * other.b
            return Eis(self.a * other.a - bd, self.a * other.b + self.b * other.a + bd)
        if isinstance(other, (int, Fraction)):
            return Eis(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Eis":
        if n < 0:
            return (ONE / self) ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Eis":
        return Eis(self.a + self.b, -self.b)

    def norm(self) -> Number:
        return self.a * self.a + self.a * self.b + self.b * self.b

    def real(self) -> Number:
        return _tidy(self.a + Fraction(self.b, 2))

    def __truediv__(self, other) -> "Eis":
        other = Eis.coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(w)")
        num = self * other.conjugate()
        return Eis(Fraction(num.a) / n, Fraction(num.b) / n)

    def __rtruediv__(self, other) -> "Eis":
        return Eis.coerce(other) / self

    def exact_div(self, other: "Eis | int") -> "Eis":
        """Quotient in O; raises ArithmeticError if ``other`` does not divide."""
        q = self / other
        if not q.is_integral():
            raise ArithmeticError(f"{other} does not divide {self} in O")
        return q

    def divides(self, other: "Eis | int") -> bool:
        if self == 0:
            return other == 0
        return (Eis.coerce(other) / self).is_integral()

    def __divmod__(self, other) -> tuple:
        return euclidean_divmod(self, other)

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Eis):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __repr__(self) -> str:
        return f"Eis({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return "w" if self.b == 1 else ("-w" if self.b == -1 else f"{self.b}w")
        sign = "+" if self.b > 0 else "-"
        mag = abs(self.b)
        return f"{self.a}{sign}{'' if mag == 1 else mag}w"


ZERO = Eis(0, 0)
ONE = Eis(1, 0)
OMEGA = Eis(0, 1)
THETA = Eis(-1, 2)

_UNITS = (Eis(1, 0), Eis(0, 1), Eis(-1, 1), Eis(-1, 0), Eis(0, -1), Eis(1, -1))


def units() -> tuple:
    """The six units w**0, ..., w**5, in that order."""
    return _UNITS


def is_unit(x: Eis) -> bool:
    return Eis.coerce(x).norm() == 1


def omega_power(k: int) -> Eis:
    return _UNITS[k % 6]


def reduce_mod_theta(x: "Eis | int") -> int:
    """Image of x under O -> O/theta*O = F_3, as an integer in {0, 1, 2}.

    w is congruent to -1 modulo theta, so a + b*w maps to a - b.
    """
    x = Eis.coerce(x)
    return (x.a - x.b) % 3


def _round_candidates(p: int, n: int) -> tuple:
    lo = p // n
    return (lo, lo + 1)


def euclidean_divmod(x: "Eis | int", y: "Eis | int") -> tuple:
    """Return (q, r) with x = q*y + r and norm(r) < norm(y).

    The quotient is the point of the hexagonal lattice nearest to x/y (ties
    broken by candidate order), so in fact norm(r) <= 3/4 * norm(y).
    """
    x, y = Eis.coerce(x), Eis.coerce(y)
    n = y.norm()
    if n == 0:
        raise ZeroDivisionError("Euclidean division by zero")
    num = x * y.conjugate()
    best = None
    for qa in _round_candidates(num.a, n):
        for qb in _round_candidates(num.b, n):
            q = Eis(qa, qb)
            r = x - q * y
            rn = r.norm()
            if best is None or rn < best[0]:
                best = (rn, q, r)
    return best[1], best[2]


def normalize_associate(x: Eis) -> Eis:
    """The unit multiple of x with argument in [0, 60) degrees (0 stays 0)."""
    x = Eis.coerce(x)
    if x == 0:
        return x
    for u in _UNITS:
        y = u * x
        if y.a > 0 and y.b >= 0:
            return y
    raise AssertionError("unreachable: some associate lies in the first sextant")


def gcd(x: "Eis | int", y: "Eis | int") -> Eis:
    """A generator of the ideal (x, y), normalized by :func:`normalize_associate`."""
    x, y = Eis.coerce(x), Eis.coerce(y)
    while y != 0:
        _, r = euclidean_divmod(x, y)
        x, y = y, r
    return normalize_associate(x)


def xgcd(x: "Eis | int", y: "Eis | int") -> tuple:
    """Return (g, s, t) with g = s*x + t*y generating (x, y); g normalized."""
    x, y = Eis.coerce(x), Eis.coerce(y)
    s0, t0, s1, t1 = ONE, ZERO, ZERO, ONE
    while y != 0:
        q, r = euclidean_divmod(x, y)
        x, y = y, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if x == 0:
        return x, s0, t0
    g = normalize_associate(x)
    u = g.exact_div(x)
    return g, u * s0, u * t0


def parse_eis(obj) -> Eis:
    """Accept an int, an [a, b] pair or an Eis."""
    if isinstance(obj, Eis):
        return obj
    if isinstance(obj, int):
        return Eis(obj, 0)
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return Eis(int(obj[0]), int(obj[1]))
    raise ValueError(f"not an Eisenstein integer: {obj!r}")
