"""Binary forms with rational coefficients and GIT stability of Weierstrass data."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class ZeroForm(ValueError):
    pass


# ---------------------------------------------------------------------------
# univariate helpers (coefficient lists, lowest degree first)


def _trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _deg(p: list) -> int:
    return len(_trim(p)) - 1


def _monic(p: list) -> list:
    p = _trim(p)
    lead = p[-1]
    return [Fraction(c) / lead for c in p]


def _derivative(p: list) -> list:
    return _trim([i * c for i, c in enumerate(p)][1:])


def _divmod(a: list, b: list) -> tuple:
    a = [Fraction(c) for c in _trim(a)]
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / b[-1]
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        a = _trim(a)
    return _trim(q), a


def _gcd(a: list, b: list) -> list:
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return _monic(a) if a else []


def square_free_decomposition(p: list) -> list:
    """Yun's algorithm: [a_1, a_2, ...] monic, square-free, pairwise coprime with p ~ prod a_i^i."""
    p = _trim([Fraction(c) for c in p])
    if not p:
        raise ZeroForm("zero polynomial")
    if len(p) == 1:
        return []
    out = []
    dp = _derivative(p)
    a0 = _gcd(p, dp)
    b = _divmod(p, a0)[0]
    c = _divmod(dp, a0)[0]
    d = [x - y for x, y in _pad(c, _derivative(b))]
    while _deg(b) > 0:
        a = _gcd(b, d)
        out.append(a)
        b = _divmod(b, a)[0]
        c = _divmod(d, a)[0]
        d = [x - y for x, y in _pad(c, _derivative(b))]
    while out and _deg(out[-1]) == 0:
        out.pop()
    return out


def _pad(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return list(zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b))))


# ---------------------------------------------------------------------------
# binary forms


def _frac(x) -> Fraction:
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


@dataclass(frozen=True)
class BinaryForm:
    """F(X, Y) = sum_i coeffs[i] X^i Y^(d-i); the point 0 is [0:1] and infinity is [1:0]."""

    degree: int
    coeffs: tuple

    def __post_init__(self) -> None:
        c = tuple(_frac(x) for x in self.coeffs)
        if len(c) != self.degree + 1:
            raise ValueError(f"a degree {self.degree} form needs {self.degree + 1} coefficients")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def monomial(cls, degree: int, i: int, c=1) -> "BinaryForm":
        """c X^i Y^(degree - i)."""
        coeffs = [0] * (degree + 1)
        coeffs[i] = c
        return cls(degree, tuple(coeffs))

    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls(degree, (0,) * (degree + 1))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("degrees differ")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            out = [Fraction(0)] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return BinaryForm(self.degree + other.degree, tuple(out))
        k = _frac(other)
        return BinaryForm(self.degree, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BinaryForm":
        out = BinaryForm(0, (1,))
        for _ in range(n):
            out = out * self
        return out

    def dehomogenize(self) -> list:
        """f(x) = F(x, 1) as a coefficient list."""
        return _trim(list(self.coeffs))

    def multiplicity_at_infinity(self) -> int:
        if self.is_zero():
            raise ZeroForm("zero form")
        return self.degree - _deg(self.dehomogenize())

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [str(c) for c in self.coeffs]}


def linear_form(a, b) -> BinaryForm:
    """a X + b Y (vanishes at [-b : a])."""
    return BinaryForm(1, (b, a))


def discriminant_form(f0: BinaryForm, f1: BinaryForm) -> BinaryForm:
    """f0^3 + f1^2 for f0 of degree 4 and f1 of degree 6."""
    if f0.degree != 4 or f1.degree != 6:
        raise ValueError("expected degrees 4 and 6")
    d = f0 ** 3 + f1 ** 2
    if d.is_zero():
        raise ZeroForm("f0^3 + f1^2 vanishes identically")
    return d


def _factor_data(form: BinaryForm) -> tuple:
    """(square-free parts of the affine polynomial, multiplicity at infinity)."""
    if form.is_zero():
        raise ZeroForm("zero form")
    return square_free_decomposition(form.dehomogenize()), form.multiplicity_at_infinity()


def multiplicity_profile(form: BinaryForm) -> tuple:
    """Root multiplicities over the algebraic closure, sorted decreasingly."""
    parts, inf = _factor_data(form)
    mults = []
    for i, a in enumerate(parts, start=1):
        mults += [i] * _deg(a)
    if inf:
        mults.append(inf)
    if sum(mults) != form.degree:
        raise AssertionError("profile does not add up to the degree")
    return tuple(sorted(mults, reverse=True))


class DivisorStability(enum.IntEnum):
    UNSTABLE = 0
    STRICTLY_SEMISTABLE = 1
    MINIMAL_STRICTLY_SEMISTABLE = 2
    STABLE = 3

    @property
    def level(self) -> int:
        """0 unstable, 1 semistable but not stable, 2 stable."""
        return {0: 0, 1: 1, 2: 1, 3: 2}[int(self)]


class PairStability(enum.IntEnum):
    UNSTABLE = 0
    SEMISTABLE_NOT_STABLE = 1
    STABLE = 2

    @property
    def level(self) -> int:
        return int(self)


def divisor_stability(profile: Sequence[int]) -> DivisorStability:
    prof = tuple(sorted((int(m) for m in profile), reverse=True))
    if sum(prof) != 12 or any(m <= 0 for m in prof):
        raise ValueError("a degree 12 divisor profile must be positive and sum to 12")
    top = prof[0]
    if top < 6:
        return DivisorStability.STABLE
    if prof == (6, 6):
        return DivisorStability.MINIMAL_STRICTLY_SEMISTABLE
    if top == 6:
        return DivisorStability.STRICTLY_SEMISTABLE
    return DivisorStability.UNSTABLE



def common_zero_orders(f0: BinaryForm, f1: BinaryForm) -> list:
    """min(3 ord_p f0, 2 ord_p f1) over the common zeros p, with multiplicity data.

    Returns a list of (order, number of such points).  Uses gcds of the
    square-free parts, so no roots are ever computed.
    """
    if f0.is_zero() and f1.is_zero():
        raise ZeroForm("both forms vanish")
    out = []
    if f0.is_zero() or f1.is_zero():
        nz, w = (f1, 2) if f0.is_zero() else (f0, 3)
        parts, inf = _factor_data(nz)
        for i, a in enumerate(parts, start=1):
            if _deg(a) > 0:
                out.append((w * i, _deg(a)))
        if inf:
            out.append((w * inf, 1))
        return out
    p0, inf0 = _factor_data(f0)
    p1, inf1 = _factor_data(f1)
    for i, a in enumerate(p0, start=1):
        for j, b in enumerate(p1, start=1):
            g = _gcd(a, b)
            if g and _deg(g) > 0:
                out.append((min(3 * i, 2 * j), _deg(g)))
    if inf0 and inf1:
        out.append((min(3 * inf0, 2 * inf1), 1))
    return out


def pair_stability(f0: BinaryForm, f1: BinaryForm) -> PairStability:
    orders = [k for k, _ in common_zero_orders(f0, f1)]
    worst = max(orders, default=0)
    if worst > 6:
        return PairStability.UNSTABLE
    if worst == 6:
        return PairStability.SEMISTABLE_NOT_STABLE
    return PairStability.STABLE


def minimal_ss_j_invariant(lam, mu) -> tuple:
    """[lam^3 : lam^3 + mu^2], normalized to [x : 1] or [1 : 0]."""
    lam, mu = _frac(lam), _frac(mu)
    if lam == 0 and mu == 0:
        raise ValueError("lambda and mu cannot both vanish")
    a = lam ** 3
    b = lam ** 3 + mu ** 2
    if b == 0:
        return (Fraction(1), Fraction(0))
    return (a / b, Fraction(1))
