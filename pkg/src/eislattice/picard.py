"""The odd unimodular lattice I_{1,9} = Z l + Z e_1 + ... + Z e_9.

Vectors are tuples of 10 integers (l-coefficient first).  The form is
l.l = 1, e_i.e_i = -1, all other products 0.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

DIM = 10


class NotARoot(ValueError):
    pass


def vec(*coeffs) -> tuple:
    if len(coeffs) != DIM:
        raise ValueError("I_{1,9} vectors have 10 coordinates")
    return tuple(int(c) for c in coeffs)


def ell() -> tuple:
    return (1,) + (0,) * 9


def e(i: int) -> tuple:
    if not 1 <= i <= 9:
        raise ValueError("e_i is defined for i = 1..9")
    v = [0] * DIM
    v[i] = 1
    return tuple(v)


def add(*vs: Sequence[int]) -> tuple:
    return tuple(sum(c) for c in zip(*vs))


def scale(k: int, v: Sequence[int]) -> tuple:
    return tuple(k * c for c in v)


def dot(x: Sequence[int], y: Sequence[int]) -> int:
    return x[0] * y[0] - sum(a * b for a, b in zip(x[1:], y[1:]))


def gram() -> list:
    return [[1 if i == j == 0 else (-1 if i == j else 0) for j in range(DIM)] for i in range(DIM)]


def anticanonical_f() -> tuple:
    """f = 3l - e_1 - ... - e_9."""
    return (3,) + (-1,) * 9


def is_root(a: Sequence[int]) -> bool:
    return dot(a, anticanonical_f()) == 0 and dot(a, a) == -2


def simple_root_basis() -> list:
    """a_0 = l - e_1 - e_2 - e_3 and a_i = e_i - e_{i+1}, i = 1..8."""
    roots = [add(ell(), scale(-1, e(1)), scale(-1, e(2)), scale(-1, e(3)))]
    for i in range(1, 9):
        roots.append(add(e(i), scale(-1, e(i + 1))))
    return roots


def simple_root_dot_matrix() -> list:
    rs = simple_root_basis()
    return [[dot(a, b) for b in rs] for a in rs]


def reflect(a: Sequence[int], c: Sequence[int]) -> tuple:
    """s_a(c) = c + (a.c) a."""
    if not is_root(a):
        raise NotARoot("reflections are defined for roots only")
    k = dot(a, c)
    return tuple(x + k * y for x, y in zip(c, a))


def eichler_siegel(u: Sequence[int], c: Sequence[int]) -> tuple:
    """T_u(c) = c + (c.f) u - (c.u) f - 1/2 (u.u)(c.f) f, for u.f = 0."""
    f = anticanonical_f()
    if dot(u, f) != 0:
        raise ValueError("u must be orthogonal to f")
    uu = dot(u, u)
    cf = dot(c, f)
    cu = dot(c, u)
    half = Fraction(uu * cf, 2)
    if half.denominator != 1:
        raise ArithmeticError("non-integral Eichler-Siegel transformation")
    h = int(half)
    return tuple(ci + cf * ui - cu * fi - h * fi for ci, ui, fi in zip(c, u, f))


def exceptional_normalize(c: Sequence[int]) -> tuple:
    """The element e of c + Zf with e.e = -1 (requires c.f = 1)."""
    f = anticanonical_f()
    if dot(c, f) != 1:
        raise ValueError("c.f must equal 1")
    cc = dot(c, c)
    if cc % 2 == 0:
        raise ArithmeticError("c.c is even; impossible for c.f = 1 in I_{1,9}")
    k = (1 + cc) // 2
    return tuple(ci - k * fi for ci, fi in zip(c, f))


def affine_e8_cartan() -> list:
    """Cartan matrix of the tree with arms of lengths 1, 2, 5 at a trivalent node.

    Nodes: 0 is the short arm, 3 the trivalent node, 1-2 and 4-8 the other arms.
    """
    edges = [(0, 3)] + [(i, i + 1) for i in range(1, 8)]
    c = [[2 if i == j else 0 for j in range(9)] for i in range(9)]
    for i, j in edges:
        c[i][j] = c[j][i] = -1
    return c
