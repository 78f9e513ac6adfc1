"""Exact linear algebra over the Euclidean rings Z and O.

Matrices are lists of rows.  All routines accept either plain Python ints
(ring ``ZZ``) or :class:`~eislattice.ring.Eis` entries (ring ``OO``).
Row operations are always unimodular, so kernels come out saturated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .ring import ONE, ZERO, Eis, euclidean_divmod, normalize_associate


@dataclass(frozen=True)
class Ring:
    name: str
    zero: object
    one: object
    size: Callable
    divmod: Callable
    normalize: Callable  # (x) -> (unit, unit*x) with unit*x canonical
    exact_div: Callable


def _int_normalize(x: int):
    return (-1, -x) if x < 0 else (1, x)


def _eis_normalize(x: Eis):
    if x == 0:
        return ONE, x
    y = normalize_associate(x)
    return y.exact_div(x), y


def _int_exact_div(x: int, y: int) -> int:
    q, r = divmod(x, y)
    if r:
        raise ArithmeticError(f"{y} does not divide {x}")
    return q


ZZ = Ring("ZZ", 0, 1, abs, divmod, _int_normalize, _int_exact_div)
OO = Ring(
    "OO",
    ZERO,
    ONE,
    lambda x: x.norm(),
    euclidean_divmod,
    _eis_normalize,
    lambda x, y: x.exact_div(y),
)


def ring_of(rows: Sequence[Sequence]) -> Ring:
    for row in rows:
        for x in row:
            if isinstance(x, Eis):
                return OO
    return ZZ


def identity(n: int, ring: Ring) -> list:
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]


def transpose(rows: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*rows)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


@dataclass
class Echelon:
    rows: list  # echelon form E = U * M
    transform: list  # unimodular U
    pivots: list  # (row, col) pairs
    ring: Ring

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def pivot_values(self) -> list:
        return [self.rows[i][j] for i, j in self.pivots]


def echelon(matrix: Sequence[Sequence], ring: Ring | None = None, reduce_above: bool = True) -> Echelon:
    """Row echelon (Hermite) form with a unimodular transform.

    Pivots are normalized (positive over Z, first sextant over O); when
    ``reduce_above`` is set, entries above each pivot are reduced modulo it.
    """
    m = [list(r) for r in matrix]
    ring = ring or ring_of(m)
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    u = identity(nrows, ring)
    pivots = []
    prow = 0
    for col in range(ncols):
        if prow >= nrows:
            break
        while True:
            nz = [i for i in range(prow, nrows) if m[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: ring.size(m[i][col]))
            if best != prow:
                m[prow], m[best] = m[best], m[prow]
                u[prow], u[best] = u[best], u[prow]
            pivot = m[prow][col]
            done = True
            for i in range(prow + 1, nrows):
                if m[i][col] != 0:
                    q, _ = ring.divmod(m[i][col], pivot)
                    m[i] = [x - q * y for x, y in zip(m[i], m[prow])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[prow])]
                    if m[i][col] != 0:
                        done = False
            if done:
                break
        if prow < nrows and m[prow][col] != 0:
            unit, _ = ring.normalize(m[prow][col])
            if unit != ring.one:
                m[prow] = [unit * x for x in m[prow]]
                u[prow] = [unit * x for x in u[prow]]
            if reduce_above:
                pivot = m[prow][col]
                for i in range(prow):
                    if m[i][col] != 0:
                        q, _ = ring.divmod(m[i][col], pivot)
                        if q != 0:
                            m[i] = [x - q * y for x, y in zip(m[i], m[prow])]
                            u[i] = [x - q * y for x, y in zip(u[i], u[prow])]
            pivots.append((prow, col))
            prow += 1
    return Echelon(m, u, pivots, ring)


def row_span_basis(matrix: Sequence[Sequence], ring: Ring | None = None) -> list:
    """A basis of the row module (nonzero echelon rows)."""
    e = echelon(matrix, ring)
    return [e.rows[i] for i, _ in e.pivots]


def left_kernel(matrix: Sequence[Sequence], ring: Ring | None = None) -> list:
    """Basis of {y : y * M = 0}; always saturated."""
    if not matrix:
        return []
    e = echelon(matrix, ring)
    return [e.transform[i] for i in range(e.rank, len(matrix))]


def right_kernel(matrix: Sequence[Sequence], ncols: int, ring: Ring | None = None) -> list:
    """Basis of {x : M * x = 0} (as row vectors); always saturated."""
    ring = ring or ring_of(matrix)
    if not matrix:
        return identity(ncols, ring)
    return left_kernel(transpose(matrix), ring)


def saturation(rows: Sequence[Sequence], ncols: int, ring: Ring | None = None) -> list:
    """Basis of (Q-span of rows) intersected with the ambient free module."""
    ring = ring or ring_of(rows)
    rows = [list(r) for r in rows]
    ker = right_kernel(rows, ncols, ring) if rows else identity(ncols, ring)
    if not ker:
        return identity(ncols, ring)
    return left_kernel(transpose(ker), ring)


def index_in_saturation(rows: Sequence[Sequence], ncols: int, ring: Ring | None = None) -> int:
    """The Z-index of span(rows) in its saturation (1 iff primitive)."""
    ring = ring or ring_of(rows)
    if not rows:
        return 1
    e_span = echelon(rows, ring)
    e_sat = echelon(saturation(rows, ncols, ring), ring)
    if [c for _, c in e_span.pivots] != [c for _, c in e_sat.pivots]:
        raise AssertionError("span and saturation have different pivot columns")
    num = 1
    den = 1
    for x in e_span.pivot_values():
        num *= ring.size(x)
    for x in e_sat.pivot_values():
        den *= ring.size(x)
    idx = Fraction(num, den)
    if idx.denominator != 1:
        raise AssertionError("saturation does not contain the span")
    return int(idx)


def determinant(matrix: Sequence[Sequence], ring: Ring | None = None):
    """Fraction-free Bareiss determinant."""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return 1
    ring = ring or ring_of(m)
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return ring.zero
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = ring.exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def solve_field(matrix: Sequence[Sequence], rhs: Sequence) -> list:
    """Solve M x = rhs over Q or Q(w) for square nonsingular M."""
    n = len(matrix)
    is_eis = any(isinstance(x, Eis) for row in matrix for x in row) or any(
        isinstance(x, Eis) for x in rhs
    )
    conv = Eis.coerce if is_eis else Fraction
    a = [[conv(x) for x in row] + [conv(b)] for row, b in zip(matrix, rhs)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [a[i][n] for i in range(n)]


def reduce_modulo_rows(vec: Sequence, ech: Echelon) -> list:
    """Reduce ``vec`` by the echelon rows (division with remainder at pivots)."""
    v = list(vec)
    for i, j in ech.pivots:
        if v[j] != 0:
            q, _ = ech.ring.divmod(v[j], ech.rows[i][j])
            if q != 0:
                v = [x - q * y for x, y in zip(v, ech.rows[i])]
    return v
