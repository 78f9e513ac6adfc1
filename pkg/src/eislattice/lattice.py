"""Hermitian O-lattices given by Gram matrices.

The form psi is O-linear in its first argument:
psi(x, y) = sum_ij x_i * G[i][j] * conj(y_j), with G[i][j] = psi(b_i, b_j).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .ring import ONE, OMEGA, THETA, ZERO, Eis, omega_power, parse_eis, reduce_mod_theta


class LatticeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HermitianLattice:
    gram: tuple
    name: str = ""

    def __post_init__(self) -> None:
        gram = tuple(tuple(Eis.coerce(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if n == 0 or any(len(row) != n for row in gram):
            raise LatticeError("Gram matrix must be square and nonempty")
        for i in range(n):
            for j in range(n):
                if gram[i][j] != gram[j][i].conjugate():
                    raise LatticeError(f"Gram not Hermitian at ({i}, {j})")
                if reduce_mod_theta(gram[i][j]) != 0:
                    raise LatticeError(f"Gram entry ({i}, {j}) = {gram[i][j]} not in theta*O")

    def __eq__(self, other) -> bool:
        return isinstance(other, HermitianLattice) and self.gram == other.gram

    def __hash__(self) -> int:
        return hash(self.gram)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def __repr__(self) -> str:
        return f"HermitianLattice({self.name or self.rank})"

    def vector(self, coords: Iterable) -> "LatticeVector":
        return LatticeVector(self, tuple(parse_eis(c) if not isinstance(c, Eis) else c for c in coords))

    def basis_vector(self, i: int) -> "LatticeVector":
        return self.vector(ONE if j == i else ZERO for j in range(self.rank))

    def zero(self) -> "LatticeVector":
        return self.vector(ZERO for _ in range(self.rank))

    def basis(self) -> list:
        return [self.basis_vector(i) for i in range(self.rank)]

    def psi(self, x: Sequence, y: Sequence) -> Eis:
        """psi on raw coordinate tuples."""
        acc = ZERO
        g = self.gram
        ybar = [c.conjugate() for c in y]
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = g[i]
            s = ZERO
            for j, yj in enumerate(ybar):
                if yj != 0 and row[j] != 0:
                    s = s + row[j] * yj
            acc = acc + xi * s
        return acc

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": [[x.to_json() for x in row] for row in self.gram]}

    @classmethod
    def from_json(cls, obj: dict) -> "HermitianLattice":
        gram = [[parse_eis(x) for x in row] for row in obj["gram"]]
        if len(gram) != obj.get("rank", len(gram)):
            raise LatticeError("rank does not match Gram size")
        return cls(tuple(map(tuple, gram)))

    # -- underlying Z-lattice ----------------------------------------------

    @cached_property
    def _psi_int_parts(self) -> tuple:
        """Integer matrices A, B with psi(x, y) = x.A.y + (x.B.y) w on Z^{2n}.

        Z-basis order: b_1, w b_1, b_2, w b_2, ...
        """
        n = self.rank
        a = [[0] * (2 * n) for _ in range(2 * n)]
        b = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for s in range(2):
                for j in range(n):
                    for t in range(2):
                        v = omega_power(s) * omega_power(-t) * self.gram[i][j]
                        a[2 * i + s][2 * j + t] = v.a
                        b[2 * i + s][2 * j + t] = v.b
        return a, b


@dataclass(frozen=True, eq=False)
class LatticeVector:
    lattice: HermitianLattice
    coords: tuple

    def __post_init__(self) -> None:
        if len(self.coords) != self.lattice.rank:
            raise LatticeError(
                f"vector has {len(self.coords)} coordinates, lattice rank is {self.lattice.rank}"
            )

    def _check(self, other: "LatticeVector") -> None:
        if not isinstance(other, LatticeVector):
            raise TypeError("expected a LatticeVector")
        if other.lattice is not self.lattice and other.lattice != self.lattice:
            raise LatticeError("vectors belong to different lattices")

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(self.lattice, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(self.lattice, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(self.lattice, tuple(-x for x in self.coords))

    def __rmul__(self, scalar) -> "LatticeVector":
        s = Eis.coerce(scalar)
        return LatticeVector(self.lattice, tuple(s * x for x in self.coords))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticeVector):
            return NotImplemented
        return self.coords == other.coords and (
            self.lattice is other.lattice or self.lattice == other.lattice
        )

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"LatticeVector({[str(c) for c in self.coords]})"

    @property
    def key(self) -> tuple:
        """Canonical sort key: flattened (a, b) pairs."""
        return tuple(v for c in self.coords for v in (c.a, c.b))

    def flat(self) -> tuple:
        return self.key

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def norm(self) -> int:
        v = self.lattice.psi(self.coords, self.coords)
        return v.a

    def to_json(self) -> list:
        return [c.to_json() for c in self.coords]


def hermitian_product(lattice: HermitianLattice, x: LatticeVector, y: LatticeVector) -> Eis:
    for v in (x, y):
        if v.lattice is not lattice and v.lattice != lattice:
            raise LatticeError("vector not bound to this lattice")
    return lattice.psi(x.coords, y.coords)


def psi(x: LatticeVector, y: LatticeVector) -> Eis:
    x._check(y)
    return x.lattice.psi(x.coords, y.coords)


def phi(x: LatticeVector, y: LatticeVector) -> Eis:
    """The skew-Hermitian form -theta^{-1} psi."""
    return -(psi(x, y).exact_div(THETA))


# ---------------------------------------------------------------------------
# standard lattices


def lambda_gram(k: int) -> tuple:
    if k < 1:
        raise LatticeError("lambda(k) needs k >= 1")
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            if i == j:
                row.append(Eis(3))
            elif j == i + 1:
                row.append(THETA)
            elif i == j + 1:
                row.append(THETA.conjugate())
            else:
                row.append(ZERO)
        rows.append(tuple(row))
    return tuple(rows)


def block_sum(*grams: Sequence[Sequence]) -> tuple:
    n = sum(len(g) for g in grams)
    out = [[ZERO] * n for _ in range(n)]
    off = 0
    for g in grams:
        for i, row in enumerate(g):
            for j, x in enumerate(row):
                out[off + i][off + j] = Eis.coerce(x)
        off += len(g)
    return tuple(tuple(r) for r in out)


HYPERBOLIC_GRAM = ((ZERO, THETA), (-THETA, ZERO))


def standard_lattice(name: str) -> HermitianLattice:
    """Named lattices: ``lambdaK`` / ``lambda(K)``, ``H`` / ``hyperbolic``, ``Lambda`` / ``big_lambda``.

    ``Lambda`` is Lambda^4 _|_ Lambda^4 _|_ H_O in the frame
    (r1', .., r4', r1'', .., r4'', e, f).
    """
    key = name.strip()
    if key in ("H", "hyperbolic", "H_O"):
        return _named(HYPERBOLIC_GRAM, "H")
    if key in ("Lambda", "big_lambda"):
        return _named(block_sum(lambda_gram(4), lambda_gram(4), HYPERBOLIC_GRAM), "Lambda")
    low = key.lower().replace("(", "").replace(")", "")
    if low.startswith("lambda"):
        rest = low[len("lambda"):]
        if rest.isdigit():
            k = int(rest)
            return _named(lambda_gram(k), f"lambda{k}")
    raise LatticeError(f"unknown lattice name {name!r}")


_CACHE: dict = {}


def _named(gram: tuple, name: str) -> HermitianLattice:
    if name not in _CACHE:
        _CACHE[name] = HermitianLattice(gram, name)
    return _CACHE[name]


def big_lambda_identification() -> list:
    """Images of r_1, ..., r_10 of Lambda^10 in Lambda^4 _|_ Lambda^4 _|_ H_O.

    r_1..r_4 -> r1''..r4'', r_5 -> s + e, r_6 -> -w e + f, r_7 -> -e + r1',
    r_8..r_10 -> r2'..r4', where s in Lambda'' is orthogonal to r1''..r3''
    with psi(s, r4'') = conj(theta).  Pairwise psi of the images equals the
    Lambda^10 Gram; this is checked by :func:`check_identification`.
    """
    big = standard_lattice("Lambda")
    lam4 = standard_lattice("lambda4")
    target = [ZERO, ZERO, ZERO, THETA.conjugate()]
    # psi(s, r_j) = sum_i c_i G_ij  ->  G^T c = target
    gt = [[lam4.gram[i][j] for i in range(4)] for j in range(4)]
    c = linalg.solve_field(gt, target)
    if not all(x.is_integral() for x in c):
        raise LatticeError("auxiliary vector s is not integral")

    def vec(**parts):
        coords = [ZERO] * 10
        for k, v in parts.items():
            coords[_FRAME_INDEX[k]] = coords[_FRAME_INDEX[k]] + Eis.coerce(v)
        return coords

    s = [ZERO] * 4 + list(c) + [ZERO, ZERO]
    images = []
    for i in range(4):
        images.append(vec(**{f"b{i + 1}": 1}))
    images.append([x + y for x, y in zip(s, vec(e=1))])
    images.append(vec(e=-OMEGA, f=1))
    images.append(vec(e=-1, a1=1))
    for i in range(1, 4):
        images.append(vec(**{f"a{i + 1}": 1}))
    return [big.vector(v) for v in images]


_FRAME_INDEX = {
    "a1": 0, "a2": 1, "a3": 2, "a4": 3,
    "b1": 4, "b2": 5, "b3": 6, "b4": 7,
    "e": 8, "f": 9,
}


def check_identification() -> bool:
    images = big_lambda_identification()
    gram = lambda_gram(10)
    return all(psi(images[i], images[j]) == gram[i][j] for i in range(10) for j in range(10))


# ---------------------------------------------------------------------------
# invariants


def underlying_integral_form(lattice: HermitianLattice) -> list:
    """The even Z-form (x.y) = (psi + conj psi)/3 on the basis b_1, w b_1, ..."""
    a, b = lattice._psi_int_parts
    n2 = 2 * lattice.rank
    out = [[0] * n2 for _ in range(n2)]
    for i in range(n2):
        for j in range(n2):
            num = 2 * a[i][j] + b[i][j]  # 3 * (2/3) * Re(psi)
            if num % 3:
                raise AssertionError("psi not theta*O valued")
            out[i][j] = num // 3
    return out


def symmetric_inertia(matrix: Sequence[Sequence]) -> tuple:
    """(positive, negative, zero) counts of a rational symmetric matrix.

    Exact symmetric Gaussian elimination over Q with congruence pivoting.
    """
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/col i += row/col j makes a[i][i] = 2 a[i][j] != 0
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            if a[i][piv] != 0:
                f = a[i][piv] / d
                for j in active:
                    a[i][j] -= f * a[piv][j]
                a[i][piv] = Fraction(0)
        for j in active:
            a[piv][j] = Fraction(0)
    return pos, neg, n - pos - neg


def signature(lattice: HermitianLattice) -> tuple:
    """Hermitian inertia (p, q, z): half the real inertia of the underlying form."""
    p, q, z = symmetric_inertia(underlying_integral_form(lattice))
    if p % 2 or q % 2 or z % 2:
        raise AssertionError("real inertia of a Hermitian form must be even")
    return p // 2, q // 2, z // 2


def gram_discriminant(gram: Sequence[Sequence]) -> int:
    d = linalg.determinant([[Eis.coerce(x) for x in row] for row in gram], linalg.OO)
    d = Eis.coerce(d)
    if d.b != 0:
        raise AssertionError("Hermitian determinant must be rational")
    return d.a


def discriminant(lattice: HermitianLattice) -> int:
    return gram_discriminant(lattice.gram)


def is_positive_definite(lattice: HermitianLattice) -> bool:
    return signature(lattice) == (lattice.rank, 0, 0)


def gram_of(vectors: Sequence[LatticeVector]) -> tuple:
    return tuple(tuple(psi(x, y) for y in vectors) for x in vectors)


# ---------------------------------------------------------------------------
# sublattices


def _rows(vectors: Iterable[LatticeVector]) -> list:
    return [list(v.coords) for v in vectors]


def orthogonal_complement(lattice: HermitianLattice, vectors: Sequence[LatticeVector]) -> list:
    """O-basis of {x : psi(x, s) = 0 for all s}; saturated in the lattice."""
    if discriminant(lattice) == 0:
        raise LatticeError("orthogonal complement requires a nondegenerate lattice")
    n = lattice.rank
    # psi(x, s) = sum_i x_i * (G conj(s))_i : columns c_s = G conj(s)
    cols = []
    for s in vectors:
        sbar = [c.conjugate() for c in s.coords]
        cols.append([sum((lattice.gram[i][j] * sbar[j] for j in range(n)), ZERO) for i in range(n)])
    if not cols:
        return lattice.basis()
    matrix = linalg.transpose(cols)  # n x |S|
    ker = linalg.left_kernel(matrix, linalg.OO)
    return [lattice.vector(row) for row in ker]


def saturation(lattice: HermitianLattice, vectors: Sequence[LatticeVector]) -> list:
    """O-basis of the primitive closure of span(vectors)."""
    rows = _rows(vectors)
    if not rows:
        return []
    sat = linalg.saturation(rows, lattice.rank, linalg.OO)
    basis = linalg.row_span_basis(sat, linalg.OO)
    return [lattice.vector(r) for r in basis]


def span_basis(lattice: HermitianLattice, vectors: Sequence[LatticeVector]) -> list:
    rows = _rows(vectors)
    if not rows:
        return []
    return [lattice.vector(r) for r in linalg.row_span_basis(rows, linalg.OO)]


def span_rank(vectors: Sequence[LatticeVector]) -> int:
    rows = _rows(vectors)
    if not rows:
        return 0
    return linalg.echelon(rows, linalg.OO, reduce_above=False).rank


def saturation_index(lattice: HermitianLattice, vectors: Sequence[LatticeVector]) -> int:
    """Z-index of span(vectors) in its saturation, computed over O."""
    rows = _rows(vectors)
    basis = linalg.row_span_basis(rows, linalg.OO) if rows else []
    return linalg.index_in_saturation(basis, lattice.rank, linalg.OO)


def is_primitive(lattice: HermitianLattice, vectors: Sequence[LatticeVector]) -> bool:
    return saturation_index(lattice, vectors) == 1


def integral_saturation_index(lattice: HermitianLattice, vectors: Sequence[LatticeVector]) -> int:
    """Same index as :func:`saturation_index`, computed on the underlying Z^{2n}.

    Independent of the O-arithmetic route; used as a cross-check.
    """
    rows = []
    for v in vectors:
        for u in (ONE, OMEGA):
            rows.append([t for c in v.coords for t in (u * c).pair])
    if not rows:
        return 1
    basis = linalg.row_span_basis(rows, linalg.ZZ)
    return linalg.index_in_saturation(basis, 2 * lattice.rank, linalg.ZZ)


def coordinates_in(basis: Sequence[LatticeVector], v: LatticeVector) -> list | None:
    """Coordinates of v in an O-basis of a sublattice, or None if v is outside it."""
    rows = _rows(basis)
    n = len(rows)
    # Solve over the field using a nonsingular minor, then check integrality.
    e = linalg.echelon(rows, linalg.OO, reduce_above=False)
    cols = [c for _, c in e.pivots]
    if len(cols) != n:
        raise LatticeError("basis vectors are dependent")
    m = [[rows[i][c] for i in range(n)] for c in cols]
    rhs = [v.coords[c] for c in cols]
    x = linalg.solve_field(m, rhs)
    recon = [sum((x[i] * rows[i][k] for i in range(n)), ZERO) for k in range(len(v.coords))]
    if recon != list(v.coords):
        return None
    if not all(Eis.coerce(c).is_integral() for c in x):
        return None
    return [Eis.coerce(c) for c in x]
