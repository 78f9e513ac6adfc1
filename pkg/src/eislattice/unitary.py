"""Isometries of Hermitian O-lattices and finite groups generated by them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .lattice import HermitianLattice, LatticeError, LatticeVector, psi
from .ring import ONE, OMEGA, THETA, ZERO, Eis, omega_power, reduce_mod_theta


class NotAnIsometry(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


def _matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ZERO
            for t in range(k):
                x, y = a[i][t], b[t][j]
                if x and y:
                    acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _conj(a):
    return tuple(tuple(x.conjugate() for x in row) for row in a)


def _transpose(a):
    return tuple(zip(*a))


def preserves_form(gram, matrix) -> bool:
    """U^T G conj(U) == G, i.e. psi(Ux, Uy) = psi(x, y) with columns as images."""
    return _matmul(_matmul(_transpose(matrix), gram), _conj(matrix)) == tuple(map(tuple, gram))


@dataclass(frozen=True, eq=False)
class UnitaryMap:
    lattice: HermitianLattice
    matrix: tuple  # columns are images of basis vectors

    def __post_init__(self) -> None:
        m = tuple(tuple(Eis.coerce(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        n = self.lattice.rank
        if len(m) != n or any(len(row) != n for row in m):
            raise NotAnIsometry("matrix size does not match the lattice rank")
        if not preserves_form(self.lattice.gram, m):
            raise NotAnIsometry("matrix does not preserve the Hermitian form")

    def __eq__(self, other) -> bool:
        return isinstance(other, UnitaryMap) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __matmul__(self, other: "UnitaryMap") -> "UnitaryMap":
        """Composition: (self @ other)(x) = self(other(x))."""
        return UnitaryMap(self.lattice, _matmul(self.matrix, other.matrix))

    def __call__(self, v: LatticeVector) -> LatticeVector:
        coords = tuple(
            sum((row[j] * v.coords[j] for j in range(len(row))), ZERO) for row in self.matrix
        )
        return LatticeVector(self.lattice, coords)

    def __pow__(self, k: int) -> "UnitaryMap":
        if k < 0:
            return self.inverse() ** (-k)
        out = identity_map(self.lattice)
        for _ in range(k):
            out = out @ self
        return out

    def is_integral(self) -> bool:
        return all(x.is_integral() for row in self.matrix for x in row)

    def inverse(self) -> "UnitaryMap":
        """U^{-1} = conj(G^{-1} U^T G) ... computed via solving, exact over Q(w)."""
        from . import linalg

        n = self.lattice.rank
        cols = []
        for j in range(n):
            e = [ONE if i == j else ZERO for i in range(n)]
            cols.append(linalg.solve_field([list(r) for r in self.matrix], e))
        return UnitaryMap(self.lattice, tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))

    def is_identity(self) -> bool:
        n = len(self.matrix)
        return all(self.matrix[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))

    def order(self, limit: int = 1000) -> int:
        p = self
        for k in range(1, limit + 1):
            if p.is_identity():
                return k
            p = p @ self
        raise CapExceeded("order exceeds limit")

    def to_json(self) -> list:
        return [[x.to_json() for x in row] for row in self.matrix]


def identity_map(lattice: HermitianLattice) -> UnitaryMap:
    n = lattice.rank
    return UnitaryMap(lattice, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))


def scalar_map(lattice: HermitianLattice, u: Eis) -> UnitaryMap:
    n = lattice.rank
    return UnitaryMap(lattice, tuple(tuple(u if i == j else ZERO for j in range(n)) for i in range(n)))


def triflection(lattice: HermitianLattice, r: LatticeVector) -> UnitaryMap:
    """s_r(x) = x - w^{-1} phi(x, r) r = x + w^{-1} theta^{-1} psi(x, r) r."""
    if r.lattice != lattice:
        raise LatticeError("vector not in this lattice")
    if r.norm() != 3:
        raise ValueError("triflections are defined for 3-vectors only")
    n = lattice.rank
    winv = omega_power(-1)
    cols = []
    for j in range(n):
        bj = lattice.basis_vector(j)
        c = (winv * psi(bj, r)).exact_div(THETA)
        cols.append([(ONE if i == j else ZERO) + c * r.coords[i] for i in range(n)])
    return UnitaryMap(lattice, tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))


def _phi_coords(lattice, x, y) -> Eis:
    return -(lattice.psi(x, y) / THETA)


def heisenberg_matrix(lattice: HermitianLattice, e: Sequence, v: Sequence) -> tuple:
    """Matrix of x -> x + phi(x,e) v + phi(x,v) e + c phi(x,e) e over Q(w).

    c = phi(v, v) / 2 is the purely imaginary solution of the unitarity
    constraint c - conj(c) = phi(v, v).  Coordinates may be rational.
    """
    e = [Eis.coerce(t) for t in e]
    v = [Eis.coerce(t) for t in v]
    n = lattice.rank
    c = _phi_coords(lattice, v, v) / 2
    cols = []
    for j in range(n):
        b = [ONE if i == j else ZERO for i in range(n)]
        pe = _phi_coords(lattice, b, e)
        pv = _phi_coords(lattice, b, v)
        cols.append([b[i] + pe * v[i] + pv * e[i] + c * pe * e[i] for i in range(n)])
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def heisenberg_transvection(lattice: HermitianLattice, e: LatticeVector, v: LatticeVector) -> UnitaryMap:
    """The unipotent isometry T_{e,v}; x -> x + phi(x, v) e on e-perp."""
    if psi(e, e) != 0:
        raise ValueError("e must be isotropic")
    if psi(e, v) != 0:
        raise ValueError("v must be orthogonal to e")
    if psi(v, v).a % 6:
        raise ValueError("psi(v, v) must be divisible by 6")
    m = heisenberg_matrix(lattice, e.coords, v.coords)
    u = UnitaryMap(lattice, m)
    if not u.is_integral():
        raise ArithmeticError("transvection is not integral")
    return u


# ---------------------------------------------------------------------------
# reduction modulo theta


def f3_symplectic_form(lattice: HermitianLattice) -> np.ndarray:
    """Reduction mod theta of phi(b_i, b_j) = -psi(b_i, b_j)/theta."""
    n = lattice.rank
    j = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            j[a, b] = reduce_mod_theta(-(lattice.gram[a][b].exact_div(THETA)))
    return j


@dataclass(frozen=True, eq=False)
class SymplecticMapF3:
    matrix: np.ndarray
    form: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=np.int64) % 3
        object.__setattr__(self, "matrix", m)
        f = np.asarray(self.form, dtype=np.int64) % 3
        object.__setattr__(self, "form", f)
        if not np.array_equal((m.T @ f @ m) % 3, f):
            raise NotAnIsometry("matrix does not preserve the symplectic form")

    def __matmul__(self, other: "SymplecticMapF3") -> "SymplecticMapF3":
        return SymplecticMapF3((self.matrix @ other.matrix) % 3, self.form)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymplecticMapF3) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash(self.matrix.tobytes())

    def apply(self, v) -> np.ndarray:
        return (self.matrix @ np.asarray(v, dtype=np.int64)) % 3


def reduce_vector_mod_theta(v: LatticeVector) -> np.ndarray:
    return np.array([reduce_mod_theta(c) for c in v.coords], dtype=np.int64)


def reduce_map_mod_theta(u: UnitaryMap) -> SymplecticMapF3:
    m = np.array([[reduce_mod_theta(x) for x in row] for row in u.matrix], dtype=np.int64)
    return SymplecticMapF3(m, f3_symplectic_form(u.lattice))


# ---------------------------------------------------------------------------
# finite group generation
#
# Elements are stored as integer matrices of the regular representation:
# a + b w acting on (c, d) in the basis (1, w) is [[a, -b], [b, a + b]].


def regular_rep(matrix: Sequence[Sequence]) -> np.ndarray:
    n = len(matrix)
    out = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            x = Eis.coerce(matrix[i][j])
            out[2 * i, 2 * j] = x.a
            out[2 * i, 2 * j + 1] = -x.b
            out[2 * i + 1, 2 * j] = x.b
            out[2 * i + 1, 2 * j + 1] = x.a + x.b
    return out


def compact(stack: np.ndarray) -> np.ndarray:
    """(N, 2n, 2n) regular representations -> (N, 2n*n) int8 keys of (a, b) entries."""
    sub = stack[:, :, 0::2]  # (N, 2n, n): rows 2i, 2i+1 give a, b of entry (i, j)
    n = sub.shape[2]
    a = sub[:, 0::2, :]
    b = sub[:, 1::2, :]
    if np.abs(stack).max(initial=0) > 127:
        raise OverflowError("matrix entries too large for compact keys")
    return np.stack([a, b], axis=-1).reshape(len(stack), 2 * n * n).astype(np.int8)


def from_regular(m: np.ndarray) -> tuple:
    n = m.shape[0] // 2
    return tuple(tuple(Eis(int(m[2 * i, 2 * j]), int(m[2 * i + 1, 2 * j])) for j in range(n)) for i in range(n))


def _bfs(gens: list, identity: np.ndarray, cap: int, mod: int | None, keyfn, chunk: int = 1024) -> np.ndarray:
    """Breadth-first closure; returns a stack of all elements (identity first).

    Elements are stored as int8; products are formed in chunks to bound memory.
    """
    gens = np.stack(gens).astype(np.int64)
    elements = [identity[None].astype(np.int8)]
    seen = {keyfn(identity[None])[0].tobytes()}
    frontier = identity[None].astype(np.int8)
    while len(frontier):
        fresh = []
        for start in range(0, len(frontier), chunk):
            block = frontier[start:start + chunk].astype(np.int64)
            cand = np.einsum("fij,gjk->fgik", block, gens).reshape(-1, *identity.shape)
            if mod:
                cand %= mod
            keys = keyfn(cand)
            kv = np.ascontiguousarray(keys).view(np.dtype((np.void, keys.shape[1]))).ravel()
            _, idx = np.unique(kv, return_index=True)
            keep = []
            for i in np.sort(idx):
                k = kv[i].tobytes()
                if k not in seen:
                    seen.add(k)
                    keep.append(i)
            if len(seen) > cap:
                raise CapExceeded(f"group has more than {cap} elements")
            if keep:
                fresh.append(cand[keep].astype(np.int8))
        frontier = np.concatenate(fresh) if fresh else frontier[:0]
        if len(frontier):
            elements.append(frontier)
    return np.concatenate(elements)


@dataclass
class FiniteGroup:
    """A finite matrix group given by all of its elements."""

    elements: np.ndarray  # (N, m, m)
    mod: int | None = None
    lattice: HermitianLattice | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def multiply(self, i: int, j: int) -> np.ndarray:
        p = self.elements[i].astype(np.int64) @ self.elements[j]
        return p % self.mod if self.mod else p

    def keys(self) -> set:
        k = self._keys()
        return {row.tobytes() for row in k}

    def _keys(self) -> np.ndarray:
        if self.mod:
            return self.elements.reshape(len(self.elements), -1).astype(np.int8)
        return compact(self.elements)

    def contains(self, m: np.ndarray) -> bool:
        m = np.asarray(m)
        k = (m.reshape(1, -1).astype(np.int8) if self.mod else compact(m[None]))[0].tobytes()
        return k in self.keys()

    def unitary_maps(self, indices: Iterable[int]) -> list:
        return [UnitaryMap(self.lattice, from_regular(self.elements[i])) for i in indices]


def generate_group(generators: Sequence, cap: int = 200000) -> FiniteGroup:
    """BFS closure of UnitaryMap or SymplecticMapF3 generators (deterministic)."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    if all(isinstance(g, SymplecticMapF3) for g in gens):
        n = gens[0].matrix.shape[0]
        mats = sorted((g.matrix for g in gens), key=lambda m: m.tobytes())
        ident = np.eye(n, dtype=np.int64)

        def keyfn(stack):
            return stack.reshape(len(stack), -1).astype(np.int8)

        return FiniteGroup(_bfs(mats, ident, cap, 3, keyfn), mod=3)
    if all(isinstance(g, UnitaryMap) for g in gens):
        lattice = gens[0].lattice
        if any(g.lattice != lattice for g in gens):
            raise LatticeError("generators act on different lattices")
        mats = sorted((regular_rep(g.matrix) for g in gens), key=lambda m: m.tobytes())
        ident = np.eye(2 * lattice.rank, dtype=np.int64)
        return FiniteGroup(_bfs(mats, ident, cap, None, compact), lattice=lattice)
    raise TypeError("generators must all be UnitaryMap or all SymplecticMapF3")


def _vec_int(v: LatticeVector) -> np.ndarray:
    return np.array([t for c in v.coords for t in c.pair], dtype=np.int64)


def _vec_from_int(lattice, arr) -> LatticeVector:
    return LatticeVector(lattice, tuple(Eis(int(arr[2 * i]), int(arr[2 * i + 1])) for i in range(lattice.rank)))


def orbit(group_or_generators, seed: LatticeVector, cap: int = 10**6) -> list:
    """Orbit of a lattice vector, sorted canonically."""
    if isinstance(group_or_generators, FiniteGroup):
        images = _apply_all(group_or_generators, _vec_int(seed))
        uniq = np.unique(images, axis=0)
        out = [_vec_from_int(seed.lattice, row) for row in uniq]
    else:
        gens = [regular_rep(g.matrix) for g in group_or_generators]
        start = tuple(_vec_int(seed))
        seen = {start}
        frontier = [start]
        while frontier:
            arr = np.array(frontier)
            nxt = []
            for g in gens:
                for row in (arr @ g.T):
                    t = tuple(int(x) for x in row)
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
            if len(seen) > cap:
                raise CapExceeded("orbit exceeds cap")
            frontier = nxt
        out = [_vec_from_int(seed.lattice, row) for row in seen]
    out.sort(key=lambda v: v.key)
    return out


def _apply_all(group: FiniteGroup, v: np.ndarray) -> np.ndarray:
    return np.einsum("nij,j->ni", group.elements, v, dtype=np.int64)


def stabilizer_order(group: FiniteGroup, seed: LatticeVector) -> int:
    """Counted directly: number of elements g with g(seed) = seed."""
    v = _vec_int(seed)
    images = _apply_all(group, v)
    return int(np.all(images == v, axis=1).sum())


def all_triflections(lattice: HermitianLattice, roots: Iterable[LatticeVector]) -> list:
    """Distinct triflections attached to the given 3-vectors."""
    maps = {}
    for r in roots:
        s = triflection(lattice, r)
        maps.setdefault(s.matrix, s)
    return [maps[k] for k in sorted(maps, key=lambda m: tuple(x.pair for row in m for x in row))]


def unitary_group_lambda4(cap: int = 200000) -> FiniteGroup:
    """U(Lambda^4), generated by its triflections and the scalar w."""
    from .lattice import standard_lattice
    from .shortvec import unit_orbit_representatives, vectors_of_norm

    lam = standard_lattice("lambda4")
    roots = unit_orbit_representatives(vectors_of_norm(lam, 3))
    gens = all_triflections(lam, roots) + [scalar_map(lam, OMEGA)]
    return generate_group(gens, cap)


def reduce_group_mod_theta(group: FiniteGroup) -> np.ndarray:
    """Entrywise reduction of every element: (N, n, n) over F_3."""
    e = group.elements.astype(np.int64)
    a = e[:, 0::2, 0::2]
    b = e[:, 1::2, 0::2]
    return (a - b) % 3
