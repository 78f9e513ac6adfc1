"""Enumeration of n-vectors in positive definite Hermitian lattices."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .lattice import HermitianLattice, LatticeError, LatticeVector, is_positive_definite, underlying_integral_form
from .ring import Eis, units


def _cholesky(q: list) -> list:
    """Upper-triangular Fraction data for x.Q.x = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2.

    Returns (d, m) as nested lists.
    """
    n = len(q)
    a = [[Fraction(x) for x in row] for row in q]
    d = [Fraction(0)] * n
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise LatticeError("form is not positive definite")
        for j in range(i + 1, n):
            m[i][j] = a[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(j, n):
                a[j][k] -= m[i][j] * a[i][k]
                a[k][j] = a[j][k]
    return d, m


def _floor_sqrt(x: Fraction) -> int:
    if x <= 0:
        return 0
    return isqrt(x.numerator * x.denominator) // x.denominator


def integral_vectors_of_norm(q: list, target: int, at_most: bool = False) -> list:
    """All integer x with x.Q.x == target (or <= target), Fincke-Pohst style."""
    n = len(q)
    d, m = _cholesky(q)
    bound = Fraction(target)
    out = []
    x = [0] * n

    def level(i: int, remaining: Fraction) -> None:
        centre = -sum((m[i][j] * x[j] for j in range(i + 1, n) if x[j]), Fraction(0))
        radius = _floor_sqrt(remaining / d[i])
        lo = int(centre) - radius - 2
        hi = int(centre) + radius + 2
        for xi in range(lo, hi + 1):
            t = xi - centre
            used = d[i] * t * t
            if used > remaining:
                continue
            x[i] = xi
            rest = remaining - used
            if i == 0:
                if at_most or rest == 0:
                    out.append(tuple(x))
            else:
                level(i - 1, rest)
        x[i] = 0

    level(n - 1, bound)
    return out


def vectors_of_norm(lattice: HermitianLattice, n: int) -> list:
    """All x with psi(x, x) = n, sorted by flattened (a, b) coordinates."""
    if n <= 0 or n % 3:
        raise ValueError("norm must be a positive multiple of 3")
    if not is_positive_definite(lattice):
        raise LatticeError("short vector enumeration needs a positive definite lattice")
    q = underlying_integral_form(lattice)
    raw = integral_vectors_of_norm(q, 2 * n // 3)
    vecs = [
        LatticeVector(lattice, tuple(Eis(v[2 * i], v[2 * i + 1]) for i in range(lattice.rank)))
        for v in raw
    ]
    vecs.sort(key=lambda v: v.key)
    return vecs


def brute_force_vectors_of_norm(lattice: HermitianLattice, n: int, box: int) -> list:
    """Every x with coordinates a, b in [-box, box] and psi(x, x) = n; an oracle for small ranks."""
    import itertools

    rng = range(-box, box + 1)
    out = []
    for flat in itertools.product(rng, repeat=2 * lattice.rank):
        coords = tuple(Eis(flat[2 * i], flat[2 * i + 1]) for i in range(lattice.rank))
        if lattice.psi(coords, coords) == n:
            out.append(LatticeVector(lattice, coords))
    out.sort(key=lambda v: v.key)
    return out


def unit_orbit_representatives(vectors) -> list:
    """One representative (the lexicographic minimum) per mu_6-orbit."""
    vecs = list(vectors)
    pool = {v.coords: v for v in vecs}
    seen = set()
    reps = []
    for v in vecs:
        if v.coords in seen:
            continue
        orbit = [u * v for u in units()]
        for w in orbit:
            if w.coords not in pool:
                raise ValueError("input is not closed under multiplication by units")
            seen.add(w.coords)
        reps.append(min(orbit, key=lambda w: w.key))
    reps.sort(key=lambda w: w.key)
    return reps
