"""Small linear algebra over F_3, independent of the lattice code."""

from __future__ import annotations

import itertools

import numpy as np


def rref(rows) -> tuple:
    """Reduced row echelon form over F_3 of a set of vectors (zero rows dropped)."""
    m = [list(int(x) % 3 for x in r) for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    out = []
    for col in range(ncols):
        piv = next((i for i, r in enumerate(m) if r[col] % 3), None)
        if piv is None:
            continue
        p = m.pop(piv)
        inv = 1 if p[col] == 1 else 2
        p = [(inv * x) % 3 for x in p]
        m = [[(x - r[col] * y) % 3 for x, y in zip(r, p)] for r in m]
        out = [[(x - r[col] * y) % 3 for x, y in zip(r, p)] for r in out]
        out.append(p)
    return tuple(tuple(r) for r in out)


def span_set(basis) -> frozenset:
    basis = [np.array(b) for b in basis]
    if not basis:
        return frozenset()
    out = set()
    for coeffs in itertools.product(range(3), repeat=len(basis)):
        v = sum(c * b for c, b in zip(coeffs, basis)) % 3
        out.add(tuple(int(x) for x in v))
    return frozenset(out)


def nonzero_vectors(n: int) -> list:
    return [v for v in itertools.product(range(3), repeat=n) if any(v)]


def lines(n: int) -> list:
    """One-dimensional subspaces, each given by its normalized generator."""
    return [v for v in nonzero_vectors(n) if next(x for x in v if x) == 1]


def form_value(j: np.ndarray, x, y) -> int:
    return int(np.asarray(x) @ j @ np.asarray(y)) % 3


def planes(n: int) -> list:
    """All two-dimensional subspaces as RREF bases."""
    seen = set()
    for a, b in itertools.combinations(lines(n), 2):
        seen.add(rref([a, b]))
    return sorted(seen)


def is_nondegenerate_plane(j: np.ndarray, basis) -> bool:
    a, b = basis
    return form_value(j, a, b) != 0


def flags(j: np.ndarray) -> list:
    """Pairs (v, P): P a nondegenerate plane, v a nonzero vector of P."""
    n = j.shape[0]
    out = []
    for p in planes(n):
        if is_nondegenerate_plane(j, p):
            for v in sorted(span_set(p)):
                if any(v):
                    out.append((v, p))
    return out


def perp(j: np.ndarray, vectors) -> frozenset:
    n = j.shape[0]
    return frozenset(
        v for v in itertools.product(range(3), repeat=n) if all(form_value(j, v, w) == 0 for w in vectors)
    )


def line_position(j: np.ndarray, flag, line) -> str:
    """Position a-e of a line relative to a flag (v, P).

    a: the line of v; b: another line in P; e: perpendicular to P;
    d: perpendicular to v only; c: everything else.
    """
    v, p = flag
    pset = span_set(p)
    if span_set([line]) == span_set([v]):
        return "a"
    if tuple(line) in pset:
        return "b"
    if all(form_value(j, line, w) == 0 for w in p):
        return "e"
    if form_value(j, line, v) == 0:
        return "d"
    return "c"
