"""Positions of 3-vectors relative to a 6-vector, and related sublattice types."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import f3
from .lattice import (
    HermitianLattice,
    LatticeError,
    LatticeVector,
    discriminant,
    gram_discriminant,
    gram_of,
    is_positive_definite,
    orthogonal_complement,
    psi,
    saturation_index,
    signature,
    span_basis,
    span_rank,
    standard_lattice,
)
from .ring import THETA, ZERO, Eis, gcd, is_unit
from .shortvec import vectors_of_norm
from .unitary import f3_symplectic_form, reduce_vector_mod_theta


class ImprimitiveSpan(ValueError):
    """z and r span an imprimitive sublattice, so no d-invariant is attached."""


class Rank2Type(enum.IntEnum):
    DELTA6 = 6
    DELTA9 = 9
    DELTA15 = 15
    DELTA18 = 18


class RelativePosition(str, enum.Enum):
    A = "a"
    B = "b"
    C = "c"
    D = "d"
    E = "e"


class IsotropicType(str, enum.Enum):
    THETA = "theta"
    ZERO = "zero"

    @classmethod
    def _missing_(cls, value):
        aliases = {"0": cls.ZERO, "th": cls.THETA, "θ": cls.THETA}
        return aliases.get(str(value).strip().lower())


def _require_norm(v: LatticeVector, n: int, what: str) -> None:
    if v.norm() != n:
        raise ValueError(f"{what} must be a {n}-vector, got norm {v.norm()}")


def pair_is_primitive(x: LatticeVector, y: LatticeVector) -> bool:
    """span{x, y} is saturated iff its 2x2 minors generate the unit ideal."""
    g = ZERO
    cx, cy = x.coords, y.coords
    n = len(cx)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(g, cx[i] * cy[j] - cx[j] * cy[i])
            if is_unit(g):
                return True
    return False


def d_invariant(z: LatticeVector, r: LatticeVector) -> int:
    """Discriminant of the primitive lattice spanned by a 6-vector z and a 3-vector r."""
    _require_norm(z, 6, "z")
    _require_norm(r, 3, "r")
    if not pair_is_primitive(z, r):
        raise ImprimitiveSpan("z and r span an imprimitive sublattice")
    d = gram_discriminant(gram_of([z, r]))
    if d <= 0:
        raise LatticeError("span of z and r is not positive definite")
    return d


def rank2_type(lattice: HermitianLattice, z: LatticeVector, r: LatticeVector) -> Rank2Type:
    for v in (z, r):
        if v.lattice != lattice:
            raise LatticeError("vector not in this lattice")
    return Rank2Type(d_invariant(z, r))


def relative_position(r: LatticeVector, z: LatticeVector) -> RelativePosition:
    """Which of the five U(Lambda^4)-orbits the pair (r, z) lies in."""
    _require_norm(r, 3, "r")
    _require_norm(z, 6, "z")
    n = psi(r, z).norm()
    if n == 12:
        return RelativePosition.B
    if n == 3:
        return RelativePosition.C
    if n == 9:
        return RelativePosition.D
    if n == 0:
        return RelativePosition.E if pair_is_primitive(z, r) else RelativePosition.A
    raise AssertionError(f"impossible value |psi(r, z)|^2 = {n}")


# ---------------------------------------------------------------------------
# decompositions of a 6-vector in Lambda^4


@lru_cache(maxsize=None)
def three_vectors(name: str = "lambda4") -> tuple:
    return tuple(vectors_of_norm(standard_lattice(name), 3))


def _check_six(z: LatticeVector) -> None:
    if z.lattice != standard_lattice("lambda4"):
        raise LatticeError("decompositions are computed in Lambda^4")
    _require_norm(z, 6, "z")


@lru_cache(maxsize=None)
def _three_tables() -> tuple:
    """Integer matrices giving psi(r, z) = (R A z) + (R B z) w for all 3-vectors r."""
    lam = standard_lattice("lambda4")
    a, b = lam._psi_int_parts
    rows = np.array([r.key for r in three_vectors()], dtype=np.int64)
    return rows @ np.array(a, dtype=np.int64), rows @ np.array(b, dtype=np.int64)


def _threes_with_psi(z: LatticeVector, value: Eis) -> list:
    """3-vectors r with psi(r, z) = value (prefilter, exact values)."""
    ra, rb = _three_tables()
    zk = np.array(z.key, dtype=np.int64)
    hits = np.nonzero((ra @ zk == value.a) & (rb @ zk == value.b))[0]
    rs = three_vectors()
    return [rs[i] for i in hits]


def theta_decompositions(z: LatticeVector) -> list:
    """Ordered pairs (r, r') of 3-vectors with r + r' = z and psi(r, r') = theta."""
    _check_six(z)
    out = []
    # psi(r, z - r) = psi(r, z) - 3
    for r in _threes_with_psi(z, THETA + 3):
        rp = z - r
        if rp.norm() == 3 and psi(r, rp) == THETA:
            out.append((r, rp))
    return out


def theta_span(z: LatticeVector) -> list:
    """O-basis of L_z, the lattice spanned by all theta-decompositions of z."""
    vecs = [v for pair in theta_decompositions(z) for v in pair]
    return span_basis(z.lattice, vecs)


def perpendicular_decompositions(z: LatticeVector) -> list:
    """Unordered pairs {r, z - r} of perpendicular 3-vectors; each pair listed once."""
    _check_six(z)
    out = []
    seen = set()
    for r in _threes_with_psi(z, Eis(3, 0)):
        rp = z - r
        if rp.norm() == 3 and psi(r, rp) == 0:
            key = frozenset((r.coords, rp.coords))
            if key not in seen:
                seen.add(key)
                out.append((r, rp))
    return out


@dataclass(frozen=True)
class Flag:
    v: tuple  # vector of F_3^4
    plane: tuple  # RREF basis of a nondegenerate plane containing v


def flag_of(z: LatticeVector) -> Flag:
    _check_six(z)
    j = f3_symplectic_form(z.lattice)
    v = tuple(int(x) for x in reduce_vector_mod_theta(z))
    plane = f3.rref([reduce_vector_mod_theta(b) for b in theta_span(z)])
    if len(plane) != 2 or not f3.is_nondegenerate_plane(j, plane):
        raise AssertionError("reduction of L_z is not a nondegenerate plane")
    if v not in f3.span_set(plane):
        raise AssertionError("reduction of z is not in the reduction of L_z")
    return Flag(v, plane)


# ---------------------------------------------------------------------------
# the frame Lambda' _|_ Lambda'' _|_ H with isotropic e


E_INDEX, F_INDEX = 8, 9


def frame_vector(**coords) -> LatticeVector:
    """Vector of Lambda from keyword coordinates a1..a4 (r'), b1..b4 (r''), e, f."""
    from .lattice import _FRAME_INDEX

    big = standard_lattice("Lambda")
    c = [ZERO] * 10
    for k, v in coords.items():
        c[_FRAME_INDEX[k]] = Eis.coerce(v)
    return big.vector(c)


def standard_zo(kind: IsotropicType | str = IsotropicType.THETA) -> LatticeVector:
    kind = IsotropicType(kind)
    if kind is IsotropicType.THETA:
        return frame_vector(a1=1, a2=1)
    return frame_vector(a1=1, b1=1)


def isotropic_line_type(zo: LatticeVector) -> IsotropicType:
    """Type of the isotropic line spanned by e relative to the 6-vector z_o."""
    big = standard_lattice("Lambda")
    if zo.lattice != big:
        raise LatticeError("z_o must be a vector of Lambda")
    e = big.basis_vector(E_INDEX)
    if psi(zo, e) != 0:
        raise ValueError("z_o is not perpendicular to e")
    _require_norm(zo, 6, "z_o")
    lam4 = standard_lattice("lambda4")
    n1 = lam4.psi(zo.coords[0:4], zo.coords[0:4]).a
    n2 = lam4.psi(zo.coords[4:8], zo.coords[4:8]).a
    if (n1, n2) in ((6, 0), (0, 6)):
        return IsotropicType.THETA
    if (n1, n2) == (3, 3):
        return IsotropicType.ZERO
    raise ValueError(f"component norms {(n1, n2)} do not fit a 6-vector perpendicular to e")


def frame_three_vectors() -> list:
    """The 3-vectors of Lambda' _|_ Lambda'' (each lies in one summand)."""
    out = []
    for r in three_vectors():
        out.append(frame_vector(**{f"a{i + 1}": c for i, c in enumerate(r.coords)}))
    for r in three_vectors():
        out.append(frame_vector(**{f"b{i + 1}": c for i, c in enumerate(r.coords)}))
    out.sort(key=lambda v: v.key)
    return out


def _projection_line(r: LatticeVector, z: LatticeVector) -> tuple:
    """Canonical generator of the Q(w)-line of r - (psi(r,z)/psi(z,z)) z."""
    c = psi(r, z) / psi(z, z)
    p = [6 * (x - c * y) for x, y in zip(r.coords, z.coords)]  # clear denominators
    lead = next(x for x in p if x != 0)
    return tuple((x / lead).pair for x in p)


@dataclass(frozen=True)
class DclassProfile:
    rank6: int
    rank9: int
    lines9: int
    pool: int
    counts: dict


def dclass_profile(kind: IsotropicType | str) -> DclassProfile:
    """Ranks of I(6)/I and I(9)/I and the number of lines spanned by d-invariant 9 vectors.

    Worked in I-perp/I = Lambda' _|_ Lambda''.  Ranks are taken modulo z_o,
    i.e. rank(span(z_o, rs)) - 1.
    """
    zo = standard_zo(kind)
    pool = frame_three_vectors()
    by_d: dict = {6: [], 9: [], 15: [], 18: [], "imprimitive": []}
    for r in pool:
        try:
            by_d[d_invariant(zo, r)].append(r)
        except ImprimitiveSpan:
            by_d["imprimitive"].append(r)

    def rank_mod_z(rs):
        return span_rank([zo] + rs) - 1 if rs else 0

    lines9 = {_projection_line(r, zo) for r in by_d[9]}
    return DclassProfile(
        rank6=rank_mod_z(by_d[6]),
        rank9=rank_mod_z(by_d[9]),
        lines9=len(lines9),
        pool=len(pool),
        counts={str(k): len(v) for k, v in by_d.items()},
    )


# ---------------------------------------------------------------------------
# sublattices spanned by z_o and 3-vectors


def _model(tag: str):
    if tag == "(9)":
        gram = ((3, 0), (0, 3))
        z = (1, 1)
    else:
        k, z = {
            "(6)": (2, (1, 1)),
            "(6,9)": (3, (1, 1, 0)),
            "(9,9)": (3, (1, 0, 1)),
            "(6,9,9)": (4, (1, 1, 0, 0)),
        }[tag]
        gram = standard_lattice(f"lambda{k}").gram
    return HermitianLattice(gram), tuple(Eis.coerce(c) for c in z)


MODEL_TAGS = ("(6)", "(9)", "(6,9)", "(9,9)", "(6,9,9)")

COMPLEMENT_MODELS = {
    "(6)": ("Lambda^8", ("lambda8",)),
    "(9)": ("Lambda^7 _|_ Lambda^1", ("lambda7", "lambda1")),
    "(6,9)": ("Lambda^7", ("lambda7",)),
    "(9,9)": ("Lambda^7", ("lambda7",)),
    "(6,9,9)": ("Lambda^6", ("lambda6",)),
}


def lattice_invariants(lat: HermitianLattice) -> dict:
    return {"rank": lat.rank, "signature": list(signature(lat)), "discriminant": discriminant(lat)}


def model_complement_invariants(tag: str) -> dict:
    parts = [standard_lattice(n) for n in COMPLEMENT_MODELS[tag][1]]
    rank = sum(p.rank for p in parts)
    sig = [sum(signature(p)[i] for p in parts) for i in range(3)]
    disc = 1
    for p in parts:
        disc *= discriminant(p)
    return {"rank": rank, "signature": sig, "discriminant": disc}


def find_isometry(basis: list, z: LatticeVector, model: HermitianLattice, zmodel: tuple):
    """Images x_1..x_k in span(basis) of the model basis with matching Gram and z.

    Backtracking over the 3-vectors of the span; returns the list or None.
    """
    k = model.rank
    if len(basis) != k:
        return None
    sub = HermitianLattice(gram_of(basis))
    if discriminant(sub) != discriminant(model):
        return None
    cands = []
    for w in vectors_of_norm(sub, 3):
        coords = tuple(
            sum((w.coords[i] * basis[i].coords[t] for i in range(k)), ZERO) for t in range(len(z.coords))
        )
        cands.append(LatticeVector(z.lattice, coords))
    g = model.gram
    # psi(x_i, z) is forced by the model: sum_j g_ij conj(c_j)
    slots = []
    for i in range(k):
        target = sum((g[i][j] * zmodel[j].conjugate() for j in range(k)), ZERO)
        slots.append([x for x in cands if psi(x, z) == target])
    chosen: list = []

    def extend(i: int):
        if i == k:
            total = [ZERO] * len(z.coords)
            for c, x in zip(zmodel, chosen):
                total = [t + c * y for t, y in zip(total, x.coords)]
            return list(chosen) if tuple(total) == z.coords else None
        for x in slots[i]:
            if all(psi(x, chosen[j]) == g[i][j] for j in range(i)):
                chosen.append(x)
                found = extend(i + 1)
                if found:
                    return found
                chosen.pop()
        return None

    return extend(0)


@dataclass(frozen=True)
class SpanType:
    tag: str
    images: list
    d_invariants: list
    complement: dict
    model_complement: dict

    @property
    def complement_matches(self) -> bool:
        return self.complement == self.model_complement


def span_type_with_zo(rs, zo: LatticeVector | None = None) -> SpanType:
    """Identify (span(z_o, rs), z_o) with one of five model pairs."""
    zo = zo or standard_zo(IsotropicType.THETA)
    big = zo.lattice
    rs = list(rs)
    dinv = []
    for r in rs:
        d = d_invariant(zo, r)
        if d not in (6, 9):
            raise ValueError(f"3-vector with d-invariant {d}; only 6 and 9 are allowed")
        dinv.append(d)
    basis = span_basis(big, [zo] + rs)
    lat = HermitianLattice(gram_of(basis))
    if not is_positive_definite(lat):
        raise LatticeError("span is not positive definite")
    if saturation_index(big, basis) != 1:
        raise LatticeError("span is not primitive")
    for tag in MODEL_TAGS:
        model, zm = _model(tag)
        images = find_isometry(basis, zo, model, zm)
        if images:
            comp = orthogonal_complement(big, basis)
            comp_lat = HermitianLattice(gram_of(comp))
            return SpanType(
                tag=tag,
                images=images,
                d_invariants=dinv,
                complement=lattice_invariants(comp_lat),
                model_complement=model_complement_invariants(tag),
            )
    raise LatticeError("span matches none of the model lattices")


# ---------------------------------------------------------------------------
# symplectic oracle counts


def position_counts_f3() -> dict:
    """Sum over all flags of the number of lines in each position, computed in F_3^4."""
    j = f3_symplectic_form(standard_lattice("lambda4"))
    counts = {c: 0 for c in "abcde"}
    all_lines = f3.lines(4)
    for fl in f3.flags(j):
        for ln in all_lines:
            counts[f3.line_position(j, fl, ln)] += 1
    return counts


def _line_key(v) -> tuple:
    v = [int(x) % 3 for x in v]
    lead = next(x for x in v if x)
    return tuple((x * lead) % 3 for x in v)  # lead is its own inverse mod 3


def relative_position_census() -> dict:
    """Classify all (3-vector, 6-vector) pairs of Lambda^4 and compare each with F_3.

    Returns the class sizes, the number of pairs whose class disagrees with
    the position of the reduced line relative to the flag of z, and the
    number of 6-vectors lying over each flag.
    """
    lam = standard_lattice("lambda4")
    j = f3_symplectic_form(lam)
    threes = three_vectors()
    sixes = vectors_of_norm(lam, 6)
    lines = [_line_key(reduce_vector_mod_theta(r)) for r in threes]
    sizes = {p.value: 0 for p in RelativePosition}
    per_flag: dict = {}
    position_cache: dict = {}
    mismatches = 0
    for z in sixes:
        fl = flag_of(z)
        fk = (fl.v, fl.plane)
        per_flag[fk] = per_flag.get(fk, 0) + 1
        if fk not in position_cache:
            position_cache[fk] = {ln: f3.line_position(j, fk, ln) for ln in set(lines)}
        table = position_cache[fk]
        for r, ln in zip(threes, lines):
            p = relative_position(r, z).value
            sizes[p] += 1
            if table[ln] != p:
                mismatches += 1
    return {"sizes": sizes, "mismatches": mismatches, "flags": len(per_flag), "fiber_sizes": sorted(set(per_flag.values()))}
