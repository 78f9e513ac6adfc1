"""The rank-10 Eisenstein module of the 6-fold cover of P^1 branched at 12 points.

A_O = O[eta]/(sum eta^i, sum (w eta)^i).  Elements are written in the
O-basis r_i = (w eta)^i, i = 1..10.  The generating cycle e is the class of 1;
tau acts as the scalar w.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .lattice import HermitianLattice
from .ring import ONE, OMEGA, THETA, ZERO, Eis, omega_power, units
from .unitary import UnitaryMap

N = 12
RANK = 10


class PhamCheckFailed(AssertionError):
    pass


# ---------------------------------------------------------------------------
# eta-polynomials and the reduction to the r-basis


@dataclass(frozen=True)
class EtaPolynomial:
    """sum_i c_i eta^i, exponents mod 12."""

    coeffs: tuple

    def __post_init__(self) -> None:
        c = [ZERO] * N
        if len(self.coeffs) > N:
            raise ValueError("at most 12 coefficients")
        for i, x in enumerate(self.coeffs):
            c[i] = Eis.coerce(x)
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_terms(cls, terms: dict) -> "EtaPolynomial":
        c = [ZERO] * N
        for k, v in terms.items():
            c[k % N] = c[k % N] + Eis.coerce(v)
        return cls(tuple(c))

    def __add__(self, other):
        return EtaPolynomial(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return EtaPolynomial(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, s):
        s = Eis.coerce(s)
        return EtaPolynomial(tuple(s * a for a in self.coeffs))

    def shift(self, k: int) -> "EtaPolynomial":
        """Multiplication by eta^k."""
        c = [ZERO] * N
        for i, x in enumerate(self.coeffs):
            c[(i + k) % N] = x
        return EtaPolynomial(tuple(c))


def eta_power(k: int) -> EtaPolynomial:
    return EtaPolynomial.from_terms({k: 1})


def reduce_to_basis(p: EtaPolynomial) -> tuple:
    """Coordinates in (r_1, .., r_10) of the class of p in A_O.

    With t = w eta, eta^k = w^{-k} t^k, and the relations read
    t^0 + S + t^11 = 0 and t^0 + S' + w t^11 = 0, S = sum_{1..10} t^i,
    S' = sum_{1..10} w^{-i} t^i.  Hence t^11 = (S - S')/(w - 1), t^0 = -S - t^11.
    """
    t = [p.coeffs[k] * omega_power(-k) for k in range(N)]
    out = list(t[1:11])
    unit = ONE / (OMEGA - 1)  # w - 1 = w^2 is a unit
    for i in range(1, 11):
        # t^11 contributes (1 - w^{-i})/(w - 1) at t^i, t^0 contributes -1 - that
        c11 = (ONE - omega_power(-i)) * unit
        out[i - 1] = out[i - 1] + t[11] * c11 - t[0] * (ONE + c11)
    return tuple(Eis.coerce(x) for x in out)


def basis_poly(i: int) -> EtaPolynomial:
    """Lift of r_i = w^i eta^i."""
    return EtaPolynomial.from_terms({i: omega_power(i)})


def lift(coords) -> EtaPolynomial:
    acc = EtaPolynomial(())
    for i, c in enumerate(coords, start=1):
        acc = acc + Eis.coerce(c) * basis_poly(i)
    return acc


def relation_polys() -> list:
    n1 = EtaPolynomial(tuple(ONE for _ in range(N)))
    n2 = EtaPolynomial(tuple(omega_power(i) for i in range(N)))
    return [n1, n2]


# ---------------------------------------------------------------------------
# Hermitian form


def psi_e_eta(i: int) -> Eis:
    """psi(e, eta^i e)."""
    i %= N
    if i == 0:
        return Eis(3)
    if i == 1:
        return -ONE - OMEGA
    if i == N - 1:
        return -ONE - omega_power(-1)
    return ZERO


def psi_poly(x: EtaPolynomial, y: EtaPolynomial) -> Eis:
    """Sesquilinear extension: psi(eta^i e, eta^j e) = psi(e, eta^{j-i} e)."""
    acc = ZERO
    for i, a in enumerate(x.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(y.coeffs):
            if b != 0:
                acc = acc + a * b.conjugate() * psi_e_eta(j - i)
    return acc


def pham_form(x, y) -> Eis:
    """psi on r-coordinates (or EtaPolynomials)."""
    px = x if isinstance(x, EtaPolynomial) else lift(x)
    py = y if isinstance(y, EtaPolynomial) else lift(y)
    return psi_poly(px, py)


def aggregate_form(x, y) -> EtaPolynomial:
    """Psi(x, y) = sum_i psi(x, eta^i y) eta^i."""
    px = x if isinstance(x, EtaPolynomial) else lift(x)
    py = y if isinstance(y, EtaPolynomial) else lift(y)
    return EtaPolynomial(tuple(psi_poly(px, py.shift(i)) for i in range(N)))


@lru_cache(maxsize=None)
def gram_in_r_basis() -> tuple:
    return tuple(tuple(psi_poly(basis_poly(i), basis_poly(j)) for j in range(1, 11)) for i in range(1, 11))


@lru_cache(maxsize=None)
def pham_lattice() -> HermitianLattice:
    return HermitianLattice(gram_in_r_basis(), "A_O")


def unit_normalize_to_lambda10() -> tuple:
    """Units u_1..u_10 with psi(u_i r_i, u_j r_j) equal to the Lambda^10 Gram.

    Found by a sequential search: u_1 = 1, then u_{i+1} is the unit making the
    superdiagonal entry theta.
    """
    from .lattice import lambda_gram

    g = gram_in_r_basis()
    target = lambda_gram(RANK)
    us = [ONE]
    for i in range(RANK - 1):
        nxt = [u for u in units() if us[i] * u.conjugate() * g[i][i + 1] == target[i][i + 1]]
        if not nxt:
            raise PhamCheckFailed(f"no unit normalizes entry ({i + 1}, {i + 2})")
        us.append(nxt[0])
    for i in range(RANK):
        for j in range(RANK):
            if us[i] * us[j].conjugate() * g[i][j] != target[i][j]:
                raise PhamCheckFailed("unit rescaling does not give the Lambda^10 Gram")
    return tuple(us)


# ---------------------------------------------------------------------------
# monodromy


def _matrix_from_images(images) -> tuple:
    """Columns are images of r_1..r_10."""
    return tuple(tuple(images[j][i] for j in range(RANK)) for i in range(RANK))


def _map_from_poly_action(action) -> UnitaryMap:
    images = [reduce_to_basis(action(basis_poly(i))) for i in range(1, 11)]
    return UnitaryMap(pham_lattice(), _matrix_from_images(images))


def multiplication_by_eta(k: int = 1) -> UnitaryMap:
    return _map_from_poly_action(lambda p: p.shift(k))


def scalar(u: Eis) -> UnitaryMap:
    return _map_from_poly_action(lambda p: u * p)


def _t0_poly(p: EtaPolynomial) -> EtaPolynomial:
    """Monodromy table with tau -> w: eta^i e gets -(1+w)e, e, w e for i = 0, 1, -1."""
    delta = {0: -(ONE + OMEGA), 1: ONE, N - 1: OMEGA}
    extra = ZERO
    for i, c in enumerate(p.coeffs):
        if i in delta:
            extra = extra + c * delta[i]
    return p + EtaPolynomial.from_terms({0: extra})


@lru_cache(maxsize=None)
def monodromy_T0_table() -> UnitaryMap:
    return _map_from_poly_action(_t0_poly)


@lru_cache(maxsize=None)
def monodromy_T0_reflection() -> UnitaryMap:
    """x -> x + w^{-1} theta^{-1} psi(x, e) e."""
    e = eta_power(0)
    coeff = omega_power(-1) / THETA

    def act(p):
        return p + EtaPolynomial.from_terms({0: coeff * psi_poly(p, e)})

    images = []
    for i in range(1, 11):
        q = act(basis_poly(i))
        images.append(reduce_to_basis(EtaPolynomial(tuple(Eis.coerce(c) for c in q.coeffs))))
    if not all(c.is_integral() for im in images for c in im):
        raise PhamCheckFailed("reflection is not integral")
    return UnitaryMap(pham_lattice(), _matrix_from_images(images))


def monodromy_T(k: int) -> UnitaryMap:
    """T_k = eta^k T_0 eta^{-k}."""
    k %= N
    return multiplication_by_eta(k) @ monodromy_T0_table() @ multiplication_by_eta(-k)


@dataclass
class Check:
    name: str
    passed: bool
    detail: object = None


def verify_braid_and_R() -> list:
    ts = [monodromy_T(k) for k in range(N)]
    checks = []
    checks.append(Check("T0 table equals reflection", monodromy_T0_table() == monodromy_T0_reflection()))
    checks.append(Check("T_k^3 = 1", all((t @ t @ t).is_identity() for t in ts)))
    braid = all(ts[k] @ ts[(k + 1) % N] @ ts[k] == ts[(k + 1) % N] @ ts[k] @ ts[(k + 1) % N] for k in range(N))
    checks.append(Check("adjacent braid relations (12)", braid))
    far = [
        (k, l)
        for k in range(N)
        for l in range(k + 1, N)
        if (k - l) % N not in (1, N - 1)
    ]
    comm = all(ts[k] @ ts[l] == ts[l] @ ts[k] for k, l in far)
    checks.append(Check(f"distant commutations ({len(far)})", comm))
    r = ts[1]
    for k in range(2, N):
        r = r @ ts[k]
    rs = ts[N - 1]
    for k in range(N - 2, 0, -1):
        rs = rs @ ts[k]
    eta = multiplication_by_eta(1)
    w = scalar(OMEGA)
    checks.append(Check("R = w eta", r == w @ eta))
    checks.append(Check("R* = eta^-1", rs == multiplication_by_eta(-1)))
    checks.append(Check("R R* = w", (r @ rs) == w))
    checks.append(Check("(R*)^12 = 1", (rs ** 12).is_identity()))
    return checks


# ---------------------------------------------------------------------------
# special vectors


def eisenstein_image() -> tuple:
    """u = class of sum (-1)^i eta^i and the 6-vector z with u = 2 theta z."""
    u = reduce_to_basis(EtaPolynomial(tuple(Eis((-1) ** i) for i in range(N))))
    winv = omega_power(-1)
    zpoly = EtaPolynomial.from_terms(
        {2: winv, 8: winv, 3: 1, 4: 1, 9: 1, 10: 1, 5: OMEGA, 11: OMEGA}
    )
    z = reduce_to_basis(zpoly)
    if tuple(2 * THETA * c for c in z) != u:
        raise PhamCheckFailed("u is not 2 theta z")
    return u, z


def l0_poly() -> EtaPolynomial:
    return EtaPolynomial((ONE, ONE + OMEGA, 2 * OMEGA, 2 * OMEGA - 1, OMEGA - 1))


def isotropic_l0_check() -> dict:
    l0 = l0_poly()
    prods = {i: psi_poly(l0, eta_power(i)) for i in range(N)}
    ok = psi_poly(l0, l0) == 0 and all(prods[i] == 0 for i in range(N) if i % 6 != 5)
    return {
        "psi(l0,l0)": psi_poly(l0, l0),
        "psi(l0,eta^i e)": prods,
        "passed": ok and any(prods[i] != 0 for i in (5, 11)),
    }


# ---------------------------------------------------------------------------
# the integral module A = Z[tau, eta]/(sum tau^i, sum eta^i, sum (tau eta)^i)


def _mono(a: int, b: int) -> int:
    return 6 * (b % N) + (a % 6)


def _group_ring_mul(x: list, y: list) -> list:
    out = [0] * 72
    for i, c in enumerate(x):
        if not c:
            continue
        a1, b1 = i % 6, i // 6
        for j, d in enumerate(y):
            if d:
                a2, b2 = j % 6, j // 6
                out[_mono(a1 + a2, b1 + b2)] += c * d
    return out


def _group_ring_conj(x: list) -> list:
    out = [0] * 72
    for i, c in enumerate(x):
        if c:
            out[_mono(-(i % 6), -(i // 6))] += c
    return out


def _monomial(a: int, b: int) -> list:
    v = [0] * 72
    v[_mono(a, b)] = 1
    return v


@dataclass
class IntegralPhamModule:
    """The free part of Z^72 / R, presented by a surjection v -> v P.

    P is a saturated basis of the annihilator of R, so the kernel of the
    projection is the saturation of R; ``section`` holds preimages s_k with
    s_k P = k-th unit vector.
    """

    relations: list
    projection: list  # 72 x rank
    section: list  # rank x 72
    torsion_order: int  # order of the torsion subgroup of the literal presentation

    @property
    def rank(self) -> int:
        return len(self.section)

    def reduce(self, vec: list) -> list:
        """Coordinates of the class of a group-ring element."""
        return linalg.matmul([list(vec)], self.projection)[0]

    def element(self, k: int) -> list:
        return list(self.section[k])

    def monodromy_matrix(self) -> list:
        """Columns are images of the basis classes."""
        cols = [self.reduce(t_hat_integral(self.element(k))) for k in range(self.rank)]
        return linalg.transpose(cols)

    def pairing_R(self, a: list, b: list) -> list:
        """<a, b>_R = (1 - tau)(1 - eta) a conj(b (tau eta - 1)) in Z[C6 x C12]."""
        one, tau, eta, taueta = _monomial(0, 0), _monomial(1, 0), _monomial(0, 1), _monomial(1, 1)
        pre = _group_ring_mul([w - x - y + z for w, x, y, z in zip(one, tau, eta, taueta)], a)
        post = _group_ring_mul(b, [x - y for x, y in zip(taueta, one)])
        return _group_ring_mul(pre, _group_ring_conj(post))

    def intersection_matrix(self) -> list:
        """Coefficient of the identity in <b_i, b_j>_R."""
        n = self.rank
        return [[self.pairing_R(self.element(i), self.element(j))[0] for j in range(n)] for i in range(n)]


def t_hat_integral(vec: list) -> list:
    """Z[C6]-linear monodromy: eta^i gets -(1+tau), 1, tau added for i = 0, 1, -1."""
    delta = {0: [(0, -1), (1, -1)], 1: [(0, 1)], N - 1: [(1, 1)]}
    out = list(vec)
    for idx, c in enumerate(vec):
        if not c:
            continue
        a, b = idx % 6, idx // 6
        for da, sign in delta.get(b, []):
            out[_mono(a + da, 0)] += sign * c
    return out


@lru_cache(maxsize=None)
def integral_pham_module() -> IntegralPhamModule:
    n_tau = [0] * 72
    n_eta = [0] * 72
    n_mix = [0] * 72
    for a in range(6):
        n_tau[_mono(a, 0)] += 1
    for b in range(N):
        n_eta[_mono(0, b)] += 1
        n_mix[_mono(b, b)] += 1
    rows = []
    for rel in (n_tau, n_eta, n_mix):
        for a in range(6):
            for b in range(N):
                rows.append(_group_ring_mul(rel, _monomial(a, b)))
    torsion = linalg.index_in_saturation(linalg.row_span_basis(rows, linalg.ZZ), 72, linalg.ZZ)
    # The annihilator of the relations cuts out A modulo its torsion.
    proj_t = linalg.right_kernel(rows, 72, linalg.ZZ)  # rank x 72, saturated
    proj = linalg.transpose(proj_t)
    ech = linalg.echelon(proj, linalg.ZZ)
    k = len(proj_t)
    if ech.rank != k or any(ech.rows[i][j] != (1 if i == j else 0) for i in range(k) for j in range(k)):
        raise PhamCheckFailed("projection is not surjective")
    return IntegralPhamModule(rows, proj, [ech.transform[i] for i in range(k)], torsion)


def adjoint_kernel() -> list:
    """Kernel of v -> (1 - tau)(1 - eta)(1 - tau eta) v in Z[C6 x C12]/(N_tau, N_eta).

    The target is free, so the kernel is saturated; it should agree with the
    saturation of the relation lattice of A.
    """
    one, tau, eta, taueta = _monomial(0, 0), _monomial(1, 0), _monomial(0, 1), _monomial(1, 1)
    d = _group_ring_mul([w - x - y + z for w, x, y, z in zip(one, tau, eta, taueta)],
                        [x - y for x, y in zip(one, taueta)])
    n_tau = [0] * 72
    n_eta = [0] * 72
    for a in range(6):
        n_tau[_mono(a, 0)] += 1
    for b in range(N):
        n_eta[_mono(0, b)] += 1
    ideal = linalg.row_span_basis(
        [_group_ring_mul(rel, _monomial(a, b)) for rel in (n_tau, n_eta) for a in range(6) for b in range(N)],
        linalg.ZZ,
    )
    images = [None] * 72
    for a in range(6):
        for b in range(N):
            images[_mono(a, b)] = _group_ring_mul(d, _monomial(a, b))
    # v maps into the ideal iff (v, w) is in the left kernel of [images; ideal]
    ker = linalg.left_kernel(images + ideal, linalg.ZZ)
    return linalg.row_span_basis([row[:72] for row in ker], linalg.ZZ)


def _int_power(m: list, k: int) -> list:
    out = linalg.identity(len(m), linalg.ZZ)
    for _ in range(k):
        out = linalg.matmul(out, m)
    return out


def _int_rank(m: list) -> int:
    rows = [r for r in m if any(r)]
    return linalg.echelon(rows, linalg.ZZ, reduce_above=False).rank if rows else 0


def integral_monodromy_report() -> dict:
    """Facts about the integral monodromy on the rank-50 module."""
    mod = integral_pham_module()
    n = mod.rank
    t = mod.monodromy_matrix()
    ident = linalg.identity(n, linalg.ZZ)
    t3 = _int_power(t, 3)
    t6 = linalg.matmul(t3, t3)
    tau = linalg.transpose([mod.reduce(_group_ring_mul(_monomial(1, 0), mod.element(k))) for k in range(n)])
    one_plus_tau = [[tau[i][j] + (1 if i == j else 0) for j in range(n)] for i in range(n)]
    diff6 = [[t6[i][j] - ident[i][j] for j in range(n)] for i in range(n)]
    form = mod.intersection_matrix()
    tt = linalg.transpose(t)
    return {
        "rank": n,
        "torsion_order_of_presentation": mod.torsion_order,
        "relations_preserved": all(not any(mod.reduce(t_hat_integral(r))) for r in mod.relations),
        "T^3 == 1": t3 == ident,
        "T^6 == 1": t6 == ident,
        "rank(T^6 - 1)": _int_rank(diff6),
        "T^6 == 1 on (1+tau)A": not any(any(r) for r in linalg.matmul(diff6, one_plus_tau)),
        "form antisymmetric": all(form[i][j] == -form[j][i] for i in range(n) for j in range(n)),
        "form determinant": linalg.determinant(form),
        "T preserves form": linalg.matmul(linalg.matmul(tt, form), t) == form,
    }
