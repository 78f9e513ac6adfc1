"""Acceptance suite: one test per criterion, each tagged with its number.

The terminal summary prints one PASS/FAIL line per criterion.
"""

import random
import resource
import time
from functools import lru_cache

import numpy as np
import pytest

from eislattice import classify, f3, kodaira, pham, picard, weierstrass
from eislattice.lattice import discriminant, phi, psi, signature, standard_lattice
from eislattice.linalg import OO, row_span_basis
from eislattice.parse import parse_vector
from eislattice.ring import THETA, ZERO, Eis, omega_power, units
from eislattice.shortvec import vectors_of_norm
from eislattice.unitary import (
    f3_symplectic_form,
    heisenberg_matrix,
    heisenberg_transvection,
    orbit,
    reduce_group_mod_theta,
    stabilizer_order,
    unitary_group_lambda4,
)
from eislattice.verify import eichler_siegel_cases

LAM4 = standard_lattice("lambda4")


@lru_cache(maxsize=None)
def group_and_time():
    t = time.perf_counter()
    g = unitary_group_lambda4()
    return g, time.perf_counter() - t


@pytest.mark.criterion(1)
def test_c01_short_vector_counts():
    for n, want in ((3, 240), (6, 2160)):
        t = time.perf_counter()
        vs = vectors_of_norm(LAM4, n)
        assert len(vs) == want
        assert time.perf_counter() - t < 5


@pytest.mark.criterion(2)
def test_c02_group_generation():
    g, seconds = group_and_time()
    assert g.order == 155520
    red = reduce_group_mod_theta(g)
    assert len({m.tobytes() for m in red.astype(np.int8)}) == 51840
    ident = np.eye(4, dtype=np.int64)
    kernel = g.unitary_maps(i for i in range(g.order) if np.array_equal(red[i], ident))
    scalars = {k: tuple(tuple(omega_power(k) if i == j else ZERO for j in range(4)) for i in range(4)) for k in range(6)}
    assert sorted(k for m in kernel for k, s in scalars.items() if m.matrix == s) == [0, 2, 4]
    assert len(kernel) == 3
    assert seconds < 600
    assert resource.getrusage(resource.RUSAGE_SELF).ru_maxrss < 2 * 1024 * 1024  # KiB


@pytest.mark.criterion(3)
def test_c03_transitivity():
    g, _ = group_and_time()
    for seed, size in ((LAM4.vector([1, 0, 0, 0]), 240), (LAM4.vector([1, 1, 0, 0]), 2160)):
        orb = orbit(g, seed)
        assert len(orb) == size
        assert set(orb) == set(vectors_of_norm(LAM4, psi(seed, seed).a))
        assert len(orb) * stabilizer_order(g, seed) == g.order


@pytest.mark.criterion(4)
def test_c04_decompositions():
    t = time.perf_counter()
    for z in vectors_of_norm(LAM4, 6):
        td = classify.theta_decompositions(z)
        assert len(td) == 3
        spans = {tuple(map(tuple, row_span_basis([list(r.coords), list(rp.coords)], OO))) for r, rp in td}
        assert len(spans) == 1
        for r, rp in td:
            assert r + rp == z and psi(r, rp) == THETA
        pd = classify.perpendicular_decompositions(z)
        assert len(pd) == 4
        for r, rp in pd:
            assert r + rp == z and psi(r, rp) == 0
    z = parse_vector("r1+r2")
    listed = [parse_vector(t) for t in ("w*r2+r3", "w*r2+r3+w^-1*r4", "w*r2+r3+w^-2*r4", "w*r1+2*r2-th*r3-r4")]
    pairs = classify.perpendicular_decompositions(z)
    assert {frozenset(p) for p in pairs} == {frozenset((r, z - r)) for r in listed}
    assert time.perf_counter() - t < 60


def symplectic_line_counts(q: int = 3) -> dict:
    """Flag/line incidences in a 4-dimensional symplectic space, by counting subspaces."""
    lines = (q ** 4 - 1) // (q - 1)
    planes = q ** 2 * (q ** 4 - 1) // (q ** 2 - 1)  # nondegenerate planes
    flags = planes * (q ** 2 - 1)
    per_flag = {
        "a": 1,
        "b": q,  # the other lines of P
        "e": q + 1,  # lines of the complement of P
        "d": (q ** 3 - 1) // (q - 1) - 1 - (q + 1),  # v-perp minus <v> and P-perp
    }
    per_flag["c"] = lines - sum(per_flag.values())
    return {k: flags * v for k, v in per_flag.items()}


@pytest.mark.criterion(5)
def test_c05_five_class_partition():
    t = time.perf_counter()
    census = classify.relative_position_census()
    elapsed = time.perf_counter() - t
    sizes = census["sizes"]
    assert sum(sizes.values()) == 240 * 2160
    assert len(sizes) == 5 and all(sizes.values())
    # classes restricted to one 3-vector per unit orbit (240 / 6 of them)
    expected = symplectic_line_counts()
    assert expected == {"a": 720, "b": 2160, "c": 17280, "d": 5760, "e": 2880}
    assert {k: v // 6 for k, v in sizes.items()} == {k: 3 * v for k, v in expected.items()}
    assert all(v % 6 == 0 for v in sizes.values())
    assert census["mismatches"] == 0
    assert elapsed < 300


@pytest.mark.criterion(6)
def test_c06_flags():
    j = f3_symplectic_form(LAM4)
    hits: dict = {}
    for z in vectors_of_norm(LAM4, 6):
        fl = classify.flag_of(z)
        hits[(fl.v, fl.plane)] = hits.get((fl.v, fl.plane), 0) + 1
    nondeg = [p for p in f3.planes(4) if f3.is_nondegenerate_plane(j, p)]
    assert len(nondeg) == 90
    model = {(tuple(int(x) for x in v), p) for v, p in f3.flags(j)}
    assert len(model) == 720 == 90 * 8
    assert set(hits) == model
    assert set(hits.values()) == {3}


@pytest.mark.criterion(7)
def test_c07_pham_gram():
    g = pham.gram_in_r_basis()
    n = len(g)
    assert n == 10
    assert all(g[i][i] == 3 for i in range(n))
    assert all(g[i][j] == 0 for i in range(n) for j in range(n) if abs(i - j) > 1)
    assert all(g[i][i + 1] in {u * THETA for u in units()} for i in range(n - 1))
    us = pham.unit_normalize_to_lambda10()
    target = standard_lattice("lambda10").gram
    scaled = [[us[i] * g[i][j] * us[j].conjugate() for j in range(n)] for i in range(n)]
    assert [list(r) for r in target] == scaled
    lat = pham.pham_lattice()
    assert signature(lat) == (9, 1, 0)
    assert discriminant(lat) == -243


@pytest.mark.criterion(8)
def test_c08_monodromy():
    checks = {c.name: c.passed for c in pham.verify_braid_and_R()}
    assert checks["T_k^3 = 1"]
    assert checks["adjacent braid relations (12)"]
    assert any(k.startswith("distant commutations") and v for k, v in checks.items())
    assert checks["R = w eta"] and checks["R* = eta^-1"]
    rep = pham.integral_monodromy_report()
    assert rep["rank"] == 50
    assert not rep["T^3 == 1"]
    assert rep["T^6 == 1"], f"integral T^6 != 1: rank(T^6 - 1) = {rep['rank(T^6 - 1)']}"


@pytest.mark.criterion(9)
def test_c09_eisenstein_vector():
    lat = pham.pham_lattice()
    alt = pham.EtaPolynomial(tuple(Eis((-1) ** i) for i in range(pham.N)))
    u = pham.reduce_to_basis(alt)
    _, z = pham.eisenstein_image()
    assert tuple(2 * THETA * c for c in z) == u
    assert lat.psi(z, z) == 6
    assert lat.psi(u, u) == 72
    l0 = pham.l0_poly()
    assert pham.psi_poly(l0, l0) == 0
    for i in range(pham.N):
        if i % 6 != 5:
            assert pham.psi_poly(l0, pham.eta_power(i)) == 0


@pytest.mark.criterion(10)
def test_c10_picard():
    m = picard.simple_root_dot_matrix()
    c = picard.affine_e8_cartan()
    assert [[-x for x in row] for row in m] == [list(r) for r in c]
    bad = eichler_siegel_cases(random.Random(10), 1000)
    assert bad == {"isometry": 0, "fixes_f": 0, "lift": 0, "additive": 0}


def admissible_vector(rng, big):
    while True:
        v = big.vector([Eis(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(9)] + [ZERO])
        if psi(v, v).a % 6 == 0:
            return v


@pytest.mark.criterion(11)
def test_c11_heisenberg_transvections():
    rng = random.Random(11)
    big = standard_lattice("Lambda")
    e = big.basis_vector(classify.E_INDEX)
    assert psi(e, e) == 0
    for _ in range(1000):
        u, v = admissible_vector(rng, big), admissible_vector(rng, big)
        tu = heisenberg_transvection(big, e, u)  # raises unless unitary and integral
        tv = heisenberg_transvection(big, e, v)
        half = phi(v, u) / 2
        w = [a + b + half * c for a, b, c in zip(u.coords, v.coords, e.coords)]
        assert (tu @ tv).matrix == heisenberg_matrix(big, e.coords, w)


@pytest.mark.criterion(12)
def test_c12_dclass_profiles():
    t = classify.dclass_profile("theta")
    assert (t.rank6, t.rank9, t.lines9) == (1, 2, 4)
    z = classify.dclass_profile("zero")
    assert z.rank6 == 0 and z.rank9 == 1


@pytest.mark.criterion(13)
def test_c13_git():
    X, Y = weierstrass.linear_form(1, 0), weierstrass.linear_form(0, 1)
    DS, PS = weierstrass.DivisorStability, weierstrass.PairStability
    assert weierstrass.divisor_stability((1,) * 12) is DS.STABLE
    assert weierstrass.divisor_stability((6, 6)) is DS.MINIMAL_STRICTLY_SEMISTABLE
    assert weierstrass.divisor_stability((7, 1, 1, 1, 1, 1)) is DS.UNSTABLE
    assert weierstrass.pair_stability(X ** 4, Y ** 6) is PS.STABLE
    assert weierstrass.pair_stability((X * Y) ** 2, (X * Y) ** 3) is PS.SEMISTABLE_NOT_STABLE
    for (lam, mu), want in {(0, 1): (0, 1), (1, 0): (1, 1), (-1, 1): (1, 0)}.items():
        got = weierstrass.minimal_ss_j_invariant(lam, mu)
        assert got == want
        a, b = lam ** 3, lam ** 3 + mu ** 2
        assert got[0] * b == got[1] * a


@pytest.mark.criterion(14)
def test_c14_kodaira():
    t = time.perf_counter()
    triples = kodaira.valid_triples(12)
    for j, d, chi in triples:
        ty = kodaira.kodaira_type(j, d, chi)
        assert kodaira.euler_char(ty) == chi
    for j in kodaira.J_CLASSES:
        for d in [0] if j == "generic" else range(1, 13):
            ok = [x for x in range(23) if (j, d, x) in set(triples)]
            assert len(ok) == 2
            for x in range(23):
                if x not in ok:
                    with pytest.raises(kodaira.InconsistentFiber):
                        kodaira.kodaira_type(j, d, x)
    configs = {c.types for c in kodaira.enumerate_configurations()}
    I = kodaira.I
    assert tuple([I(1)] * 12) in configs
    assert tuple(sorted([I(9)] + [I(1)] * 3)) in configs
    assert not any(I(10) in c for c in configs)
    assert all(sum(kodaira.fiber_root_rank(x) for x in c) <= 8 for c in configs)
    assert time.perf_counter() - t < 60
