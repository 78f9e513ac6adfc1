import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from conftest import eis
from eislattice import linalg, pham
from eislattice.lattice import discriminant, lambda_gram, signature
from eislattice.pham import (
    EtaPolynomial,
    aggregate_form,
    eisenstein_image,
    eta_power,
    gram_in_r_basis,
    integral_monodromy_report,
    integral_pham_module,
    isotropic_l0_check,
    l0_poly,
    lift,
    monodromy_T,
    monodromy_T0_table,
    multiplication_by_eta,
    pham_form,
    psi_poly,
    reduce_to_basis,
    relation_polys,
    scalar,
    unit_normalize_to_lambda10,
    verify_braid_and_R,
)
from eislattice.ring import OMEGA, ONE, THETA, ZERO, Eis, omega_power, units

W = sympy.Rational(1, 2) + sympy.sqrt(-3) / 2


def coords_of(p):
    return reduce_to_basis(p)


def test_reduce_examples():
    assert coords_of(EtaPolynomial(tuple(ONE for _ in range(12)))) == (ZERO,) * 10
    r5 = coords_of(EtaPolynomial.from_terms({5: omega_power(5)}))
    assert r5 == tuple(ONE if i == 4 else ZERO for i in range(10))


def test_reduce_of_one_against_linear_solve():
    # unknowns: c_1..c_10 (r-coordinates) and s_1, s_2 (relation multipliers)
    cs = sympy.symbols("c1:11")
    ss = sympy.symbols("s1:3")
    eqs = []
    for k in range(12):
        lhs = (cs[k - 1] * W**k if 1 <= k <= 10 else 0) - (1 if k == 0 else 0)
        rhs = ss[0] + ss[1] * W**k
        eqs.append(sympy.expand(lhs - rhs))
    sol = sympy.solve(eqs, cs + ss, dict=True)[0]
    got = coords_of(eta_power(0))
    for c, x in zip(cs, got):
        assert sympy.simplify(sol[c] - (x.a + x.b * W)) == 0


def test_reduce_of_one_value():
    got = coords_of(eta_power(0))
    assert [x.pair for x in got] == [(-2, 1), (-2, 2), (-1, 2), (0, 1), (0, 0), (-1, 0), (-2, 1), (-2, 2), (-1, 2), (0, 1)]


@settings(max_examples=40)
@given(st.lists(eis(5), min_size=10, max_size=10), eis(5), st.integers(0, 11))
def test_reduction_is_linear_and_kills_relations(c, s, k):
    assert coords_of(lift(c)) == tuple(c)
    assert coords_of(s * lift(c)) == tuple(s * x for x in c)
    for rel in relation_polys():
        assert coords_of(s * rel.shift(k)) == (ZERO,) * 10


def test_form_values():
    e = eta_power(0)
    assert psi_poly(e, e) == 3
    assert psi_poly(e, eta_power(1)) == -ONE - OMEGA
    agg = aggregate_form(e, e)
    expected = [ZERO] * 12
    expected[0], expected[1], expected[11] = Eis(3), -ONE - OMEGA, -ONE - omega_power(-1)
    assert list(agg.coeffs) == expected


@settings(max_examples=30)
@given(st.lists(eis(3), min_size=10, max_size=10), st.lists(eis(3), min_size=10, max_size=10))
def test_form_is_well_defined_and_hermitian(x, y):
    # adding relations to a lift does not change the value
    px = lift(x) + relation_polys()[0].shift(3) + (OMEGA * relation_polys()[1])
    assert psi_poly(px, lift(y)) == pham_form(x, y)
    assert pham_form(x, y) == pham_form(y, x).conjugate()


def test_gram_shape_and_invariants():
    g = gram_in_r_basis()
    assert all(g[i][i] == 3 for i in range(10))
    assert all(g[i][j] == 0 for i in range(10) for j in range(10) if abs(i - j) > 1)
    assert all(g[i][i + 1] in {u * THETA for u in units()} for i in range(9))
    lat = pham.pham_lattice()
    assert signature(lat) == (9, 1, 0)
    assert discriminant(lat) == -243


def test_unit_normalization():
    us = unit_normalize_to_lambda10()
    g, target = gram_in_r_basis(), lambda_gram(10)
    assert all(us[i] * us[j].conjugate() * g[i][j] == target[i][j] for i in range(10) for j in range(10))


def test_t0_values():
    t0 = monodromy_T0_table()
    e = coords_of(eta_power(0))
    eta_e = coords_of(eta_power(1))
    lat = pham.pham_lattice()
    assert t0(lat.vector(e)) == -OMEGA * lat.vector(e)
    assert t0(lat.vector(eta_e)) == lat.vector(eta_e) + lat.vector(e)
    assert (t0 ** 3).is_identity()


def test_eta_and_scalars():
    eta = multiplication_by_eta(1)
    assert eta.order() == 12
    w = scalar(OMEGA)
    assert all(w @ monodromy_T(k) == monodromy_T(k) @ w for k in range(12))


def test_all_braid_checks_pass():
    checks = verify_braid_and_R()
    assert len(checks) == 8
    assert all(c.passed for c in checks), [c.name for c in checks if not c.passed]


def test_eisenstein_vector():
    u, z = eisenstein_image()
    lat = pham.pham_lattice()
    assert lat.psi(u, u) == 72 and lat.psi(z, z) == 6
    assert tuple(2 * THETA * c for c in z) == u


def test_l0():
    rep = isotropic_l0_check()
    assert rep["passed"]
    l0 = l0_poly()
    assert psi_poly(l0, l0) == 0
    assert psi_poly(l0, eta_power(3)) == 0
    assert psi_poly(l0, eta_power(5)) != 0


# -- integral module ---------------------------------------------------------


def test_presentation_against_smith_form():
    mod = integral_pham_module()
    snf = smith_normal_form(sympy.Matrix(mod.relations), domain=sympy.ZZ)
    diag = [abs(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert 72 - len(diag) == mod.rank == 50
    torsion = 1
    for d in diag:
        torsion *= d
    assert torsion == mod.torsion_order == 6


def test_adjoint_kernel_is_saturated_relations():
    mod = integral_pham_module()
    sat = linalg.row_span_basis(linalg.saturation(mod.relations, 72, linalg.ZZ), linalg.ZZ)
    assert linalg.row_span_basis(pham.adjoint_kernel(), linalg.ZZ) == sat


def test_integral_monodromy_facts():
    rep = integral_monodromy_report()
    assert rep["rank"] == 50
    assert rep["relations_preserved"]
    assert rep["form antisymmetric"] and abs(rep["form determinant"]) == 1
    assert rep["T preserves form"]
    assert not rep["T^3 == 1"]
    assert rep["T^6 == 1 on (1+tau)A"]


def test_integral_monodromy_characteristic_polynomial():
    t = sympy.Matrix(integral_pham_module().monodromy_matrix())
    lam = sympy.symbols("lam")
    cp = sympy.factor(t.charpoly(lam).as_expr())
    assert sympy.expand(cp - (lam - 1) ** 46 * (lam**2 - lam + 1) * (lam**2 + lam + 1)) == 0
