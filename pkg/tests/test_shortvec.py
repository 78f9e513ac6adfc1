import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eislattice.lattice import LatticeError, standard_lattice, underlying_integral_form
from eislattice.ring import units
from eislattice.shortvec import (
    brute_force_vectors_of_norm,
    integral_vectors_of_norm,
    unit_orbit_representatives,
    vectors_of_norm,
)


def test_counts_lambda4():
    lam = standard_lattice("lambda4")
    assert len(vectors_of_norm(lam, 3)) == 240
    assert len(vectors_of_norm(lam, 6)) == 2160


def test_rank_one():
    vs = vectors_of_norm(standard_lattice("lambda1"), 3)
    assert len(vs) == 6
    assert len(unit_orbit_representatives(vs)) == 1


@pytest.mark.parametrize("k,n,box", [(1, 3, 3), (1, 6, 3), (2, 3, 2), (2, 6, 2), (3, 3, 2)])
def test_against_brute_force(k, n, box):
    lam = standard_lattice(f"lambda{k}")
    fast = vectors_of_norm(lam, n)
    slow = brute_force_vectors_of_norm(lam, n, box)
    assert [v.key for v in fast] == sorted(v.key for v in slow)


def test_lambda2_count():
    assert len(vectors_of_norm(standard_lattice("lambda2"), 3)) == 24


def test_e8_roots_of_underlying_form():
    q = underlying_integral_form(standard_lattice("lambda4"))
    assert len(integral_vectors_of_norm(q, 2)) == 240


def test_representatives():
    lam = standard_lattice("lambda4")
    assert len(unit_orbit_representatives(vectors_of_norm(lam, 3))) == 40
    assert len(unit_orbit_representatives(vectors_of_norm(lam, 6))) == 360


def test_representatives_need_closed_input():
    vs = vectors_of_norm(standard_lattice("lambda1"), 3)
    with pytest.raises(ValueError):
        unit_orbit_representatives(vs[:2])


def test_bad_norms():
    lam = standard_lattice("lambda4")
    with pytest.raises(ValueError):
        vectors_of_norm(lam, 4)
    with pytest.raises(ValueError):
        vectors_of_norm(lam, 0)
    with pytest.raises(LatticeError):
        vectors_of_norm(standard_lattice("lambda5"), 3)


def test_canonical_order():
    vs = vectors_of_norm(standard_lattice("lambda3"), 6)
    keys = [v.key for v in vs]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 4), st.sampled_from([3, 6]))
def test_output_is_unit_stable_with_exact_norms(k, n):
    vs = vectors_of_norm(standard_lattice(f"lambda{k}"), n)
    keys = {v.key for v in vs}
    assert all(v.norm() == n for v in vs)
    assert all((u * v).key in keys for v in vs for u in units())
