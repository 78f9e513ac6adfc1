import pytest
from hypothesis import given

from conftest import eis
from eislattice.lattice import standard_lattice
from eislattice.parse import ParseError, parse_scalar, parse_vector
from eislattice.ring import OMEGA, THETA, Eis


def test_scalars():
    assert parse_scalar("w") == OMEGA
    assert parse_scalar("th") == THETA
    assert parse_scalar("th^2") == Eis(-3)
    assert parse_scalar("w^6") == Eis(1)
    assert parse_scalar("w^-1") == OMEGA.conjugate()
    assert parse_scalar("−1+2ω") == THETA
    assert parse_scalar("2*(1-w)") == Eis(2, -2)
    assert parse_scalar("[3, -1]") == Eis(3, -1)


@given(eis(20))
def test_scalar_roundtrip(x):
    assert parse_scalar(f"{x.a}+({x.b})*w") == x


def test_vectors():
    lam = standard_lattice("lambda4")
    assert parse_vector("r1 - w*r4") == lam.vector([1, 0, 0, Eis(0, -1)])
    assert parse_vector("[[1,0],[0,1],0,0]") == lam.vector([1, OMEGA, 0, 0])
    big = parse_vector("r1' + th*r2'' + e - f")
    assert big.lattice.name == "Lambda"
    assert big.coords[0] == 1 and big.coords[5] == THETA and big.coords[8] == 1 and big.coords[9] == -1


@pytest.mark.parametrize(
    "text",
    ["r1 + 1", "r1 * r2", "r5", "r1' + r2", "r9'", "(r1", "r1 $ r2", "w", "0", "r1^2", "[1, 0]"],
)
def test_vector_errors(text):
    with pytest.raises(ParseError):
        parse_vector(text)


def test_frame_names_need_lambda():
    with pytest.raises(ParseError):
        parse_vector("e", "lambda4")
