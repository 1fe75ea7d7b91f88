import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qtorus.cyclotomic import (
    CycScalar,
    as_scalar,
    cyc_add,
    cyc_inv,
    cyc_make,
    cyc_mul,
    cyc_order,
    cyclotomic_poly,
    totient,
    zeta,
)

ORDERS = [1, 2, 3, 4, 5, 6, 8, 12]


def close(a, b):
    return abs(complex(a) - complex(b)) < 1e-9


@st.composite
def scalars(draw, L=None):
    L = L or draw(st.sampled_from(ORDERS))
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4),
                           min_size=totient(L), max_size=totient(L)))
    return CycScalar(L, coeffs)


def test_roots_from_pairs():
    assert cyc_make(0, 1) == 1
    assert cyc_make(1, 2) == -1
    assert cyc_make(1, 4) * cyc_make(1, 4) == cyc_make(1, 2)
    assert close(cyc_make(1, 4) * cyc_make(1, 4), cmath.exp(2j * cmath.pi / 4) ** 2)
    # same root, unreduced fraction
    assert cyc_make(2, 8) == zeta(4)


def test_small_identities():
    z3, z4 = zeta(3), zeta(4)
    assert z3 * z3 * z3 == 1
    assert (1 + z4) * (1 - z4) == 2
    assert z3 + z3 ** 2 == -1
    assert z4 + z4 ** 3 == 0
    x = as_scalar(Fraction(3, 7))
    assert x + 0 == x and 1 * x == x


def test_inverses():
    assert cyc_inv(as_scalar(1)) == 1
    for k in (2, 3, 5, 8):
        assert cyc_inv(zeta(k)) == zeta(k, k - 1)
    z4 = zeta(4)
    assert cyc_inv(1 + z4) == (1 - z4) / 2
    with pytest.raises(ZeroDivisionError):
        as_scalar(0).inverse()


def test_orders():
    assert cyc_order(as_scalar(1)) == 1
    assert cyc_order(as_scalar(-1)) == 2
    assert cyc_order(zeta(4, 3)) == 4
    assert cyc_order(-zeta(3)) == 6
    assert cyc_order(as_scalar(2)) is None
    assert cyc_order(1 + zeta(4)) is None


def test_phi_kills_zeta():
    for L in ORDERS + [9, 10, 15]:
        phi = cyclotomic_poly(L)
        val = sum((zeta(L, k) * int(c) for k, c in enumerate(phi.coeffs())), as_scalar(0))
        assert val == 0
        assert phi.degree() == totient(L)


def test_mixed_orders_promote():
    # zeta_4 * zeta_3 lives in Q(zeta_12)
    a = zeta(4) * zeta(3)
    assert a == zeta(12, 7)
    assert cyc_add(zeta(2), zeta(3)).order in (3, 6)
    assert cyc_mul(zeta(6), zeta(6)) == zeta(3)


def test_json_roundtrip_and_pairs():
    z = zeta(12, 5) + Fraction(1, 3)
    assert as_scalar(z.to_json()) == z
    assert zeta(8, 3).root_pair() == [3, 8]
    assert (1 + zeta(4)).root_pair() is None


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_field_axioms(data):
    L = data.draw(st.sampled_from(ORDERS))
    a, b, c = (data.draw(scalars(L)) for _ in range(3))
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1
    # numeric oracle
    assert close(a * b + c, complex(a) * complex(b) + complex(c))


@given(scalars())
def test_hash_matches_equality(a):
    assert hash(a) == hash(a.promote(2 * a.order if a.order % 2 else a.order))
    assert a == a.promote(3 * a.order)
