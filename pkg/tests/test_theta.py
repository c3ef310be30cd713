from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmacmahon.macmahon import validate
from qmacmahon.series import BiSeries, mul, pochhammer
from qmacmahon.theta import (
    alpha,
    eta,
    normalize_char,
    theta_series,
    theta_value_series,
    verify_eta_cubed,
    verify_heat,
    verify_jtp,
    verify_value_consistency,
)

half = F(1, 2)


def lattice_oracle(r, scale, signed, t, order, jrange=40):
    """Enumerate j over a fixed wide window, no outward scan."""
    out = {}
    for j in range(-jrange, jrange + 1):
        m = j + r
        e = scale * m * m / 2
        if e < order:
            out[(e, m)] = out.get((e, m), 0) + (-1 if signed and j % 2 else 1) * m ** t
    return out


def test_theta_series_example():
    th = theta_series(half, 1, True, 2)
    assert dict(th.items()) == {
        (F(1, 8), half): 1, (F(1, 8), -half): -1,
        (F(9, 8), F(3, 2)): -1, (F(9, 8), F(-3, 2)): 1,
    }


def test_alpha_characteristic_minimum():
    r = alpha(3, 1)
    assert r == F(-1, 6)
    th = theta_series(r, 3, True, 2)
    assert th.valuation() == F(1, 24)
    assert th.coeff(F(1, 24), F(-1, 6)) == 1
    assert theta_series(r, 3, True, 0).is_zero()


@pytest.mark.parametrize("r", [half, F(1, 6), F(-1, 6), F(1, 4), F(1, 10), F(0), F(-1, 3)])
@pytest.mark.parametrize("scale", [1, 3])
@pytest.mark.parametrize("signed", [True, False])
def test_theta_matches_lattice_oracle(r, scale, signed):
    want = {k: v for k, v in lattice_oracle(r, scale, signed, 0, 12).items() if v}
    assert dict(theta_series(r, scale, signed, 12).items()) == want


def test_value_series_examples():
    v = theta_value_series(half, 1, True, 1, 10)
    assert dict(v.items()) == {(F(1, 8), 0): 1, (F(9, 8), 0): -3, (F(25, 8), 0): 5, (F(49, 8), 0): -7}
    assert theta_value_series(half, 1, True, 0, 10).is_zero()
    w = theta_value_series(F(-1, 6), 3, True, 0, 5)
    # frozen from lattice_oracle
    assert dict(w.items()) == {(F(1, 24), 0): 1, (F(25, 24), 0): -1, (F(49, 24), 0): -1}


@pytest.mark.parametrize("t", [0, 2, 4, 6])
@pytest.mark.parametrize("scale", [1, 2, 5])
def test_odd_characteristic_even_derivatives_vanish(t, scale):
    assert theta_value_series(half, scale, True, t, 30).is_zero()


@given(st.sampled_from([half, F(1, 6), F(-1, 6), F(1, 4), F(0), F(2, 5)]),
       st.integers(1, 4), st.booleans(), st.integers(0, 5))
def test_value_series_is_derivative_at_one(r, scale, signed, t):
    assert verify_value_consistency(r, scale, signed, t, 15).passed


def test_eta_examples():
    e = eta(1, 3)
    assert dict(e.items()) == {(F(1, 24), 0): 1, (F(25, 24), 0): -1, (F(49, 24), 0): -1}
    assert eta(1, 10).coeff(F(1, 24) + 5) == 1
    assert dict(eta(2, 3).items()) == {(F(1, 12), 0): 1, (F(25, 12), 0): -1}


def test_eta_is_pochhammer_shift():
    e = eta(3, 20)
    p = pochhammer(-1, 3, 3, 20 - F(1, 8)).shift(F(1, 8))
    assert e == p


@pytest.mark.parametrize("r", [half, F(1, 6), F(-1, 6), F(1, 4), F(1, 10), F(0), F(1, 3), F(7, 6)])
def test_jtp(r):
    assert verify_jtp(r, 20).passed


def test_jtp_empty_window():
    assert verify_jtp(F(1, 4), 0).passed


@pytest.mark.parametrize("r,scale", [(half, 1), (F(-1, 6), 3), (F(1, 3), 5), (F(0), 2)])
def test_heat(r, scale):
    assert verify_heat(r, scale, 20).passed


@pytest.mark.parametrize("order", [0, 1, 30])
def test_eta_cubed(order):
    assert verify_eta_cubed(order).passed


def test_normalize_char():
    assert normalize_char(F(3, 4)) == (F(-1, 4), 1)
    assert normalize_char(half) == (half, 0)
    assert normalize_char(F(-1, 2)) == (half, -1)


def test_signed_shift_flips_sign():
    # representative r+1 differs from r by the phase exp(-pi i)
    a = theta_series(F(1, 6), 2, True, 10)
    b = theta_series(F(7, 6), 2, True, 10)
    assert b == -a


def z_swap(s):
    return BiSeries({(sq, -sz): c for (sq, sz), c in s.terms.items()}, s.order, s.qden, s.zden)


@pytest.mark.parametrize("n,S", [(3, [1, 2]), (4, [1, 3]), (5, [2, 3]), (6, [1, 5]), (2, [1]),
                                 (4, [2]), (1, [1]), (2, [1, 2]), (3, [1, 2, 3]), (4, [1, 3, 4]),
                                 (4, [2, 4])])
def test_parity_of_symmetric_product(n, S):
    spec = validate(n, S)
    prod = BiSeries.one(12)
    for ell in spec.elems:
        prod = mul(prod, theta_series(alpha(n, ell), n, True, 12))
    flipped = z_swap(prod)
    if spec.contains_n:
        assert flipped == -prod
        assert all((sz * F(1, prod.zden)) % 1 == half for _, sz in prod.terms)
    else:
        assert flipped == prod
        assert all((sz * F(1, prod.zden)) % 1 == 0 for _, sz in prod.terms)
