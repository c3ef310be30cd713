"""Theta series with rational characteristic, their value series, and eta.

All theta objects here are phase-reduced so that every coefficient is
rational. The *signed* family is

    th_r(q^s, z) = sum_j (-1)^j q^(s (j+r)^2 / 2) z^(j+r),

which is ``exp(-pi i r) * theta_r(q^s, -z)``; the unit phase cancels in
every quotient these objects appear in. The *unsigned* family drops the
``(-1)^j``.
"""

import math
from fractions import Fraction

from .series import (
    BiSeries,
    _frac,
    dq,
    dz,
    equal_up_to,
    eval_z1,
    int_pow,
    invert,
    monomial,
    mul,
    pochhammer,
)


def alpha(n, ell):
    """Characteristic ``ell/n - 1/2``."""
    return Fraction(ell, n) - Fraction(1, 2)


def normalize_char(r):
    """Reduce ``r`` mod 1 into ``(-1/2, 1/2]``; returns ``(r0, shift)`` with ``r = r0 + shift``."""
    r = _frac(r)
    shift = math.ceil(r - Fraction(1, 2))
    return r - shift, shift


def _lattice(r, scale, order):
    # integers j with scale*(j+r)^2/2 < order, scanned outward from j ~ -r
    r, order = _frac(r), _frac(order)
    if order <= 0:
        return []
    js = []
    centre = -math.floor(r + Fraction(1, 2))
    j = centre
    while Fraction(scale) * (j + r) ** 2 / 2 < order:
        js.append(j)
        j += 1
    j = centre - 1
    while Fraction(scale) * (j + r) ** 2 / 2 < order:
        js.append(j)
        j -= 1
    return sorted(js)


def theta_series(r, scale, signed, order):
    """Bivariate lattice sum ``sum_j (+-1)^j q^(scale (j+r)^2/2) z^(j+r)``."""
    r, order = _frac(r), _frac(order)
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    zden = r.denominator
    qden = 2 * r.denominator ** 2
    terms = {}
    for j in _lattice(r, scale, order):
        m = j + r
        e = scale * m * m / 2
        terms[(int(e * qden), int(m * zden))] = Fraction(-1 if signed and j % 2 else 1)
    return BiSeries(terms, order, qden, zden).normalized()


def theta_value_series(r, scale, signed, t, order):
    """``sum_j (+-1)^j (j+r)^t q^(scale (j+r)^2/2)``: the t-th z-derivative at z = 1."""
    r, order = _frac(r), _frac(order)
    if t < 0:
        raise ValueError("t must be non-negative")
    qden = 2 * r.denominator ** 2
    terms = {}
    for j in _lattice(r, scale, order):
        m = j + r
        key = (int(scale * m * m / 2 * qden), 0)
        c = m ** t
        if signed and j % 2:
            c = -c
        terms[key] = terms.get(key, 0) + c
    return BiSeries(terms, order, qden, 1).normalized()


def eta(scale, order):
    """``q^(scale/24) prod_{m>=1} (1 - q^(scale m))``."""
    order = _frac(order)
    lead = Fraction(scale, 24)
    if order <= lead:
        return BiSeries.zero(order)
    return pochhammer(-1, scale, scale, order - lead).shift(lead)


def eta_cubed(scale, order):
    """``eta(q^scale)^3`` to the given order."""
    order = _frac(order)
    lead = Fraction(scale, 24)
    # cubing raises the order by twice the leading exponent
    e3 = int_pow(eta(scale, max(order - 2 * lead, lead)), 3)
    return e3.truncate(order) if e3.order > order else e3


def value_quotients(r, scale, signed, tmax, order):
    """``[th^(t) / th^(0) for t in 0..tmax]`` as value series exact to ``order``."""
    order = _frac(order)
    probe = theta_value_series(r, scale, signed, 0, order + 1)
    lead = probe.valuation()
    if lead is None:
        raise ZeroDivisionError(f"value series of characteristic {r} vanishes")
    ext = order + lead
    inv = invert(theta_value_series(r, scale, signed, 0, ext))
    return [mul(theta_value_series(r, scale, signed, t, ext), inv).truncate(order)
            for t in range(tmax + 1)]


def jtp_product(r, order):
    """Product side of the triple product for the lattice sum with characteristic r."""
    r, order = _frac(r), _frac(order)
    r0, _ = normalize_char(r)
    half = Fraction(1, 2)
    if r0 == half:
        pre = monomial(1, Fraction(1, 8), half, order + 1) + monomial(1, Fraction(1, 8), -half, order + 1)
        lead = Fraction(1, 8)
        ups, downs = 1, 1
    else:
        lead = r0 * r0 / 2
        pre = monomial(1, lead, r0, order + 1)
        ups, downs = r0 + half, half - r0
    base = order - lead
    if base <= 0:
        return BiSeries.zero(order)
    prod = pochhammer(-1, 1, 1, base)
    m = 0
    while ups + m < base:
        prod = mul(prod, BiSeries.one(base) + monomial(1, ups + m, 1, base))
        m += 1
    m = 0
    while downs + m < base:
        prod = mul(prod, BiSeries.one(base) + monomial(1, downs + m, -1, base))
        m += 1
    return mul(pre, prod).truncate(order)


def verify_jtp(r, order):
    """Lattice sum vs. product form of the triple product, both built independently."""
    r, order = _frac(r), _frac(order)
    r0, _ = normalize_char(r)
    lhs = theta_series(r0, 1, False, order)
    rhs = jtp_product(r0, order)
    return equal_up_to(lhs, rhs, order, identity="jtp", spec={"r": str(r)})


def verify_heat(r, scale, order):
    """``D_z^2 th = (2/scale) D_q th`` termwise."""
    th = theta_series(r, scale, True, order)
    lhs = dz(dz(th))
    rhs = dq(th).scale(Fraction(2, scale))
    return equal_up_to(lhs, rhs, _frac(order), identity="heat",
                       spec={"r": str(_frac(r)), "scale": scale})


def verify_eta_cubed(order):
    """Product ``eta^3`` against the signed first-derivative value series at r = 1/2."""
    order = _frac(order)
    lhs = eta_cubed(1, order)
    rhs = theta_value_series(Fraction(1, 2), 1, True, 1, order)
    return equal_up_to(lhs, rhs, order, identity="eta3")


def verify_value_consistency(r, scale, signed, t, order):
    """``eval_z1(D_z^t th)`` against the directly summed value series."""
    th = theta_series(r, scale, signed, order)
    for _ in range(t):
        th = dz(th)
    return equal_up_to(eval_z1(th), theta_value_series(r, scale, signed, t, order), _frac(order),
                       identity="value-consistency")


def theta_quotient(r, scale, signed, order):
    """Bivariate ``th_r(q^scale, z) / th_r(q^scale)`` exact to ``order``."""
    order = _frac(order)
    den = theta_value_series(r, scale, signed, 0, order + 1)
    lead = den.valuation()
    if lead is None:
        raise ZeroDivisionError(f"value series of characteristic {r} vanishes")
    ext = order + lead
    num = theta_series(r, scale, signed, ext)
    return mul(num, invert(theta_value_series(r, scale, signed, 0, ext))).truncate(order)


def odd_theta_over_eta3(scale, order):
    """``th_{1/2}(q^scale, z) / eta(q^scale)^3`` (signed) exact to ``order``."""
    order = _frac(order)
    ext = order + Fraction(scale, 8)
    num = theta_series(Fraction(1, 2), scale, True, ext)
    return mul(num, invert(eta_cubed(scale, ext))).truncate(order)
