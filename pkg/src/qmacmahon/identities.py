"""Exact finite-order checks of the Chebyshev and theta-quotient identities.

Each ``verify_*`` function builds both sides independently and compares them
coefficient by coefficient, returning a :class:`VerificationReport`.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import macmahon
from .macmahon import family, gen_poly
from .series import (
    BiSeries,
    _frac,
    equal_up_to,
    invert,
    monomial,
    mul,
    pochhammer,
    subst_x_to_z,
)
from .theta import alpha, odd_theta_over_eta3, theta_quotient


@dataclass(frozen=True)
class ChebPoly:
    degree: int
    coeffs: tuple  # coeffs[j] multiplies x^j

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        parts = []
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c:
                parts.append(f"{c}" + ("" if j == 0 else "x" if j == 1 else f"x^{j}"))
        return " + ".join(parts).replace("+ -", "- ") or "0"


def chebyshev(j):
    """First-kind Chebyshev polynomial via ``T_{j+1} = 2x T_j - T_{j-1}``."""
    if j < 0:
        raise ValueError("degree must be non-negative")
    prev, cur = [1], [0, 1]
    if j == 0:
        return ChebPoly(0, (1,))
    for _ in range(j - 1):
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return ChebPoly(j, tuple(cur))


def _cheb_half_series(j, qexp, scale, order):
    # scale * T_j(x/2) q^qexp, x in the z-slot
    terms = {}
    for i, c in enumerate(chebyshev(j).coeffs):
        if c:
            terms[(qexp, i)] = Fraction(scale * c, 2 ** i)
    return BiSeries(terms, order)


def _x_family(fam, offset):
    # sum_k A_k x^(2k+offset) as a (q, x) series
    terms = {}
    for k, entry in enumerate(fam.entries):
        for (sq, _), c in entry.terms.items():
            terms[(sq, 2 * k + offset)] = c
    return BiSeries(terms, fam.order)


def thm1_odd_sides(order):
    order = _frac(order)
    lhs = BiSeries.zero(order)
    n = 0
    while n * (n + 1) // 2 < order:
        lhs = lhs + _cheb_half_series(2 * n + 1, n * (n + 1) // 2, 2, order)
        n += 1
    euler = pochhammer(-1, 1, 1, order)
    fam = family(macmahon.validate(1, [1]), "A", "auto", order)
    rhs = mul(euler ** 3, _x_family(fam, 1))
    return lhs, rhs


def thm1_even_sides(order):
    order = _frac(order)
    lhs = BiSeries.one(order)
    n = 1
    while n * n < order:
        lhs = lhs + _cheb_half_series(2 * n, n * n, 2, order)
        n += 1
    prefactor = mul(pochhammer(-1, 2, 2, order), pochhammer(-1, 1, 2, order) ** 2)
    fam = family(macmahon.validate(2, [1]), "A", "auto", order)
    rhs = mul(prefactor, _x_family(fam, 0))
    return lhs, rhs


def verify_thm1_odd(order):
    lhs, rhs = thm1_odd_sides(order)
    return equal_up_to(lhs, rhs, _frac(order), identity="thm1-odd")


def verify_thm1_even(order):
    lhs, rhs = thm1_even_sides(order)
    return equal_up_to(lhs, rhs, _frac(order), identity="thm1-even")


def verify_pochhammer_form(order):
    """``(q^2;q^2)(q;q^2)^2 = (q;q)/(-q;q)``."""
    order = _frac(order)
    lhs = mul(pochhammer(-1, 2, 2, order), pochhammer(-1, 1, 2, order) ** 2)
    rhs = mul(pochhammer(-1, 1, 1, order), invert(pochhammer(1, 1, 1, order)))
    return equal_up_to(lhs, rhs, order, identity="thm1-pochhammer")


def thm2_sides(spec, order):
    """``sum_k (-1)^k A_k x^(2k[+1])`` in z-variables, and the theta-quotient product."""
    order = _frac(order)
    poly = gen_poly(spec, "A", order)
    if spec.contains_n:
        poly = poly.shift(0, 1)
    lhs = subst_x_to_z(poly)
    rhs = BiSeries.one(order)
    for ell in spec.others:
        rhs = mul(rhs, theta_quotient(alpha(spec.n, ell), spec.n, True, order))
    if spec.contains_n:
        rhs = mul(rhs, odd_theta_over_eta3(spec.n, order))
    return lhs, rhs


def thm3_sides(spec, order):
    """``[sqrt(1 + x^2/4)] sum_k B_k x^(2k)`` in z-variables, and the unsigned theta quotients."""
    order = _frac(order)
    lhs = subst_x_to_z(gen_poly(spec, "B", order))
    if spec.contains_n:
        # sqrt(1 + x^2/4) = (z^(1/2) + z^(-1/2)) / 2 under x = z^(1/2) - z^(-1/2)
        half = Fraction(1, 2)
        root = monomial(half, 0, half, order) + monomial(half, 0, -half, order)
        lhs = mul(lhs, root)
    rhs = BiSeries.one(order)
    for ell in spec.elems:
        rhs = mul(rhs, theta_quotient(alpha(spec.n, ell), spec.n, False, order))
    return lhs, rhs


def verify_thm2(spec, order):
    lhs, rhs = thm2_sides(spec, order)
    return equal_up_to(lhs, rhs, _frac(order), identity="thm2", spec=spec.to_dict())


def verify_thm3(spec, order):
    lhs, rhs = thm3_sides(spec, order)
    return equal_up_to(lhs, rhs, _frac(order), identity="thm3", spec=spec.to_dict())


def x_degrees(series):
    """Highest x-power at each q-level of a (q, x) series."""
    deg = {}
    for (sq, sz) in series.terms:
        q = Fraction(sq, series.qden)
        deg[q] = max(deg.get(q, sz), sz)
    return deg
