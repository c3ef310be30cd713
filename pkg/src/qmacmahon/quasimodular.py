"""Pure-weight decomposition of A_{S,n,k} and B_{S,n,k}.

Writing ``x = 2i sin(pi sigma)`` turns the theta-quotient side of the
generating function into a Taylor series in ``sigma`` whose coefficients are
the pure-weight pieces ``W_w``. Each ``W_w`` is a multinomial sum of theta
value quotients; ``A_k`` is recovered as ``sum_w kappa(w) c[k][w] W_w`` where
``c[k][w]`` are coefficients of powers of ``arcsin(x/2)``.

The scalars ``kappa`` follow from ``d/dsigma = 2 pi i D_z``:

* even case (n not in S): ``kappa(w) = (-4)^w / (2w)!``
* odd case (n in S):      ``kappa(w) = (-1)^w 2^(2w+1) / (2w+1)!``

B-kind pieces use unsigned thetas and pick up an extra ``(-1)^k`` because
``x^2 = -(2 sin(pi sigma))^2``.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .macmahon import family
from .series import (
    BiSeries,
    SeriesError,
    _frac,
    dq,
    dz,
    equal_up_to,
    eval_z1,
    invert,
    mul,
)
from .theta import alpha, eta_cubed, odd_theta_over_eta3, theta_quotient, value_quotients


class ReconstructionMismatch(SeriesError):
    def __init__(self, message, report=None, decomposition=None):
        super().__init__(message)
        self.report = report
        self.decomposition = decomposition


class WrongCase(SeriesError):
    pass


class InversionFailure(SeriesError):
    pass


def arcsin_half_coeffs(degree):
    """Coefficients of ``arcsin(x/2)`` up to ``x^degree``."""
    out = [Fraction(0)] * (degree + 1)
    j = 0
    while 2 * j + 1 <= degree:
        out[2 * j + 1] = Fraction(math.comb(2 * j, j), 4 ** j * (2 * j + 1) * 2 ** (2 * j + 1))
        j += 1
    return out


def _poly_mul(a, b, degree):
    out = [Fraction(0)] * (degree + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(min(len(b), degree + 1 - i)):
            if b[j]:
                out[i + j] += x * b[j]
    return out


def arcsin_power_coeffs(kmax, wmax, parity="even"):
    """Matrix ``c[k][w]``: ``[x^2k] arcsin(x/2)^2w`` (even) or ``[x^(2k+1)] arcsin(x/2)^(2w+1)`` (odd)."""
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    degree = 2 * kmax + 1
    base = arcsin_half_coeffs(degree)
    power = [Fraction(1)] + [Fraction(0)] * degree
    offset = 0
    if parity == "odd":
        power = base
        offset = 1
    square = _poly_mul(base, base, degree)
    c = [[Fraction(0)] * (wmax + 1) for _ in range(kmax + 1)]
    for w in range(wmax + 1):
        for k in range(kmax + 1):
            c[k][w] = power[2 * k + offset]
        power = _poly_mul(power, square, degree)
    return c


def sqrt_coeffs(kmax):
    """``a_m`` with ``sqrt(1 + (x/2)^2) = sum_m a_m x^2m``."""
    out = []
    for m in range(kmax + 1):
        b = Fraction(1)
        for i in range(m):
            b *= Fraction(1, 2) - i
        out.append(b / math.factorial(m) / 4 ** m)
    return out


def kappa(w, odd):
    if odd:
        return Fraction((-1) ** w * 2 ** (2 * w + 1), math.factorial(2 * w + 1))
    return Fraction((-4) ** w, math.factorial(2 * w))


def _multinomial(total, parts):
    out = math.factorial(total)
    for p in parts:
        out //= math.factorial(p)
    return out


def _compositions(total, slots):
    if slots == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def _safe_quotients(r, scale, signed, tmax, order):
    try:
        return value_quotients(r, scale, signed, tmax, order)
    except (ZeroDivisionError, SeriesError) as exc:
        raise InversionFailure(f"cannot divide by value series of characteristic {r}: {exc}") from exc


def _even_part(spec, elems, signed, w, order):
    order = _frac(order)
    quots = [_safe_quotients(alpha(spec.n, ell), spec.n, signed, 2 * w, order) for ell in elems]
    total = BiSeries.zero(order)
    for idx in _compositions(2 * w, len(quots)):
        term = BiSeries.one(order).scale(_multinomial(2 * w, idx))
        for q, i in zip(quots, idx):
            term = mul(term, q[i])
        total = total + term
    return total


def eta3_derivative_quotients(scale, imax, order):
    """``[(2/scale)^i D_q^i(eta^3) / eta^3 for i in 0..imax]`` exact to ``order``."""
    order = _frac(order)
    ext = order + Fraction(scale, 8)
    e3 = eta_cubed(scale, ext)
    inv = invert(e3)
    out = []
    d = e3
    for i in range(imax + 1):
        out.append(mul(d, inv).truncate(order).scale(Fraction(2, scale) ** i))
        d = dq(d)
    return out


def weight_part_A(spec, w, order):
    """Pure-weight piece of the A family via the closed multinomial formula."""
    if w < 0:
        raise ValueError("w must be non-negative")
    order = _frac(order)
    if not spec.contains_n:
        return _even_part(spec, spec.elems, True, w, order)
    quots = [_safe_quotients(alpha(spec.n, ell), spec.n, True, 2 * w + 1, order)
             for ell in spec.others]
    etas = eta3_derivative_quotients(spec.n, w, order)
    total = BiSeries.zero(order)
    for i0 in range(w + 1):
        for idx in _compositions(2 * w - 2 * i0, len(quots)):
            coef = _multinomial(2 * w + 1, (2 * i0 + 1,) + idx)
            term = etas[i0].scale(coef)
            for q, i in zip(quots, idx):
                term = mul(term, q[i])
            total = total + term
    return total


def weight_part_B(spec, w, order):
    """Pure-weight piece of the B family (n not in S) with unsigned thetas."""
    if spec.contains_n:
        raise WrongCase(f"{spec} contains n; use b_decompose_recursive")
    if w < 0:
        raise ValueError("w must be non-negative")
    return _even_part(spec, spec.elems, False, w, order)


def theta_product(spec, kind, order):
    """The bivariate theta-quotient product whose sigma-Taylor coefficients are the parts."""
    order = _frac(order)
    prod = BiSeries.one(order)
    if kind == "A":
        for ell in spec.others:
            prod = mul(prod, theta_quotient(alpha(spec.n, ell), spec.n, True, order))
        if spec.contains_n:
            prod = mul(prod, odd_theta_over_eta3(spec.n, order))
    else:
        for ell in spec.elems:
            prod = mul(prod, theta_quotient(alpha(spec.n, ell), spec.n, False, order))
    return prod


def weight_part_via_dz(spec, kind, w, order):
    """``D_z^{2w(+1)}`` of the bivariate product at ``z = 1``."""
    prod = theta_product(spec, kind, order)
    steps = 2 * w + (1 if kind == "A" and spec.contains_n else 0)
    for _ in range(steps):
        prod = dz(prod)
    return eval_z1(prod)


def two_path_check(spec, kind, w, order):
    """Closed multinomial formula vs. differentiating the bivariate product."""
    order = _frac(order)
    if kind == "A":
        closed = weight_part_A(spec, w, order)
    elif spec.contains_n:
        closed = _even_part(spec, spec.elems, False, w, order)
    else:
        closed = weight_part_B(spec, w, order)
    return equal_up_to(closed, weight_part_via_dz(spec, kind, w, order), order,
                       identity=f"two-path-{kind}", spec=dict(spec.to_dict(), w=w))


@dataclass
class WeightDecomposition:
    spec: object
    kind: str
    order: Fraction
    parts: list  # [(w, series)]
    kappa: list
    recon_matrix: list
    reports: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.reports)

    def part(self, w):
        return dict(self.parts)[w]

    def to_dict(self):
        return {
            "spec": self.spec.to_dict(),
            "kind": self.kind,
            "order": f"{self.order.numerator}/{self.order.denominator}",
            "parts": [{"w": w, "series": s.normalized().to_dict()} for w, s in self.parts],
            "kappa": [f"{k.numerator}/{k.denominator}" for k in self.kappa],
            "recon": "PASS" if self.passed else "FAIL",
        }


def _combine(parts, kap, c, k, sign, order):
    total = BiSeries.zero(order)
    for w, part in parts:
        coef = kap[w] * c[k][w]
        if coef:
            total = total + part.scale(sign * coef)
    return total


def _check(decomp, targets, name):
    for k, (got, want) in enumerate(targets):
        rep = equal_up_to(got, want, decomp.order, identity=f"{name}-k{k}", spec=decomp.spec.to_dict())
        decomp.reports.append(rep)
        if not rep.passed:
            m = rep.first_mismatch
            raise ReconstructionMismatch(
                f"{name}: k={k} differs at q^{m.q}: reconstructed {m.lhs}, direct {m.rhs}",
                rep, decomp)
    return decomp


def reconstruct(spec, kmax, order, two_path_wmax=2):
    """Rebuild ``A_{S,n,k}`` for ``k <= kmax`` from pure-weight parts and check against ``family``.

    Also runs the two-path check for ``w <= two_path_wmax``.
    """
    order = _frac(order)
    odd = spec.contains_n
    parts = [(w, weight_part_A(spec, w, order)) for w in range(kmax + 1)]
    kap = [kappa(w, odd) for w in range(kmax + 1)]
    c = arcsin_power_coeffs(kmax, kmax, "odd" if odd else "even")
    decomp = WeightDecomposition(spec, "A", order, parts, kap, c)
    for w in range(min(two_path_wmax, kmax) + 1):
        rep = two_path_check(spec, "A", w, order)
        decomp.reports.append(rep)
        if not rep.passed:
            raise ReconstructionMismatch(f"two-path check failed at w={w}", rep, decomp)
    direct = family(spec, "A", kmax, order).entries
    targets = [(_combine(parts, kap, c, k, 1, order), direct[k]) for k in range(kmax + 1)]
    return _check(decomp, targets, "recon-A")


def reconstruct_B(spec, kmax, order, two_path_wmax=2):
    """Same as :func:`reconstruct` for the B family with n not in S."""
    if spec.contains_n:
        raise WrongCase(f"{spec} contains n; use b_decompose_recursive")
    order = _frac(order)
    parts = [(w, weight_part_B(spec, w, order)) for w in range(kmax + 1)]
    kap = [kappa(w, False) for w in range(kmax + 1)]
    c = arcsin_power_coeffs(kmax, kmax, "even")
    decomp = WeightDecomposition(spec, "B", order, parts, kap, c)
    for w in range(min(two_path_wmax, kmax) + 1):
        rep = two_path_check(spec, "B", w, order)
        decomp.reports.append(rep)
        if not rep.passed:
            raise ReconstructionMismatch(f"two-path check failed at w={w}", rep, decomp)
    direct = family(spec, "B", kmax, order).entries
    targets = [(_combine(parts, kap, c, k, (-1) ** k, order), direct[k]) for k in range(kmax + 1)]
    return _check(decomp, targets, "recon-B")


def b_decompose_recursive(spec, kmax, order, two_path_wmax=2):
    """B family for n in S: decompose ``T_k = sum_m a_m B_{k-m}`` and peel off the square root."""
    if not spec.contains_n:
        raise WrongCase(f"{spec} does not contain n; use reconstruct_B")
    order = _frac(order)
    parts = [(w, _even_part(spec, spec.elems, False, w, order)) for w in range(kmax + 1)]
    kap = [kappa(w, False) for w in range(kmax + 1)]
    c = arcsin_power_coeffs(kmax, kmax, "even")
    decomp = WeightDecomposition(spec, "B", order, parts, kap, c)
    for w in range(min(two_path_wmax, kmax) + 1):
        rep = two_path_check(spec, "B", w, order)
        decomp.reports.append(rep)
        if not rep.passed:
            raise ReconstructionMismatch(f"two-path check failed at w={w}", rep, decomp)
    a = sqrt_coeffs(kmax)
    bs = []
    for k in range(kmax + 1):
        t_k = _combine(parts, kap, c, k, (-1) ** k, order)
        for m in range(1, k + 1):
            t_k = t_k - bs[k - m].scale(a[m])
        bs.append(t_k)
    direct = family(spec, "B", kmax, order).entries
    return _check(decomp, list(zip(bs, direct)), "recon-B-recursive")
