"""Exact truncated bivariate series in ``q`` and ``z``.

A :class:`BiSeries` stores finitely many terms ``c * q**a * z**b`` with
rational exponents and :class:`fractions.Fraction` coefficients, together with
a truncation order: every coefficient with q-exponent below ``order`` is
known exactly, nothing at or above it is stored.

Exponents are kept as integers scaled by per-series denominators ``qden`` and
``zden``. Binary operations bring both operands to the lcm of the
denominators first.

The z-slot doubles as the slot for the formal variable ``x`` until
:func:`subst_x_to_z` replaces ``x`` by ``z**(1/2) - z**(-1/2)``.
"""

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import kernel


class SeriesError(ValueError):
    pass


class AmbiguousLeadingTerm(SeriesError):
    """The lowest q-layer has more than one z-term, so it is not a unit."""


class ZeroSeries(SeriesError, ZeroDivisionError):
    pass


class UnboundedXDegree(SeriesError):
    """The z-slot does not hold a polynomial in ``x``."""


class DivergentProduct(SeriesError):
    pass


class OrderExceeded(SeriesError):
    pass


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def fmt_frac(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class BiSeries:
    """Immutable truncated series in ``q`` (exponents in ``Z/qden``) and ``z``
    (exponents in ``Z/zden``).

    ``terms`` maps ``(scaled_q, scaled_z)`` to a nonzero Fraction. Do not
    mutate it.
    """

    __slots__ = ("qden", "zden", "order", "terms", "_packed")

    def __init__(self, terms, order, qden=1, zden=1):
        order = _frac(order)
        if qden < 1 or zden < 1:
            raise ValueError("exponent denominators must be positive")
        # integer keys, so comparing against the ceiling is exact and cheap
        bound = math.ceil(order * qden)
        clean = {}
        for key, c in terms.items():
            if not c:
                continue
            sq = int(key[0])
            if sq >= bound:
                continue
            clean[(sq, int(key[1]))] = c if isinstance(c, Fraction) else Fraction(c)
        self.qden = qden
        self.zden = zden
        self.order = order
        self.terms = clean
        self._packed = None

    @classmethod
    def _raw(cls, terms, order, qden, zden):
        # terms already canonical: nonzero Fractions, all below order
        obj = cls.__new__(cls)
        obj.qden = qden
        obj.zden = zden
        obj.order = order
        obj.terms = terms
        obj._packed = None
        return obj

    # -- construction helpers -------------------------------------------

    @classmethod
    def zero(cls, order):
        return cls({}, order)

    @classmethod
    def one(cls, order):
        return monomial(1, 0, 0, order)

    @classmethod
    def from_q_coeffs(cls, coeffs, order, qden=1):
        """Univariate series from ``{scaled_q: coefficient}``."""
        return cls({(k, 0): c for k, c in coeffs.items()}, order, qden, 1)

    # -- inspection -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        """``((qexp, zexp), coeff)`` pairs, ascending in (q, z)."""
        for (sq, sz) in sorted(self.terms):
            yield (Fraction(sq, self.qden), Fraction(sz, self.zden)), self.terms[(sq, sz)]

    def valuation(self):
        """Smallest q-exponent present, or ``None`` for the zero series."""
        if not self.terms:
            return None
        return Fraction(min(k[0] for k in self.terms), self.qden)

    def _lower_bound(self):
        v = self.valuation()
        return self.order if v is None else v

    def is_univariate(self):
        return all(sz == 0 for _, sz in self.terms)

    def coeff(self, qexp, zexp=0):
        qexp, zexp = _frac(qexp), _frac(zexp)
        if qexp >= self.order:
            raise OrderExceeded(f"q^{qexp} is at or beyond the truncation order {self.order}")
        sq, sz = qexp * self.qden, zexp * self.zden
        if sq.denominator != 1 or sz.denominator != 1:
            return Fraction(0)
        return self.terms.get((sq.numerator, sz.numerator), Fraction(0))

    def q_coeffs(self):
        """``{qexp: coeff}`` of a univariate series."""
        if not self.is_univariate():
            raise ValueError("series has nonzero z-exponents")
        return {Fraction(sq, self.qden): c for (sq, _), c in sorted(self.terms.items())}

    def rescaled(self, qden, zden):
        """Same series written over denominators that are multiples of the current ones."""
        if qden % self.qden or zden % self.zden:
            raise ValueError("new denominators must be multiples of the old ones")
        fq, fz = qden // self.qden, zden // self.zden
        if fq == 1 and fz == 1:
            return self
        terms = {(sq * fq, sz * fz): c for (sq, sz), c in self.terms.items()}
        return BiSeries._raw(terms, self.order, qden, zden)

    def normalized(self):
        """Same series over the smallest possible denominators."""
        gq, gz = self.qden, self.zden
        for sq, sz in self.terms:
            gq = math.gcd(gq, sq)
            gz = math.gcd(gz, sz)
        if gq == 1 and gz == 1:
            return self
        terms = {(sq // gq, sz // gz): c for (sq, sz), c in self.terms.items()}
        return BiSeries._raw(terms, self.order, self.qden // gq, self.zden // gz)

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        if self.order != other.order:
            return False
        a, b = _unify(self, other)
        return a.terms == b.terms

    __hash__ = None

    def __repr__(self):
        return f"BiSeries({self.to_text()}, order={self.order})"

    def to_text(self, qname="q", zname="z"):
        if not self.terms:
            return "0"
        parts = []
        for (qe, ze), c in self.items():
            mono = []
            if qe:
                mono.append(qname if qe == 1 else f"{qname}^{_exp_text(qe)}")
            if ze:
                mono.append(zname if ze == 1 else f"{zname}^{_exp_text(ze)}")
            body = "*".join(mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{_exp_text(c)}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return BiSeries._raw({k: -c for k, c in self.terms.items()}, self.order, self.qden, self.zden)

    def __add__(self, other):
        if not isinstance(other, BiSeries):
            other = _coerce(other, self.order)
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, BiSeries):
            other = _coerce(other, self.order)
        return add(self, -other)

    def __rsub__(self, other):
        return _coerce(other, self.order) - self

    def __mul__(self, other):
        if isinstance(other, BiSeries):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, e):
        return int_pow(self, e)

    def scale(self, c):
        c = _frac(c)
        if not c:
            return BiSeries._raw({}, self.order, self.qden, self.zden)
        return BiSeries._raw({k: v * c for k, v in self.terms.items()}, self.order, self.qden, self.zden)

    def shift(self, qexp=0, zexp=0):
        """Multiply by the monomial ``q**qexp * z**zexp``; the order moves with it."""
        qexp, zexp = _frac(qexp), _frac(zexp)
        qd = _lcm(self.qden, qexp.denominator)
        zd = _lcm(self.zden, zexp.denominator)
        s = self.rescaled(qd, zd)
        dq_, dz_ = int(qexp * qd), int(zexp * zd)
        terms = {(sq + dq_, sz + dz_): c for (sq, sz), c in s.terms.items()}
        return BiSeries._raw(terms, self.order + qexp, qd, zd)

    def truncate(self, order):
        """Drop terms at or above ``order``; ``order`` may not exceed the current one."""
        order = _frac(order)
        if order > self.order:
            raise OrderExceeded(f"cannot raise truncation order {self.order} to {order}")
        if order == self.order:
            return self
        bound = math.ceil(order * self.qden)
        return BiSeries._raw({k: c for k, c in self.terms.items() if k[0] < bound},
                             order, self.qden, self.zden)

    def _with_order(self, order):
        # treat the stored terms as an exact polynomial known up to `order`
        return BiSeries(self.terms, order, self.qden, self.zden)

    def subs_q_power(self, n):
        """Substitute ``q -> q**n`` for a positive integer ``n``."""
        if n < 1:
            raise ValueError("n must be a positive integer")
        return BiSeries._raw({(sq * n, sz): c for (sq, sz), c in self.terms.items()},
                             self.order * n, self.qden, self.zden)

    def invert(self):
        return invert(self)

    def dq(self):
        return dq(self)

    def dz(self):
        return dz(self)

    def eval_z1(self):
        return eval_z1(self)

    def _pack(self):
        # (q list, z list, integer numerator list, common denominator), sorted by q
        if self._packed is None:
            den = 1
            for c in self.terms.values():
                den = _lcm(den, c.denominator)
            keys = sorted(self.terms)
            qs = [k[0] for k in keys]
            zs = [k[1] for k in keys]
            cs = [self.terms[k].numerator * (den // self.terms[k].denominator) for k in keys]
            self._packed = (qs, zs, cs, den)
        return self._packed

    # -- serialization ----------------------------------------------------

    def to_dict(self):
        return {
            "qden": self.qden,
            "zden": self.zden,
            "order": fmt_frac(self.order),
            "terms": [[sq, sz, fmt_frac(self.terms[(sq, sz)])] for sq, sz in sorted(self.terms)],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d):
        terms = {(int(sq), int(sz)): Fraction(c) for sq, sz, c in d["terms"]}
        return cls(terms, Fraction(d["order"]), int(d["qden"]), int(d["zden"]))

    @classmethod
    def from_json(cls, s):
        return cls.from_dict(json.loads(s))


def _exp_text(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"({x.numerator}/{x.denominator})"


def _coerce(c, order):
    return monomial(_frac(c), 0, 0, order)


def _unify(a, b):
    qd, zd = _lcm(a.qden, b.qden), _lcm(a.zden, b.zden)
    return a.rescaled(qd, zd), b.rescaled(qd, zd)


def monomial(c, qexp, zexp, order):
    """``c * q**qexp * z**zexp`` truncated at ``order``."""
    c, qexp, zexp = _frac(c), _frac(qexp), _frac(zexp)
    qden, zden = qexp.denominator, zexp.denominator
    terms = {(qexp.numerator, zexp.numerator): c} if c and qexp < _frac(order) else {}
    return BiSeries(terms, order, qden, zden)


def add(a, b):
    a, b = _unify(a, b)
    order = min(a.order, b.order)
    bound = math.ceil(order * a.qden)
    terms = {k: c for k, c in a.terms.items() if k[0] < bound}
    for k, c in b.terms.items():
        if k[0] >= bound:
            continue
        s = terms.get(k)
        if s is None:
            terms[k] = c
        else:
            s += c
            if s:
                terms[k] = s
            else:
                del terms[k]
    return BiSeries._raw(terms, order, a.qden, a.zden)


def mul(a, b):
    """Product; the result order is ``min(a.order + val(b), b.order + val(a))``."""
    a, b = _unify(a, b)
    order = min(a.order + b._lower_bound(), b.order + a._lower_bound())
    limit = math.ceil(order * a.qden)
    aq, az, ac, ad = a._pack()
    bq, bz, bc, bd = b._pack()
    raw = kernel.convolve(aq, az, ac, bq, bz, bc, limit)
    den = ad * bd
    terms = {k: Fraction(v, den) for k, v in raw.items()}
    return BiSeries._raw(terms, order, a.qden, a.zden)


def int_pow(a, e):
    if e < 0:
        raise ValueError("exponent must be non-negative; use invert() first")
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return BiSeries.one(a.order) if result is None else result


def invert(a):
    """Multiplicative inverse of a series whose lowest q-layer is one monomial.

    With ``a = c q^e z^f (1 + u)`` of order ``O`` the inverse has order
    ``O - 2e``; ``a * invert(a)`` is then exact to order ``O - e``.
    """
    if not a.terms:
        raise ZeroSeries("cannot invert the zero series")
    low = min(k[0] for k in a.terms)
    layer = [k for k in a.terms if k[0] == low]
    if len(layer) != 1:
        raise AmbiguousLeadingTerm(
            f"lowest q-layer q^{Fraction(low, a.qden)} has {len(layer)} z-terms")
    (sq, sz), c = layer[0], a.terms[layer[0]]
    e, f = Fraction(sq, a.qden), Fraction(sz, a.zden)
    unit = a.shift(-e, -f).scale(1 / c)
    return _invert_unit(unit).shift(-e, -f).scale(1 / c)


def _invert_unit(u):
    # Newton iteration b <- b + b(1 - u b) on a series with constant term 1
    target = u.order
    if target <= 0:
        return BiSeries._raw({}, target, u.qden, u.zden)
    rest = [k[0] for k in u.terms if k != (0, 0)]
    step = Fraction(min(rest), u.qden) if rest else target
    prec = min(step, target)
    b = BiSeries.one(prec).rescaled(u.qden, u.zden)
    while prec < target:
        prec = min(2 * prec, target)
        bp = b._with_order(prec)
        err = BiSeries.one(prec) - mul(u.truncate(prec), bp)
        b = add(bp, mul(bp, err))
    return b._with_order(target) if b.order != target else b


def dq(a):
    """``q d/dq``: each term is multiplied by its q-exponent."""
    terms = {}
    for (sq, sz), c in a.terms.items():
        if sq:
            terms[(sq, sz)] = c * Fraction(sq, a.qden)
    return BiSeries._raw(terms, a.order, a.qden, a.zden)


def dz(a):
    """``z d/dz``: each term is multiplied by its z-exponent."""
    terms = {}
    for (sq, sz), c in a.terms.items():
        if sz:
            terms[(sq, sz)] = c * Fraction(sz, a.zden)
    return BiSeries._raw(terms, a.order, a.qden, a.zden)


def eval_z1(a):
    """Set ``z = 1``: sum the z-coefficients at every q-level."""
    acc = {}
    for (sq, _), c in a.terms.items():
        acc[sq] = acc.get(sq, 0) + c
    terms = {(sq, 0): c for sq, c in acc.items() if c}
    return BiSeries._raw(terms, a.order, a.qden, 1)


def subst_x_to_z(a):
    """Replace ``x**j`` (held in the z-slot) by ``(z**(1/2) - z**(-1/2))**j``."""
    if a.zden != 1 and any(sz % a.zden for _, sz in a.terms):
        raise UnboundedXDegree("x-exponents must be non-negative integers")
    step = a.zden
    expansions = {}
    terms = {}
    for (sq, sz), c in a.terms.items():
        j = sz // step
        if j < 0:
            raise UnboundedXDegree("negative power of x cannot be expanded as a Laurent polynomial in z^(1/2)")
        exp = expansions.get(j)
        if exp is None:
            exp = [(j - 2 * i, (-1) ** i * math.comb(j, i)) for i in range(j + 1)]
            expansions[j] = exp
        for zz, b in exp:
            key = (sq, zz)
            v = terms.get(key, 0) + c * b
            if v:
                terms[key] = v
            else:
                terms.pop(key, None)
    return BiSeries._raw(terms, a.order, a.qden, 2)


def pochhammer(coef_sign, a_qexp, step, order):
    """``prod_{m>=0} (1 + coef_sign * q**(a_qexp + m*step))`` truncated at ``order``."""
    if coef_sign not in (1, -1):
        raise ValueError("coef_sign must be +1 or -1")
    a_qexp, order = _frac(a_qexp), _frac(order)
    if a_qexp <= 0:
        raise DivergentProduct(f"factor exponent {a_qexp} <= 0 does not tend to 1")
    if step < 1:
        raise ValueError("step must be a positive integer")
    qden = a_qexp.denominator
    n = max(0, math.ceil(order * qden))
    coeffs = [0] * n
    if n:
        coeffs[0] = 1
    e = a_qexp.numerator
    stride = step * qden
    while e < n:
        for k in range(n - 1, e - 1, -1):
            if coeffs[k - e]:
                coeffs[k] += coef_sign * coeffs[k - e]
        e += stride
    terms = {(k, 0): Fraction(c) for k, c in enumerate(coeffs) if c}
    return BiSeries._raw(terms, order, qden, 1)


def coeff(a, qexp, zexp=0):
    return a.coeff(qexp, zexp)


@dataclass
class Mismatch:
    q: Fraction
    z: Fraction
    lhs: Fraction
    rhs: Fraction

    def to_dict(self):
        return {"q": fmt_frac(self.q), "z_or_x": fmt_frac(self.z),
                "lhs": fmt_frac(self.lhs), "rhs": fmt_frac(self.rhs)}


@dataclass
class VerificationReport:
    identity: str
    order: Fraction
    first_mismatch: Optional[Mismatch] = None
    spec: Optional[dict] = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.first_mismatch is None

    @property
    def status(self):
        return "PASS" if self.passed else "FAIL"

    def to_dict(self):
        return {
            "identity": self.identity,
            "spec": self.spec,
            "order": fmt_frac(self.order),
            "status": self.status,
            "first_mismatch": None if self.first_mismatch is None else self.first_mismatch.to_dict(),
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def equal_up_to(a, b, order, identity="equal_up_to", spec=None):
    """Compare every coefficient with q-exponent below ``order``."""
    order = _frac(order)
    if order > a.order or order > b.order:
        raise OrderExceeded(f"comparison order {order} exceeds operand orders {a.order}, {b.order}")
    a, b = _unify(a, b)
    bound = math.ceil(order * a.qden)
    keys = {k for k in a.terms if k[0] < bound} | {k for k in b.terms if k[0] < bound}
    zero = Fraction(0)
    for k in sorted(keys):
        x, y = a.terms.get(k, zero), b.terms.get(k, zero)
        if x != y:
            miss = Mismatch(Fraction(k[0], a.qden), Fraction(k[1], a.zden), x, y)
            return VerificationReport(identity, order, miss, spec)
    return VerificationReport(identity, order, None, spec)
