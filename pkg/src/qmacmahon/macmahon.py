"""Generalized divisor-sum generating functions A_{S,n,k} and B_{S,n,k}.

``A_{S,n,k}(q)`` sums ``q^(m_1+...+m_k) / prod (1 - q^(m_i))^2`` over
``0 < m_1 < ... < m_k`` with every ``m_i`` congruent mod ``n`` to an element
of ``S``; the B family uses ``(1 + q^(m_i))^2`` instead.  Three independent
routes are provided: an elementary-symmetric DP over the building blocks
``t_m``, extraction from the truncated product ``prod (1 -+ x^2 t_m)``, and a
brute-force enumeration of decompositions ``m = s_1 m_1 + ... + s_k m_k``.
"""

from dataclasses import dataclass
from fractions import Fraction

from .series import BiSeries, SeriesError, _frac, monomial, mul

KINDS = ("A", "B")


class ResidueSetError(SeriesError):
    exit_code = 2


class NotInRange(ResidueSetError):
    pass


class NotSymmetric(ResidueSetError):
    pass


class Duplicate(ResidueSetError):
    pass


@dataclass(frozen=True)
class ResidueSet:
    """A symmetric set of representatives ``S`` of residues mod ``n``."""

    n: int
    elems: tuple

    @property
    def contains_n(self):
        return self.n in self.elems

    @property
    def others(self):
        """Elements other than ``n`` itself."""
        return tuple(e for e in self.elems if e != self.n)

    def admits(self, m):
        return m % self.n in self._residues

    @property
    def _residues(self):
        return frozenset(e % self.n for e in self.elems)

    def admissible(self, below):
        """Admissible positive integers ``m < below`` in increasing order."""
        res = self._residues
        return [m for m in range(1, below) if m % self.n in res]

    def min_tuple_sum(self, k):
        """Smallest ``m_1 + ... + m_k`` over admissible increasing k-tuples."""
        total, m, count = 0, 0, 0
        res = self._residues
        while count < k:
            m += 1
            if m % self.n in res:
                total += m
                count += 1
        return total

    def to_dict(self):
        return {"n": self.n, "set": list(self.elems)}

    def __str__(self):
        return "{" + ",".join(map(str, self.elems)) + "} mod " + str(self.n)


def validate(n, S):
    """Check that ``S`` is a symmetric set of representatives mod ``n``."""
    n = int(n)
    if n < 1:
        raise NotInRange(f"modulus must be positive, got {n}")
    elems = [int(e) for e in S]
    if not elems:
        raise NotInRange("the set of representatives is empty")
    for e in elems:
        if not 1 <= e <= n:
            raise NotInRange(f"{e} is not in 1..{n}")
    if len(set(elems)) != len(elems):
        raise Duplicate(f"repeated element in {sorted(elems)}")
    present = set(elems)
    for e in elems:
        partner = (n - e) % n or n
        if partner not in present:
            raise NotSymmetric(f"{e} is in S but -{e} = {partner} (mod {n}) is not")
    return ResidueSet(n, tuple(sorted(elems)))


def t_series(m, kind, order):
    """``q^m/(1 - q^m)^2`` (A) or ``q^m/(1 + q^m)^2`` (B) as a truncated series."""
    if m < 1:
        raise ValueError("m must be positive")
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    order = _frac(order)
    terms = {}
    s = 1
    while s * m < order:
        terms[(s * m, 0)] = Fraction(s if kind == "A" or s % 2 else -s)
        s += 1
    return BiSeries(terms, order)


def auto_kmax(spec, order):
    """Largest k whose smallest admissible k-tuple sum lies below ``order``."""
    order = _frac(order)
    k = 0
    while spec.min_tuple_sum(k + 1) < order:
        k += 1
    return k


@dataclass(frozen=True)
class SeriesFamily:
    spec: ResidueSet
    kind: str
    order: Fraction
    entries: tuple

    @property
    def kmax(self):
        return len(self.entries) - 1

    def coefficient(self, k, m):
        return self.entries[k].coeff(m)

    def table(self, mmax):
        """``{k: {m: coefficient}}`` for ``1 <= k <= kmax``, ``1 <= m <= mmax``."""
        return {k: {m: self.entries[k].coeff(m) for m in range(1, mmax + 1)}
                for k in range(1, self.kmax + 1)}


def family(spec, kind, kmax, order):
    """Entries 0..kmax of the A or B family, via ``E_k += t_m E_{k-1}`` over admissible m."""
    order = _frac(order)
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if kmax == "auto" or kmax is None:
        kmax = auto_kmax(spec, order)
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    one = BiSeries.one(order)
    entries = [one] + [BiSeries.zero(order) for _ in range(kmax)]
    for m in spec.admissible(int(-(-order // 1))):
        t = t_series(m, kind, order)
        # descending k so E_{k-1} is still the value before adding m
        for k in range(kmax, 0, -1):
            prev = entries[k - 1]
            if prev.is_zero():
                continue
            entries[k] = entries[k] + mul(t, prev).truncate(order)
    return SeriesFamily(spec, kind, order, tuple(entries))


def coefficient_oracle(spec, kind, k, m):
    """Sum of ``s_1...s_k`` over ``m = s_1 m_1 + ... + s_k m_k``, ``0 < m_1 < ... < m_k`` admissible.

    The B family weights each decomposition by ``(-1)^(s_1+...+s_k - k)``.
    """
    if k < 1 or m < 1:
        raise ValueError("k and m must be positive")
    adm = spec.admissible(m + 1)

    def rec(start, remaining, left):
        if left == 0:
            return 1 if remaining == 0 else 0
        total = 0
        for idx in range(start, len(adm)):
            mi = adm[idx]
            # the remaining left-1 parts use distinct larger admissible values
            tail = adm[idx + 1: idx + left]
            if len(tail) < left - 1:
                break
            floor_rest = sum(tail)
            if mi + floor_rest > remaining:
                break
            s = 1
            while s * mi + floor_rest <= remaining:
                sub = rec(idx + 1, remaining - s * mi, left - 1)
                if sub:
                    w = s if kind == "A" or s % 2 else -s
                    total += w * sub
                s += 1
        return total

    return rec(0, m, k)


def gen_poly(spec, kind, order):
    """``prod_m (1 - x^2 t_m)`` (A) or ``prod_m (1 + x^2 t_m)`` (B), with ``x`` in the z-slot.

    The x^(2k) coefficient is ``(-1)^k A_{S,n,k}`` resp. ``B_{S,n,k}``.
    """
    order = _frac(order)
    sign = -1 if kind == "A" else 1
    prod = BiSeries.one(order)
    for m in spec.admissible(int(-(-order // 1))):
        t = t_series(m, kind, order)
        factor = BiSeries.one(order) + mul(monomial(sign, 0, 2, order), t)
        prod = mul(prod, factor)
    return prod


def x_coefficient(poly, j):
    """Univariate series of the ``x^j`` coefficient of a (q, x) series."""
    if poly.zden != 1:
        raise ValueError("series is not polynomial in x")
    return BiSeries({(sq, 0): c for (sq, sz), c in poly.terms.items() if sz == j},
                    poly.order, poly.qden, 1)


def divisor_sigma(m):
    return sum(d for d in range(1, m + 1) if m % d == 0)


PRESETS = {
    "A": (1, (1,)),
    "C": (2, (1,)),
    "E": (5, (1, 4)),
    "G": (5, (2, 3)),
}


def preset(name):
    """Residue sets for MacMahon's A_k, C_k, E_k, G_k."""
    try:
        n, S = PRESETS[name.upper()]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return validate(n, S)
