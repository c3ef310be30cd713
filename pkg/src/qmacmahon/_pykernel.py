"""Pure-Python sparse convolution kernel.

Reference implementation of the hot loop behind :meth:`BiSeries.__mul__`.
The compiled ``_ckernel`` module exposes the same function with the same
contract; :mod:`qmacmahon.kernel` picks one at import time.
"""


def convolve(aq, az, ac, bq, bz, bc, limit):
    """Multiply two sparse bivariate polynomials with integer coefficients.

    Each operand is given as three parallel lists (scaled q-exponent,
    scaled z-exponent, integer coefficient) sorted by q-exponent ascending.
    Only products with q-exponent strictly below ``limit`` are formed.

    Returns a dict ``{(q, z): coefficient}`` with no zero entries.
    """
    acc = {}
    if not aq or not bq:
        return acc
    get = acc.get
    b = list(zip(bq, bz, bc))
    qb0 = bq[0]
    for qi, zi, ci in zip(aq, az, ac):
        room = limit - qi
        if qb0 >= room:
            break
        for qj, zj, cj in b:
            if qj >= room:
                break
            key = (qi + qj, zi + zj)
            acc[key] = get(key, 0) + ci * cj
    return {k: v for k, v in acc.items() if v}
