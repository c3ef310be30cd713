# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse convolution kernel.

Same contract as ``qmacmahon._pykernel.convolve``.  Two paths:

* machine-word path, taken when every partial sum provably fits in int64;
* Python-integer path otherwise (exact, arbitrary precision).

Both accumulate into a dense (q, z) grid when it is small and not much
larger than the number of term pairs, and otherwise into a dict keyed by
the flattened grid index.
"""

from libc.stdlib cimport malloc, calloc, free
from libc.stdint cimport int64_t

cdef Py_ssize_t DENSE_LIMIT = 1 << 22
cdef object WORD_BOUND = 1 << 62
# a grid cell costs about as much to clear and scan as this many products
cdef Py_ssize_t DENSITY = 8


cdef inline bint _dense(int64_t cells, Py_ssize_t na, Py_ssize_t nb):
    return cells <= DENSE_LIMIT and cells <= DENSITY * na * nb


cdef int64_t* _as_c(list xs) except NULL:
    cdef Py_ssize_t n = len(xs), i
    cdef int64_t* out = <int64_t*> malloc((n if n > 0 else 1) * sizeof(int64_t))
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = xs[i]
    return out


def convolve(list aq, list az, list ac, list bq, list bz, list bc, long long limit):
    cdef Py_ssize_t na = len(aq), nb = len(bq)
    if na == 0 or nb == 0:
        return {}
    if <long long> aq[0] + <long long> bq[0] >= limit:
        return {}

    amax = max(abs(c) for c in ac)
    bmax = max(abs(c) for c in bc)
    use_words = amax * bmax * min(na, nb) < WORD_BOUND

    cdef int64_t* qa = _as_c(aq)
    cdef int64_t* za = NULL
    cdef int64_t* qb = NULL
    cdef int64_t* zb = NULL
    try:
        za = _as_c(az)
        qb = _as_c(bq)
        zb = _as_c(bz)
        if use_words:
            return _convolve_words(qa, za, ac, na, qb, zb, bc, nb, limit)
        return _convolve_objects(qa, za, ac, na, qb, zb, bc, nb, limit)
    finally:
        free(qa)
        free(za)
        free(qb)
        free(zb)


cdef inline void _zrange(int64_t* za, Py_ssize_t na, int64_t* zb, Py_ssize_t nb,
                         int64_t* lo, int64_t* hi):
    cdef Py_ssize_t i
    cdef int64_t amin = za[0], amax = za[0], bmin = zb[0], bmax = zb[0]
    for i in range(1, na):
        if za[i] < amin:
            amin = za[i]
        if za[i] > amax:
            amax = za[i]
    for i in range(1, nb):
        if zb[i] < bmin:
            bmin = zb[i]
        if zb[i] > bmax:
            bmax = zb[i]
    lo[0] = amin + bmin
    hi[0] = amax + bmax


cdef object _convolve_words(int64_t* qa, int64_t* za, list ac, Py_ssize_t na,
                            int64_t* qb, int64_t* zb, list bc, Py_ssize_t nb,
                            long long limit):
    cdef int64_t zlo, zhi
    _zrange(za, na, zb, nb, &zlo, &zhi)
    cdef int64_t qlo = qa[0] + qb[0]
    cdef int64_t width = zhi - zlo + 1
    cdef int64_t height = limit - qlo
    cdef int64_t* ca = _as_c(ac)
    cdef int64_t* cb = NULL
    cdef int64_t* grid = NULL
    cdef Py_ssize_t i, j
    cdef int64_t room, idx, ci
    cdef dict sparse
    try:
        cb = _as_c(bc)
        if _dense(height * width, na, nb):
            grid = <int64_t*> calloc(height * width, sizeof(int64_t))
            if grid == NULL:
                raise MemoryError()
            for i in range(na):
                room = limit - qa[i]
                if qb[0] >= room:
                    break
                ci = ca[i]
                for j in range(nb):
                    if qb[j] >= room:
                        break
                    idx = (qa[i] + qb[j] - qlo) * width + (za[i] + zb[j] - zlo)
                    grid[idx] += ci * cb[j]
            out = {}
            for idx in range(height * width):
                if grid[idx] != 0:
                    out[(qlo + idx // width, zlo + idx % width)] = grid[idx]
            return out
        sparse = {}
        for i in range(na):
            room = limit - qa[i]
            if qb[0] >= room:
                break
            ci = ca[i]
            for j in range(nb):
                if qb[j] >= room:
                    break
                idx = (qa[i] + qb[j] - qlo) * width + (za[i] + zb[j] - zlo)
                sparse[idx] = sparse.get(idx, 0) + ci * cb[j]
        return {(qlo + k // width, zlo + k % width): v for k, v in sparse.items() if v}
    finally:
        free(ca)
        free(cb)
        free(grid)


cdef object _convolve_objects(int64_t* qa, int64_t* za, list ac, Py_ssize_t na,
                              int64_t* qb, int64_t* zb, list bc, Py_ssize_t nb,
                              long long limit):
    cdef int64_t zlo, zhi
    _zrange(za, na, zb, nb, &zlo, &zhi)
    cdef int64_t qlo = qa[0] + qb[0]
    cdef int64_t width = zhi - zlo + 1
    cdef int64_t height = limit - qlo
    cdef Py_ssize_t i, j
    cdef int64_t room, idx
    cdef list grid
    cdef dict sparse
    if _dense(height * width, na, nb):
        grid = [0] * (height * width)
        for i in range(na):
            room = limit - qa[i]
            if qb[0] >= room:
                break
            ci = ac[i]
            for j in range(nb):
                if qb[j] >= room:
                    break
                idx = (qa[i] + qb[j] - qlo) * width + (za[i] + zb[j] - zlo)
                grid[idx] = grid[idx] + ci * bc[j]
        return {(qlo + k // width, zlo + k % width): v
                for k, v in enumerate(grid) if v}
    sparse = {}
    for i in range(na):
        room = limit - qa[i]
        if qb[0] >= room:
            break
        ci = ac[i]
        for j in range(nb):
            if qb[j] >= room:
                break
            idx = (qa[i] + qb[j] - qlo) * width + (za[i] + zb[j] - zlo)
            sparse[idx] = sparse.get(idx, 0) + ci * bc[j]
    return {(qlo + k // width, zlo + k % width): v for k, v in sparse.items() if v}
