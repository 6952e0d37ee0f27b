# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled reduction kernels for the binomial engine.

Same contract as ``cutkit._engine_py`` (the pure twin): exponent tuples
arrive already permuted into order-priority space, graded reverse lex
scans from the last position, and basis elements are stored with the
leading side first.  The rewrite loops run without the GIL, so the
driver's thread pool gets real parallelism on batch reductions.
"""

from libc.stdlib cimport malloc, free

BACKEND_NAME = "cython"

GREVLEX = 0
LEX = 1
WEIGHT = 2


cdef inline bint _gt(long long* a, long long* b, int N, int kind,
                     long long* w) noexcept nogil:
    cdef long long da = 0, db = 0
    cdef int k
    if kind == 2:
        for k in range(N):
            da += w[k] * a[k]
            db += w[k] * b[k]
        if da != db:
            return da > db
        kind = 0
        da = 0
        db = 0
    if kind == 0:
        for k in range(N):
            da += a[k]
            db += b[k]
        if da != db:
            return da > db
        for k in range(N - 1, -1, -1):
            if a[k] != b[k]:
                return a[k] < b[k]
        return False
    for k in range(N):
        if a[k] != b[k]:
            return a[k] > b[k]
    return False


cdef inline bint _div(long long* d, long long* m, int N) noexcept nogil:
    cdef int k
    for k in range(N):
        if d[k] > m[k]:
            return False
    return True


cdef int _reduce_top_c(long long* a, long long* b, long long* bl,
                       long long* bt, int nb, int N, int kind,
                       long long* w) noexcept nogil:
    """Top-reduce the binomial (a, b) in place.

    Returns 1 when nonzero (a = irreducible lead, b = trail), 0 when
    the binomial reduced to zero.
    """
    cdef int i, k, hit
    cdef long long tmp
    while True:
        hit = 1
        for k in range(N):
            if a[k] != b[k]:
                hit = 0
                break
        if hit:
            return 0
        if not _gt(a, b, N, kind, w):
            for k in range(N):
                tmp = a[k]
                a[k] = b[k]
                b[k] = tmp
        hit = -1
        for i in range(nb):
            if _div(bl + i * N, a, N):
                hit = i
                break
        if hit < 0:
            return 1
        for k in range(N):
            a[k] = a[k] - bl[hit * N + k] + bt[hit * N + k]


cdef long long* _pack(rows, int N) except NULL:
    cdef Py_ssize_t n = len(rows)
    cdef long long* buf = <long long*> malloc(
        (n if n > 0 else 1) * N * sizeof(long long)
    )
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    cdef int k
    for i in range(n):
        row = rows[i]
        for k in range(N):
            buf[i * N + k] = row[k]
    return buf


cdef long long* _pack_weight(weight, int N) except? NULL:
    if weight is None:
        return NULL
    return _pack([tuple(weight)], N)


def mono_gt(a, b, kind, weight):
    """True iff monomial ``a`` is strictly larger than ``b``."""
    cdef int N = len(a)
    cdef long long* pa = _pack([tuple(a)], N)
    cdef long long* pb = NULL
    cdef long long* w = NULL
    cdef bint out
    try:
        pb = _pack([tuple(b)], N)
        w = _pack_weight(weight, N)
        out = _gt(pa, pb, N, kind, w)
    finally:
        free(pa)
        if pb != NULL:
            free(pb)
        if w != NULL:
            free(w)
    return bool(out)


def divides(d, m):
    for x, y in zip(d, m):
        if x > y:
            return False
    return True


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def nf_monomial(m, leads, trails):
    """Rewrite ``m`` by lead -> trail replacements until irreducible."""
    cdef int N = len(m)
    cdef int nb = len(leads)
    cdef long long* bl = NULL
    cdef long long* bt = NULL
    cdef long long* cur = NULL
    cdef int i, k, hit
    try:
        bl = _pack(list(leads), N)
        bt = _pack(list(trails), N)
        cur = _pack([tuple(m)], N)
        with nogil:
            while True:
                hit = -1
                for i in range(nb):
                    if _div(bl + i * N, cur, N):
                        hit = i
                        break
                if hit < 0:
                    break
                for k in range(N):
                    cur[k] = cur[k] - bl[hit * N + k] + bt[hit * N + k]
        return tuple(cur[k] for k in range(N))
    finally:
        if bl != NULL:
            free(bl)
        if bt != NULL:
            free(bt)
        if cur != NULL:
            free(cur)


def reduce_top(a, b, leads, trails, kind, weight):
    """Top-reduce one binomial; returns (lead, trail) or None if zero."""
    res = reduce_many([(tuple(a), tuple(b))], leads, trails, kind, weight)
    return res[0]


def reduce_many(items, leads, trails, kind, weight):
    """Top-reduce each (a, b) against the fixed basis; None marks zero."""
    cdef Py_ssize_t ni = len(items)
    if ni == 0:
        return []
    cdef int N = len(items[0][0])
    cdef int nb = len(leads)
    cdef int ckind = kind
    cdef long long* bl = NULL
    cdef long long* bt = NULL
    cdef long long* w = NULL
    cdef long long* work = NULL
    cdef signed char* status = NULL
    cdef Py_ssize_t i
    cdef int k
    out = []
    try:
        bl = _pack(list(leads), N)
        bt = _pack(list(trails), N)
        w = _pack_weight(weight, N)
        work = <long long*> malloc(2 * ni * N * sizeof(long long))
        status = <signed char*> malloc(ni if ni > 0 else 1)
        if work == NULL or status == NULL:
            raise MemoryError()
        for i in range(ni):
            a, b = items[i]
            for k in range(N):
                work[2 * i * N + k] = a[k]
                work[(2 * i + 1) * N + k] = b[k]
        with nogil:
            for i in range(ni):
                status[i] = _reduce_top_c(
                    work + 2 * i * N, work + (2 * i + 1) * N,
                    bl, bt, nb, N, ckind, w,
                )
        for i in range(ni):
            if status[i]:
                out.append(
                    (
                        tuple(work[2 * i * N + k] for k in range(N)),
                        tuple(work[(2 * i + 1) * N + k] for k in range(N)),
                    )
                )
            else:
                out.append(None)
        return out
    finally:
        if bl != NULL:
            free(bl)
        if bt != NULL:
            free(bt)
        if w != NULL:
            free(w)
        if work != NULL:
            free(work)
        if status != NULL:
            free(status)
