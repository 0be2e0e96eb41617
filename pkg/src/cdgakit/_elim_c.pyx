# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""int64 fraction-free Gauss-Jordan elimination.

Same contract and output as ``_elim_py.echelon``.  Raises OverflowError as
soon as an entry leaves the int64 range; the caller then retries with the
arbitrary-precision path.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static int cdga_mul_ovf(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static int cdga_sub_ovf(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    """
    int cdga_mul_ovf(long long a, long long b, long long *r) nogil
    int cdga_sub_ovf(long long a, long long b, long long *r) nogil


cdef inline long long _gcd(long long a, long long b) noexcept nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int _make_primitive(long long *row, Py_ssize_t ncols) noexcept nogil:
    cdef long long g = 0
    cdef Py_ssize_t j
    for j in range(ncols):
        if row[j]:
            g = _gcd(g, row[j])
            if g == 1:
                return 0
    if g > 1:
        for j in range(ncols):
            row[j] //= g
    return 0


cdef int _eliminate(long long *a, Py_ssize_t nrows, Py_ssize_t ncols, Py_ssize_t *pivots, Py_ssize_t *rank) noexcept nogil:
    """Returns 1 on int64 overflow, 0 on success."""
    cdef Py_ssize_t r = 0, c, i, j, s, piv
    cdef long long p, e, t1, t2, tmp
    cdef long long *prow
    cdef long long *row
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i * ncols + c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                tmp = a[piv * ncols + j]
                a[piv * ncols + j] = a[r * ncols + j]
                a[r * ncols + j] = tmp
        prow = a + r * ncols
        if prow[c] < 0:
            for j in range(ncols):
                prow[j] = -prow[j]
        _make_primitive(prow, ncols)
        p = prow[c]
        for s in range(nrows):
            if s == r:
                continue
            row = a + s * ncols
            e = row[c]
            if not e:
                continue
            for j in range(ncols):
                if cdga_mul_ovf(p, row[j], &t1):
                    return 1
                if cdga_mul_ovf(e, prow[j], &t2):
                    return 1
                if cdga_sub_ovf(t1, t2, &row[j]):
                    return 1
            _make_primitive(row, ncols)
        pivots[r] = c
        r += 1
    rank[0] = r
    return 0


def echelon(rows, Py_ssize_t ncols):
    """Reduce integer rows to primitive reduced echelon form; see ``_elim_py.echelon``."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, rank = 0
    cdef int status
    if nrows == 0 or ncols == 0:
        return [], []
    cdef long long *a = <long long *> malloc(nrows * ncols * sizeof(long long))
    cdef Py_ssize_t *pivots = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    if a == NULL or pivots == NULL:
        free(a)
        free(pivots)
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                a[i * ncols + j] = row[j]
        # LLONG_MIN cannot be negated safely
        for i in range(nrows * ncols):
            if a[i] == -9223372036854775807 - 1:
                raise OverflowError("entry out of int64 range")
        with nogil:
            status = _eliminate(a, nrows, ncols, pivots, &rank)
        if status:
            raise OverflowError("int64 overflow during elimination")
        out = [[a[i * ncols + j] for j in range(ncols)] for i in range(rank)]
        return out, [pivots[i] for i in range(rank)]
    finally:
        free(a)
        free(pivots)
