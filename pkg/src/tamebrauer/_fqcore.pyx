# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled finite-field kernels, same contract as ``_fqcore_py``.

Valid for p < 2**31 so that coefficient products fit in int64; the Python
wrapper in ``finitefield`` routes larger primes to the fallback.
"""

from libc.stdlib cimport malloc, free

BACKEND = "cython"

ctypedef long long i64


cdef inline i64 _mod(i64 a, i64 p) nogil:
    a %= p
    return a + p if a < 0 else a


cdef void _mulmod(const i64* a, const i64* b, const i64* mod, int f, i64 p,
                  i64* prod, i64* out) nogil:
    cdef int i, j, k, base
    cdef i64 c
    for k in range(2 * f - 1):
        prod[k] = 0
    for i in range(f):
        if a[i]:
            for j in range(f):
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p
    for k in range(2 * f - 2, f - 1, -1):
        c = prod[k]
        if c:
            base = k - f
            for j in range(f):
                prod[base + j] = _mod(prod[base + j] - c * mod[j], p)
    for k in range(f):
        out[k] = prod[k]


cdef class _Ctx:
    cdef int f
    cdef i64 p
    cdef i64* mod
    cdef i64* prod
    cdef i64* tmp

    def __cinit__(self, mod, i64 p):
        cdef int i
        self.f = len(mod) - 1
        self.p = p
        self.mod = <i64*> malloc((self.f + 1) * sizeof(i64))
        self.prod = <i64*> malloc((2 * self.f) * sizeof(i64))
        self.tmp = <i64*> malloc(self.f * sizeof(i64))
        if not self.mod or not self.prod or not self.tmp:
            raise MemoryError()
        for i in range(self.f + 1):
            self.mod[i] = _mod(mod[i], p)

    def __dealloc__(self):
        free(self.mod)
        free(self.prod)
        free(self.tmp)

    cdef void mul_into(self, const i64* a, const i64* b, i64* out) nogil:
        cdef int k
        _mulmod(a, b, self.mod, self.f, self.p, self.prod, self.tmp)
        for k in range(self.f):
            out[k] = self.tmp[k]

    cdef void pow_into(self, const i64* a, object e, i64* out):
        cdef int k
        cdef i64* base = <i64*> malloc(self.f * sizeof(i64))
        for k in range(self.f):
            base[k] = a[k]
            out[k] = 0
        out[0] = 1
        try:
            while e:
                if e & 1:
                    self.mul_into(out, base, out)
                e >>= 1
                if e:
                    self.mul_into(base, base, base)
        finally:
            free(base)


cdef i64* _load(seq, int f, i64 p) except NULL:
    cdef i64* buf = <i64*> malloc(f * sizeof(i64))
    cdef int i
    if not buf:
        raise MemoryError()
    for i in range(f):
        buf[i] = _mod(seq[i], p)
    return buf


cdef tuple _dump(const i64* buf, int f):
    return tuple([buf[i] for i in range(f)])


def mulmod(a, b, mod, i64 p):
    cdef _Ctx ctx = _Ctx(mod, p)
    cdef int f = ctx.f
    cdef i64* x = _load(a, f, p)
    cdef i64* y = _load(b, f, p)
    try:
        ctx.mul_into(x, y, x)
        return _dump(x, f)
    finally:
        free(x)
        free(y)


def powmod(a, e, mod, i64 p):
    cdef _Ctx ctx = _Ctx(mod, p)
    cdef int f = ctx.f
    cdef i64* x = _load(a, f, p)
    cdef i64* out = <i64*> malloc(f * sizeof(i64))
    try:
        ctx.pow_into(x, e, out)
        return _dump(out, f)
    finally:
        free(x)
        free(out)


def bsgs(t, zeta, n, mod, i64 p):
    """Smallest k in [0, n) with zeta**k == t, or -1."""
    cdef _Ctx ctx = _Ctx(mod, p)
    cdef int f = ctx.f
    cdef i64* cur = <i64*> malloc(f * sizeof(i64))
    cdef i64* z = _load(zeta, f, p)
    cdef i64* step = <i64*> malloc(f * sizeof(i64))
    cdef i64* gamma = _load(t, f, p)
    cdef long long j, i, m = 1
    cdef dict table = {}
    try:
        while m * m < n:
            m += 1
        for i in range(f):
            cur[i] = 0
        cur[0] = 1
        for j in range(m):
            table.setdefault(_dump(cur, f), j)
            ctx.mul_into(cur, z, cur)
        ctx.pow_into(z, (-m) % n, step)
        for i in range(m + 1):
            hit = table.get(_dump(gamma, f))
            if hit is not None:
                return (i * m + hit) % n
            ctx.mul_into(gamma, step, gamma)
        return -1
    finally:
        free(cur)
        free(z)
        free(step)
        free(gamma)
