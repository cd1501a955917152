"""Pure-Python finite-field kernels.

Elements of F_p[x]/(m) are tuples of f coefficients, lowest degree first;
``mod`` is the monic modulus as f + 1 coefficients with ``mod[f] == 1``.
``tamebrauer._fqcore`` implements the same three functions in Cython.
"""

BACKEND = "python"


def mulmod(a, b, mod, p):
    f = len(mod) - 1
    if f == 1:
        return ((a[0] * b[0]) % p,)
    prod = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for k in range(2 * f - 2, f - 1, -1):
        c = prod[k] % p
        if c:
            base = k - f
            for j in range(f):
                prod[base + j] -= c * mod[j]
    return tuple(c % p for c in prod[:f])


def powmod(a, e, mod, p):
    f = len(mod) - 1
    if f == 1:
        return (pow(a[0], e, p),)
    result = (1,) + (0,) * (f - 1)
    base = a
    while e:
        if e & 1:
            result = mulmod(result, base, mod, p)
        e >>= 1
        if e:
            base = mulmod(base, base, mod, p)
    return result


def bsgs(t, zeta, n, mod, p):
    """Smallest k in [0, n) with zeta**k == t, or -1."""
    m = 1
    while m * m < n:
        m += 1
    table = {}
    cur = (1,) + (0,) * (len(mod) - 2)
    for j in range(m):
        table.setdefault(cur, j)
        cur = mulmod(cur, zeta, mod, p)
    # giant step multiplies by zeta^(-m) = zeta^(n - m mod n)
    step = powmod(zeta, (-m) % n, mod, p)
    gamma = t
    for i in range(m + 1):
        j = table.get(gamma)
        if j is not None:
            k = (i * m + j) % n
            return k
        gamma = mulmod(gamma, step, mod, p)
    return -1
