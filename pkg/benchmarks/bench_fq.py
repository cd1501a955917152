"""Compare the compiled finite-field kernels against the pure-Python fallback.

    python benchmarks/bench_fq.py [--repeat N]

Each row times the same calls on both backends and checks that they agree.
"""

import argparse
import random
import timeit

from tamebrauer import _fqcore_py
from tamebrauer.finitefield import FqField, primitive_nth_root

try:
    from tamebrauer import _fqcore
except ImportError:
    _fqcore = None

CASES = [
    # (p, f, n) with n | p^f - 1
    (5, 2, 3),
    (3, 4, 5),
    (7, 3, 9),
    (2, 10, 33),
    (101, 2, 17),
    (13, 6, 7 * 61),
]


def _workload(field, n, rng, size=200):
    zeta = primitive_nth_root(field, n).coeffs
    mod = field.modulus
    q = field.p**field.f
    elems = [field.from_index(rng.randrange(1, q)).coeffs for _ in range(size)]
    targets = [field.from_index(1).coeffs]
    # powers of zeta, so every discrete log exists
    for _ in range(size // 4):
        targets.append(_fqcore_py.powmod(zeta, rng.randrange(n), mod, field.p))
    return zeta, mod, elems, targets


def _run(core, p, zeta, mod, n, elems, targets):
    exps = [(i * 7919) % (p**4) + 1 for i in range(len(elems))]
    powers = [core.powmod(a, e, mod, p) for a, e in zip(elems, exps)]
    logs = [core.bsgs(t, zeta, n, mod, p) for t in targets]
    return powers, logs


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(0)
    print(f"{'field':>12}  {'n':>5}  {'python ms':>10}  {'cython ms':>10}  {'speedup':>8}")
    for p, f, n in CASES:
        field = FqField.standard(p, f)
        zeta, mod, elems, targets = _workload(field, n, rng)
        t_py = min(timeit.repeat(lambda: _run(_fqcore_py, p, zeta, mod, n, elems, targets),
                                 number=1, repeat=args.repeat))
        if _fqcore is None:
            print(f"{f'F_{p}^{f}':>12}  {n:>5}  {t_py * 1e3:>10.2f}  {'n/a':>10}  {'-':>8}")
            continue
        if _run(_fqcore_py, p, zeta, mod, n, elems, targets) != _run(_fqcore, p, zeta, mod, n, elems, targets):
            raise SystemExit(f"backends disagree on F_{p}^{f}")
        t_c = min(timeit.repeat(lambda: _run(_fqcore, p, zeta, mod, n, elems, targets),
                                number=1, repeat=args.repeat))
        print(f"{f'F_{p}^{f}':>12}  {n:>5}  {t_py * 1e3:>10.2f}  {t_c * 1e3:>10.2f}  {t_py / t_c:>7.1f}x")
    if _fqcore is None:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
