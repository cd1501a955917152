"""Finitely generated abelian groups via Smith normal form.

A group is given by generators with cyclic orders (0 meaning infinite
order); homomorphisms are integer matrices whose column j is the image of
source generator j in target coordinates.  Results are returned in
canonical invariant-factor form d_1 | d_2 | ... plus a free rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod

import sympy

from .errors import InvalidConfig, InvalidHom, PDividesN
from .ntheory import prime_power


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A):
    """Return (U, D, V) with U*A*V = D, U and V unimodular, D in Smith form."""
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row_dst += c * row_src
        for M in (D, U):
            M[dst] = [a + c * b for a, b in zip(M[dst], M[src])]

    def add_col(src, dst, c):  # col_dst += c * col_src
        for M in (D, V):
            for row in M:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            # smallest nonzero entry of the remaining block becomes the pivot
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, D, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = D[i][t] // piv
                if q:
                    add_row(t, i, -q)
                dirty |= D[i][t] != 0
            for j in range(t + 1, n):
                q = D[t][j] // piv
                if q:
                    add_col(t, j, -q)
                dirty |= D[t][j] != 0
            if dirty:
                continue
            # pivot must divide the rest of the block
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return U, D, V


def _diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


@dataclass(frozen=True)
class FinAbGroup:
    invariants: tuple
    free_rank: int = 0

    def __post_init__(self):
        inv = tuple(self.invariants)
        if any(d < 2 for d in inv):
            raise ValueError("invariant factors must be >= 2")
        if any(b % a for a, b in zip(inv, inv[1:])):
            raise ValueError(f"{inv} is not a divisibility chain")
        object.__setattr__(self, "invariants", inv)

    @classmethod
    def from_orders(cls, orders):
        """Canonical form of the direct sum of cyclic groups Z/o (o = 0 is Z)."""
        k = len(orders)
        if not k:
            return cls(())
        diag = [[orders[i] if i == j else 0 for j in range(k)] for i in range(k)]
        return _group_from_diagonal(_diagonal(smith_normal_form(diag)[1]), k)

    @classmethod
    def trivial(cls):
        return cls(())

    @property
    def order(self):
        """Number of elements, or None when infinite."""
        return None if self.free_rank else prod(self.invariants)

    @property
    def is_trivial(self):
        return not self.invariants and not self.free_rank

    def generator_orders(self):
        return list(self.invariants) + [0] * self.free_rank

    def __str__(self):
        parts = [f"Z/{d}" for d in self.invariants]
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) or "0"


def _group_from_diagonal(diag, ngens):
    """Z^ngens / (diag) as a FinAbGroup; diag may be shorter than ngens."""
    vals = [abs(d) for d in diag] + [0] * (ngens - len(diag))
    finite = sorted(d for d in vals if d > 1)
    free = sum(1 for d in vals if d == 0)
    return FinAbGroup(tuple(finite), free)


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between groups presented as sums of cyclic groups."""

    source: tuple
    target: tuple
    matrix: tuple

    def __post_init__(self):
        src, tgt = tuple(self.source), tuple(self.target)
        mat = tuple(tuple(int(a) for a in row) for row in self.matrix)
        if len(mat) != len(tgt) or any(len(row) != len(src) for row in mat):
            raise InvalidHom(f"matrix shape does not match {len(tgt)}x{len(src)}")
        for j, a in enumerate(src):
            if a == 0:
                continue
            for i, b in enumerate(tgt):
                img = a * mat[i][j]
                if (b and img % b) or (not b and img):
                    raise InvalidHom(
                        f"generator {j} has order {a} but its image does not"
                    )
        object.__setattr__(self, "source", src)
        object.__setattr__(self, "target", tgt)
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def between(cls, source, target, matrix):
        return cls(tuple(source.generator_orders()), tuple(target.generator_orders()), matrix)

    def relation_matrix(self):
        """[M | diag(target orders)]: columns span the image plus target relations."""
        m = len(self.target)
        return [
            list(self.matrix[i]) + [self.target[i] if k == i else 0 for k in range(m)]
            for i in range(m)
        ]


def hom_cokernel(h):
    return cokernel_presentation(h)[0]


def cokernel_presentation(h):
    """(group, proj, lift) for coker h.

    ``proj`` maps target coordinates to coordinates on the cokernel's
    generators; ``lift`` has one column per cokernel generator, giving a
    preimage in target coordinates.
    """
    m = len(h.target)
    if m == 0:
        return FinAbGroup.trivial(), [], []
    N = h.relation_matrix()
    U, D, _ = smith_normal_form(N)
    diag = _diagonal(D) + [0] * (m - min(m, len(N[0])))
    keep = [i for i in range(m) if abs(diag[i]) != 1]
    Uinv = [[int(a) for a in row] for row in sympy.Matrix(U).inv().tolist()]
    proj = [U[i] for i in keep]
    lift = [[Uinv[r][i] for i in keep] for r in range(m)]
    orders = [abs(diag[i]) for i in keep]
    return _group_from_diagonal(orders, len(orders)), proj, lift


def hom_kernel(h):
    nA = len(h.source)
    if nA == 0:
        return FinAbGroup.trivial()
    gens = kernel_generators(h)
    if not gens:
        return FinAbGroup.trivial()
    # G: columns generate the kernel lattice inside Z^nA
    G = [[g[r] for g in gens] for r in range(nA)]
    U2, D2, _ = smith_normal_form(G)
    d = [x for x in _diagonal(D2) if x]
    r2 = len(d)
    R = [[h.source[i] if i == j else 0 for j in range(nA)] for i in range(nA)]
    UR = _matmul(U2, R)
    C = []
    for i in range(r2):
        row = []
        for x in UR[i]:
            if x % d[i]:
                raise AssertionError("source relations outside kernel lattice")
            row.append(x // d[i])
        C.append(row)
    _, DC, _ = smith_normal_form(C)
    return _group_from_diagonal(_diagonal(DC), r2)


def kernel_generators(h):
    """Vectors in source coordinates generating ker h (together with source relations)."""
    nA = len(h.source)
    N = h.relation_matrix()
    _, D, V = smith_normal_form(N)
    rank = sum(1 for x in _diagonal(D) if x)
    cols = len(N[0])
    return [[V[r][c] for r in range(nA)] for c in range(rank, cols)]


def induced_on_cokernel(h1, h2):
    """h2 restricted to coker h1 (requires h2 o h1 = 0) as a GroupHom."""
    comp = _matmul([list(r) for r in h2.matrix], [list(r) for r in h1.matrix])
    for i, row in enumerate(comp):
        b = h2.target[i]
        if any((x % b) if b else x for x in row):
            raise InvalidHom("h2 o h1 is not zero")
    group, _, lift = cokernel_presentation(h1)
    k = len(group.generator_orders())
    mat = [
        [sum(h2.matrix[i][r] * lift[r][c] for r in range(len(lift))) for c in range(k)]
        for i in range(len(h2.target))
    ]
    return GroupHom(tuple(group.generator_orders()), h2.target, mat)


# --- the cohomological examples -----------------------------------------------


def _localisation_template(p, n, components=2, residue_degree=1):
    """Maps for the localisation sequence of Z = union of components through |B|.

    H^1(Z, mu_n) = Z/g with g = gcd(n, q - 1) maps diagonally into the
    constant-unit parts of H^1(Z_i - |B|, mu_n) = Z/n (order at B) + Z/g,
    and the restriction to the local groups H^2_{|B|}(Z_i) = Z/n is the order
    at B on each component.
    """
    if gcd(n, p) != 1:
        raise PDividesN(f"p={p} divides n={n}")
    q = p**residue_degree
    g = gcd(n, q - 1)
    c = components
    middle = tuple(x for _ in range(c) for x in (n, g))
    iota = GroupHom((g,), middle, [[0] if k % 2 == 0 else [1] for k in range(2 * c)])
    order = GroupHom(
        middle,
        tuple(n for _ in range(c)),
        [[1 if k == 2 * i else 0 for k in range(2 * c)] for i in range(c)],
    )
    return iota, order


def example_3_13_kernel(p, n):
    """Subgroup of ker(H^2_{|B|}(Z) -> (Z/n)^2) coming from constant units."""
    iota, order = _localisation_template(p, n)
    return hom_kernel(induced_on_cokernel(iota, order))


@dataclass(frozen=True)
class ProbeConfig:
    """Shape for the probe: ``components`` branches through one point B,
    everything defined over F_q with q = p**residue_degree."""

    components: int = 2
    residue_degree: int = 1


@dataclass(frozen=True)
class ProbeReport:
    p: int
    n: int
    config: ProbeConfig
    source: FinAbGroup
    target: FinAbGroup
    kernel: FinAbGroup
    cokernel: FinAbGroup

    @property
    def injective(self):
        return self.kernel.is_trivial

    @property
    def surjective(self):
        return self.cokernel.is_trivial


def question_1_probe(p, n, config=ProbeConfig()):
    """Injectivity/surjectivity of H^2_{|B|}(Z) -> sum_i H^2_{|B|}(Z_i) in the template.

    Gathers evidence for the modeled configuration only.
    """
    if config.components < 1 or config.residue_degree < 1:
        raise InvalidConfig("need at least one component and residue degree >= 1")
    iota, order = _localisation_template(p, n, config.components, config.residue_degree)
    h = induced_on_cokernel(iota, order)
    return ProbeReport(
        p,
        n,
        config,
        FinAbGroup.from_orders(list(h.source)),
        FinAbGroup.from_orders(list(h.target)),
        hom_kernel(h),
        hom_cokernel(h),
    )


def leray_e2_orders(components, intersections, n, q):
    """Orders of E_2 terms for an snc boundary with the given pairwise intersections.

    ``components`` lists the residue degree of each component's constant
    field; ``intersections`` holds (i, j, k) for a point of D_i cap D_j with
    residue field F_{q^k}.  E_2^{0,2} = sum over those points of Z/n(-1), of
    order gcd(n, q^k - 1) each; E_2^{2,0} is Hom(mu_n(F_q), Z/n).
    """
    pk = prime_power(q)
    if pk is None:
        raise InvalidConfig(f"q={q} is not a prime power")
    if n < 1 or gcd(n, pk[0]) != 1:
        raise InvalidConfig(f"n={n} must be positive and prime to p={pk[0]}")
    if any(k < 1 for k in components):
        raise InvalidConfig("residue degrees must be >= 1")
    e02 = 1
    for i, j, k in intersections:
        if not (0 <= i < len(components) and 0 <= j < len(components)) or i == j:
            raise InvalidConfig(f"bad intersection ({i}, {j})")
        if k < 1:
            raise InvalidConfig("residue degrees must be >= 1")
        e02 *= gcd(n, q**k - 1)
    return {"E2^{0,2}": e02, "E2^{2,0}": gcd(n, q - 1)}


def example_1_4_orders(p, n):
    """E_2 orders for G_m in A^1 over Z_p: components V(p), V(x) meeting in one F_p-point."""
    table = leray_e2_orders([1, 1], [(0, 1, 1)], n, p)
    # both vanish in this configuration
    table["E2^{2,1}"] = 1
    table["E2^{3,0}"] = 1
    return table
