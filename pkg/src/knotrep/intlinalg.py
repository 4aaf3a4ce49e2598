"""Exact integer linear algebra: Smith normal form and abelian invariants.

Matrices are dense lists of rows of Python ints, so all arithmetic is
arbitrary precision.  The Smith normal form pivots on the entry of minimal
nonzero absolute value, which keeps coefficient growth tame on the matrices
produced by Reidemeister-Schreier rewriting.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    if a and b and len(a[0]) != len(b):
        raise ValueError("dimension mismatch")
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(ra[k] * b[k][j] for k in range(len(b))) for j in range(cols)]
            for ra in a]


def vec_mat(v, m):
    """Row vector times matrix."""
    if len(v) != len(m):
        raise ValueError("dimension mismatch")
    cols = len(m[0]) if m else 0
    return [sum(v[k] * m[k][j] for k in range(len(m))) for j in range(cols)]


def det_int(mat):
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class AbelianGroup:
    """Invariant-factor decomposition Z^rank + Z/d1 + ... with d1 | d2 | ...

    Torsion factors are all >= 2; free summands are counted by ``rank``.
    """

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        prev = None
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion factors must be >= 2")
            if prev is not None and d % prev:
                raise ValueError("invariant factors must form a divisibility chain")
            prev = d

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def order(self):
        """Group order, or None when infinite."""
        if self.rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def to_json(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass
class SmithNormalForm:
    """Decomposition left * M * right = D with D diagonal, d1 | d2 | ...

    ``diagonal`` lists only the nonzero invariant factors (all positive).
    ``left`` and ``right`` are unimodular; they are None when transforms
    were not requested.
    """

    diagonal: list
    rows: int
    cols: int
    left: list | None = None
    right: list | None = None

    def diagonal_matrix(self):
        d = [[0] * self.cols for _ in range(self.rows)]
        for i, v in enumerate(self.diagonal):
            d[i][i] = v
        return d


def smith_normal_form(mat, cols=None, transforms=True):
    """Smith normal form of an integer matrix.

    ``cols`` is only needed to disambiguate a matrix with zero rows.
    """
    m = len(mat)
    if m:
        n = len(mat[0])
        if cols is not None and cols != n:
            raise ValueError("cols disagrees with row length")
    else:
        if cols is None:
            raise ValueError("cols is required for a matrix with no rows")
        n = cols
    a = [[int(x) for x in row] for row in mat]
    for row in a:
        if len(row) != n:
            raise ValueError("ragged matrix")

    left = identity_matrix(m) if transforms else None
    right = identity_matrix(n) if transforms else None

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        if left is not None:
            left[i], left[j] = left[j], left[i]

    def row_add(i, j, q):
        ai, aj = a[i], a[j]
        for k in range(n):
            ai[k] += q * aj[k]
        if left is not None:
            li, lj = left[i], left[j]
            for k in range(m):
                li[k] += q * lj[k]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        if left is not None:
            left[i] = [-x for x in left[i]]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if right is not None:
            for row in right:
                row[i], row[j] = row[j], row[i]

    def col_add(i, j, q):
        for row in a:
            row[i] += q * row[j]
        if right is not None:
            for row in right:
                row[i] += q * row[j]

    size = min(m, n)
    k = 0
    while k < size:
        piv = None
        best = None
        for i in range(k, m):
            for j in range(k, n):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    piv, best = (i, j), v
        if piv is None:
            break
        if piv[0] != k:
            row_swap(k, piv[0])
        if piv[1] != k:
            col_swap(k, piv[1])
        if a[k][k] < 0:
            row_neg(k)

        dirty = True
        while dirty:
            dirty = False
            for i in range(k + 1, m):
                if a[i][k]:
                    q = a[i][k] // a[k][k]
                    if q:
                        row_add(i, k, -q)
                    if a[i][k]:
                        row_swap(k, i)
                        if a[k][k] < 0:
                            row_neg(k)
                        dirty = True
            for j in range(k + 1, n):
                if a[k][j]:
                    q = a[k][j] // a[k][k]
                    if q:
                        col_add(j, k, -q)
                    if a[k][j]:
                        col_swap(k, j)
                        dirty = True
            if not dirty:
                # pivot must divide everything below and to the right
                d = a[k][k]
                bad = None
                for i in range(k + 1, m):
                    if any(a[i][j] % d for j in range(k + 1, n)):
                        bad = i
                        break
                if bad is not None:
                    row_add(k, bad, 1)
                    dirty = True
        k += 1

    diagonal = [a[i][i] for i in range(size) if a[i][i]]
    return SmithNormalForm(diagonal, m, n, left, right)


def cokernel_invariants(mat, cols=None):
    """Invariant factors of Z^cols modulo the row space of ``mat``.

    Rows are relations, columns are generators.
    """
    snf = smith_normal_form(mat, cols=cols, transforms=False)
    rank = snf.cols - len(snf.diagonal)
    torsion = tuple(d for d in snf.diagonal if d > 1)
    return AbelianGroup(rank, torsion)


def left_kernel_basis(mat, cols=None):
    """Basis, as rows, of the lattice {v : v * mat = 0}."""
    snf = smith_normal_form(mat, cols=cols, transforms=True)
    r = len(snf.diagonal)
    return [row[:] for row in snf.left[r:]]


def express_in_row_basis(basis, vector):
    """Integer coordinates of ``vector`` in the row lattice spanned by ``basis``.

    ``basis`` rows must be independent and the vector must lie in their
    integral span; raises ValueError otherwise.
    """
    k = len(basis)
    if k == 0:
        if any(vector):
            raise ValueError("vector outside the lattice")
        return []
    snf = smith_normal_form(basis, transforms=True)
    if len(snf.diagonal) != k:
        raise ValueError("basis rows are dependent")
    u = vec_mat(list(vector), snf.right)
    coords = []
    for i, d in enumerate(snf.diagonal):
        q, r = divmod(u[i], d)
        if r:
            raise ValueError("vector outside the lattice")
        coords.append(q)
    if any(u[i] for i in range(k, len(u))):
        raise ValueError("vector outside the lattice")
    return vec_mat(coords, snf.left)


def chain_homology(d2, d1, middle_dim):
    """Homology ker(v -> v*d1) / rowspace(d2) of a chain of free Z-modules.

    Chains are row vectors; ``middle_dim`` is the rank of the middle module
    (the common length of d2's rows and d1's row count).
    """
    if middle_dim == 0:
        return AbelianGroup(0)
    if len(d1) != middle_dim:
        raise ValueError("d1 must have middle_dim rows")
    kernel = left_kernel_basis(d1)
    coords = [express_in_row_basis(kernel, row) for row in d2]
    return cokernel_invariants(coords, cols=len(kernel))


def minors_gcd(mat, k):
    """gcd of all k x k minors; brute-force enumeration (test oracle scale)."""
    from itertools import combinations

    m = len(mat)
    n = len(mat[0]) if m else 0
    if k == 0:
        return 1
    if k > m or k > n:
        return 0
    g = 0
    for rows in combinations(range(m), k):
        for cols in combinations(range(n), k):
            sub = [[mat[i][j] for j in cols] for i in rows]
            g = gcd(g, det_int(sub))
            if g == 1:
                return 1
    return g
