"""Independent oracles used across the test suite.

These deliberately avoid the code paths they check: resultants go through
an explicit Sylvester determinant, determinants through cofactor expansion,
minor gcd ladders through exhaustive enumeration, and root-power products
through explicit cyclotomic arithmetic.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd

from knotrep.intlinalg import det_int
from knotrep.laurent import LaurentPoly, normalize_unit
from knotrep.perms import Permutation


def dense_coeffs(poly):
    """Ascending coefficient list of the unit-normalized part."""
    p = normalize_unit(poly).poly
    if p.is_zero:
        return []
    out = [0] * (p.max_exp + 1)
    for e, c in p.coeffs.items():
        out[e] = c
    return out


def sylvester_resultant(f, g):
    """Res(f, g) of the unit-normalized parts via the Sylvester matrix."""
    a = dense_coeffs(f)
    b = dense_coeffs(g)
    m = len(a) - 1
    n = len(b) - 1
    if n == 0:
        return b[0] ** m
    if m == 0:
        return a[0] ** n
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for k, c in enumerate(reversed(a)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for k, c in enumerate(reversed(b)):
            row[i + k] = c
        rows.append(row)
    return det_int(rows)


def cofactor_det(mat):
    """Determinant of a LaurentMatrix by first-row cofactor expansion."""
    n = mat.rows
    if n == 0:
        return LaurentPoly.one()
    if n == 1:
        return mat.entry(0, 0)
    total = LaurentPoly.zero()
    rest = list(range(1, n))
    for j in range(n):
        cols = [c for c in range(n) if c != j]
        minor = cofactor_det(mat.submatrix(rest, cols))
        term = mat.entry(0, j) * minor
        total = total + (term if j % 2 == 0 else -term)
    return total


def brute_int_minors_gcd(mat, k):
    m = len(mat)
    n = len(mat[0]) if m else 0
    if k == 0:
        return 1
    if k > m or k > n:
        return 0
    g = 0
    for rows in combinations(range(m), k):
        for cols in combinations(range(n), k):
            g = gcd(g, det_int([[mat[i][j] for j in cols] for i in rows]))
    return g


def int_matrix_rank(mat):
    if not mat or not mat[0]:
        return 0
    a = [[Fraction(x) for x in row] for row in mat]
    rows, cols = len(a), len(a[0])
    rank = 0
    for col in range(cols):
        piv = next((i for i in range(rank, rows) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][col]
        a[rank] = [x * inv for x in a[rank]]
        for i in range(rows):
            if i != rank and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


# --- arithmetic in Z[zeta], zeta^2 + zeta + 1 = 0, for cube-root products ---

def _zeta_mul(x, y):
    a, b = x
    c, d = y
    return (a * c - b * d, a * d + b * c - b * d)


def _zeta_poly_mul(f, g):
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = e1 + e2
            prod = _zeta_mul(c1, c2)
            cur = out.get(e, (0, 0))
            out[e] = (cur[0] + prod[0], cur[1] + prod[1])
    return {e: c for e, c in out.items() if c != (0, 0)}


def product_over_cube_roots(poly):
    """prod over zeta^3 = 1 of f(zeta * u), computed in Z[zeta][u].

    The result must have integer coefficients; returns a LaurentPoly.
    """
    coeffs = dense_coeffs(poly)
    zeta_powers = [(1, 0), (0, 1), (-1, -1)]  # 1, zeta, zeta^2
    acc = {0: (1, 0)}
    for k in range(3):
        f_k = {}
        for e, c in enumerate(coeffs):
            if c:
                zp = zeta_powers[(k * e) % 3]
                f_k[e] = (c * zp[0], c * zp[1])
        acc = _zeta_poly_mul(acc, f_k)
    assert all(b == 0 for (_a, b) in acc.values())
    return LaurentPoly({e: a for e, (a, _b) in acc.items()})


def product_over_square_roots(poly):
    """f(u) * f(-u) as a LaurentPoly."""
    p = normalize_unit(poly).poly
    neg = LaurentPoly({e: (c if e % 2 == 0 else -c) for e, c in p.coeffs.items()})
    return p * neg


def semidirect_closure_order(elements, period):
    """Order of the subgroup generated inside the shift semidirect product.

    ``elements`` are (shift exponent, level vector) pairs multiplied by
    (i, beta) (j, gamma) = (i + j, shift^j(beta) * gamma).
    """
    def mul(x, y):
        (i, beta), (j, gamma) = x, y
        shifted = beta[j:] + beta[:j]
        return ((i + j) % period, tuple(a * b for a, b in zip(shifted, gamma)))

    gens = [(k % period, tuple(v)) for k, v in elements]
    seen = set()
    queue = list(gens)
    while queue:
        e = queue.pop()
        if e in seen:
            continue
        seen.add(e)
        for g in gens:
            queue.append(mul(e, g))
    return len(seen)
