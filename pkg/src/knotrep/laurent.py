"""Exact arithmetic in Z[t, t^-1]: polynomials, matrices, determinants,
gcds, resultants and base change.

Polynomials are sparse maps exponent -> coefficient with arbitrary-precision
integer coefficients.  Determinants of polynomial matrices are computed
fraction-free (Bareiss) after clearing the negative exponents column by
column, so no rational arithmetic ever appears.  Gcds and resultants run on
primitive parts through subresultant polynomial remainder sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .errors import DivisionFailed, ZeroArgument


class LaurentPoly:
    """Univariate Laurent polynomial over Z."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for e, c in items:
                e = int(e)
                c = clean.get(e, 0) + int(c)
                if c:
                    clean[e] = c
                elif e in clean:
                    del clean[e]
        self.coeffs = clean

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def t(cls):
        return cls({1: 1})

    @classmethod
    def term(cls, coeff, exp=0):
        return cls({exp: coeff})

    @classmethod
    def from_int_list(cls, coeffs, low=0):
        """Dense coefficient list, ``coeffs[i]`` multiplying t^(low+i)."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def from_pairs(cls, pairs):
        """Deserialize [[exponent, "coefficient"], ...]."""
        return cls({int(e): int(c) for e, c in pairs})

    def to_pairs(self):
        """Serialize as [[exponent, "coefficient"], ...], exponents increasing."""
        return [[e, str(self.coeffs[e])] for e in sorted(self.coeffs)]

    @property
    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def min_exp(self):
        return min(self.coeffs) if self.coeffs else None

    @property
    def max_exp(self):
        return max(self.coeffs) if self.coeffs else None

    @property
    def leading_coefficient(self):
        return self.coeffs[max(self.coeffs)] if self.coeffs else 0

    def coefficient(self, e):
        return self.coeffs.get(e, 0)

    def content(self):
        return gcd(*self.coeffs.values()) if self.coeffs else 0

    def is_unit(self):
        """True for +-t^i."""
        return len(self.coeffs) == 1 and abs(next(iter(self.coeffs.values()))) == 1

    def shift(self, k):
        """Multiply by t^k."""
        if not k:
            return self
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def substitute_power(self, k):
        """t -> t^k for a positive integer k."""
        if k <= 0:
            raise ValueError("power substitution needs k >= 1")
        return LaurentPoly({e * k: c for e, c in self.coeffs.items()})

    def evaluate_at_one(self):
        return sum(self.coeffs.values())

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.term(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            c = out.get(e, 0) + c
            if c:
                out[e] = c
            elif e in out:
                del out[e]
        res = LaurentPoly()
        res.coeffs = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = LaurentPoly()
        res.coeffs = {e: -c for e, c in self.coeffs.items()}
        return res

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                c = out.get(e, 0) + c1 * c2
                if c:
                    out[e] = c
                elif e in out:
                    del out[e]
        res = LaurentPoly()
        res.coeffs = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        res = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                res = res * base
            base = base * base
            n >>= 1
        return res

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def pretty(self, var="t"):
        if not self.coeffs:
            return "0"
        bits = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                pow_str = var if e == 1 else f"{var}^{e}"
                body = pow_str if mag == 1 else f"{mag}*{pow_str}"
            bits.append((sign, body))
        first_sign, first_body = bits[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in bits[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({self.pretty()})"


@dataclass(frozen=True)
class UnitNormalForm:
    """Canonical representative of a polynomial modulo units +-t^i.

    ``poly`` has lowest exponent 0 and positive leading coefficient;
    the original equals sign * t^shift * poly.
    """

    poly: LaurentPoly
    shift: int = 0
    sign: int = 1

    def original(self):
        return self.poly.shift(self.shift) * self.sign

    @property
    def is_one(self):
        return self.poly == LaurentPoly.one()

    @property
    def is_zero(self):
        return self.poly.is_zero

    def to_json(self):
        return {"poly": self.poly.to_pairs(), "shift": self.shift, "sign": self.sign}

    @classmethod
    def from_json(cls, data):
        return cls(LaurentPoly.from_pairs(data["poly"]), int(data["shift"]),
                   int(data["sign"]))

    def pretty(self, var="t"):
        return self.poly.pretty(var)


def normalize_unit(f):
    """Unit normal form of f: factor out +-t^i."""
    if f.is_zero:
        return UnitNormalForm(LaurentPoly.zero(), 0, 1)
    shift = f.min_exp
    poly = f.shift(-shift)
    sign = 1
    if poly.leading_coefficient < 0:
        poly = -poly
        sign = -1
    return UnitNormalForm(poly, shift, sign)


def units_equal(f, g):
    """Equality in Z[t, t^-1] up to multiplication by +-t^i."""
    return normalize_unit(f).poly == normalize_unit(g).poly


# ---------------------------------------------------------------------------
# dense Z[t] helpers (coefficient lists, index = exponent, no trailing zeros)

def _dense(poly):
    if poly.is_zero:
        return []
    if poly.min_exp < 0:
        raise ValueError("negative exponents in an ordinary-polynomial context")
    out = [0] * (poly.max_exp + 1)
    for e, c in poly.coeffs.items():
        out[e] = c
    return out


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _ddeg(a):
    return len(a) - 1


def _dcontent(a):
    return gcd(*a) if a else 0


def _dprimitive(a):
    c = _dcontent(a)
    return [x // c for x in a] if c else []


def _dprem(f, g):
    """Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f modulo g."""
    dg = _ddeg(g)
    lead = g[-1]
    r = f[:]
    n = _ddeg(f) - dg + 1
    while r and _ddeg(r) >= dg:
        j = _ddeg(r) - dg
        c = r[-1]
        r = [lead * x for x in r]
        for i, gi in enumerate(g):
            r[i + j] -= c * gi
        _trim(r)
        n -= 1
    if n > 0:
        scale = lead ** n
        r = [x * scale for x in r]
    return r


def _dgcd(f, g):
    """gcd in Z[t] via content split and the subresultant PRS.

    Result has positive leading coefficient.
    """
    if not f:
        return [x if g[-1] > 0 else -x for x in g] if g else []
    if not g:
        return [x if f[-1] > 0 else -x for x in f]
    c = gcd(_dcontent(f), _dcontent(g))
    a, b = _dprimitive(f), _dprimitive(g)
    if _ddeg(a) < _ddeg(b):
        a, b = b, a
    gg, h = 1, 1
    while True:
        delta = _ddeg(a) - _ddeg(b)
        r = _dprem(a, b)
        if not r:
            prim = _dprimitive(b)
            break
        if _ddeg(r) == 0:
            prim = [1]
            break
        scale = gg * h ** delta
        a, b = b, [x // scale for x in r]
        gg = a[-1]
        h = (gg ** delta) // (h ** (delta - 1)) if delta else h
    if prim[-1] < 0:
        prim = [-x for x in prim]
    return [c * x for x in prim]


def _dresultant(f, g):
    """Resultant in Z via the subresultant PRS (Cohen, Alg. 3.3.7)."""
    s = 1
    if _ddeg(f) < _ddeg(g):
        if (_ddeg(f) * _ddeg(g)) % 2:
            s = -s
        f, g = g, f
    if _ddeg(g) == 0:
        return s * g[0] ** _ddeg(f)
    cf, cg = _dcontent(f), _dcontent(g)
    scale = cf ** _ddeg(g) * cg ** _ddeg(f)
    a, b = _dprimitive(f), _dprimitive(g)
    gg, h = 1, 1
    while True:
        delta = _ddeg(a) - _ddeg(b)
        if _ddeg(a) % 2 and _ddeg(b) % 2:
            s = -s
        r = _dprem(a, b)
        if not r:
            return 0
        div = gg * h ** delta
        a, b = b, [x // div for x in r]
        gg = a[-1]
        h = (gg ** delta) // (h ** (delta - 1)) if delta else h
        if _ddeg(b) == 0:
            break
    h = (b[0] ** _ddeg(a)) // (h ** (_ddeg(a) - 1))
    return s * scale * h


def _dexact_div(f, g):
    """Quotient f/g in Z[t]; raises DivisionFailed when not exact."""
    if not f:
        return []
    if not g:
        raise DivisionFailed("division by zero polynomial")
    r = f[:]
    dg = _ddeg(g)
    lead = g[-1]
    if _ddeg(r) < dg:
        raise DivisionFailed("degree too small for exact division")
    q = [0] * (_ddeg(r) - dg + 1)
    while r and _ddeg(r) >= dg:
        j = _ddeg(r) - dg
        c, rem = divmod(r[-1], lead)
        if rem:
            raise DivisionFailed("leading coefficient does not divide")
        q[j] = c
        for i, gi in enumerate(g):
            r[i + j] -= c * gi
        _trim(r)
    if r:
        raise DivisionFailed("nonzero remainder in exact division")
    return q


# ---------------------------------------------------------------------------
# public polynomial operations

def exact_divide(f, g):
    """f / g in Z[t, t^-1], or None when g does not divide f exactly."""
    if g.is_zero:
        return None
    if f.is_zero:
        return LaurentPoly.zero()
    nf, ng = normalize_unit(f), normalize_unit(g)
    df, dg = _dense(nf.poly), _dense(ng.poly)
    if _ddeg(df) < _ddeg(dg):
        return None
    try:
        q = _dexact_div(df, dg)
    except DivisionFailed:
        return None
    quotient = LaurentPoly.from_int_list(q)
    return (quotient * (nf.sign * ng.sign)).shift(nf.shift - ng.shift)


def divides(g, f):
    """True when g divides f in Z[t, t^-1]."""
    return exact_divide(f, g) is not None


def gcd_polys(polys):
    """gcd of a family in Z[t, t^-1], unit-normalized; 0 when all are zero.

    Folds pairwise with an early exit once the gcd drops to 1.
    """
    acc = None
    for p in polys:
        if p.is_zero:
            continue
        d = _dense(normalize_unit(p).poly)
        acc = d if acc is None else _dgcd(acc, d)
        if acc == [1]:
            break
    if acc is None:
        return LaurentPoly.zero()
    return normalize_unit(LaurentPoly.from_int_list(acc)).poly


def resultant(f, g):
    """Resultant of the unit-normalized ordinary-polynomial parts of f, g."""
    if f.is_zero or g.is_zero:
        raise ZeroArgument("resultant of a zero polynomial")
    df = _dense(normalize_unit(f).poly)
    dg = _dense(normalize_unit(g).poly)
    return _dresultant(df, dg)


def cyclic_resultant(f, r):
    """Res(f, t^r - 1)."""
    if f.is_zero:
        raise ZeroArgument("cyclic resultant of the zero polynomial")
    if r < 1:
        raise ValueError("cover order must be >= 1")
    return resultant(f, LaurentPoly({r: 1, 0: -1}))


def base_change(f, r):
    """Characteristic polynomial after the coefficient change t -> t^r.

    For f with leading coefficient c and roots a_j (with multiplicity),
    returns c^r * prod_j (s - a_j^r) exactly, as Res_t(f(t), t^r - s) with
    the sign fixed so the leading coefficient is c^r.  The roots are never
    materialized.
    """
    if f.is_zero:
        raise ZeroArgument("base change of the zero polynomial")
    if r < 1:
        raise ValueError("power must be >= 1")
    p = _dense(normalize_unit(f).poly)
    n = _ddeg(p)
    if n == 0:
        return LaurentPoly.term(p[0] ** r)
    minus_s = LaurentPoly.term(-1, 1)
    # Sylvester matrix of p (degree n, integer coefficients) and
    # q = t^r - s (degree r in t, coefficients in Z[s]).
    q = [minus_s] + [LaurentPoly.zero()] * (r - 1) + [LaurentPoly.one()]
    size = n + r
    rows = []
    for i in range(r):
        row = [LaurentPoly.zero()] * size
        for k, c in enumerate(p):
            row[i + (n - k)] = LaurentPoly.term(c)
        rows.append(row)
    for i in range(n):
        row = [LaurentPoly.zero()] * size
        for k, c in enumerate(q):
            row[i + (r - k)] = c
        rows.append(row)
    res = det_laurent(LaurentMatrix(rows))
    if n % 2:
        res = -res
    if res.leading_coefficient != p[-1] ** r or res.max_exp != n:
        raise DivisionFailed("base change lost its leading term")  # bug trap
    return res


# ---------------------------------------------------------------------------
# matrices

class LaurentMatrix:
    """Dense rectangular matrix of Laurent polynomials."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols=None):
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        if self.rows:
            self.cols = len(self.entries[0])
            if any(len(row) != self.cols for row in self.entries):
                raise ValueError("ragged matrix")
        else:
            self.cols = 0 if cols is None else cols
        for row in self.entries:
            for x in row:
                if not isinstance(x, LaurentPoly):
                    raise TypeError("entries must be LaurentPoly")

    @classmethod
    def identity(cls, n):
        one, zero = LaurentPoly.one(), LaurentPoly.zero()
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows, cols):
        z = LaurentPoly.zero()
        return cls([[z] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def from_blocks(cls, grid):
        """Assemble from a grid of equal-height / equal-width blocks."""
        rows = []
        for block_row in grid:
            height = block_row[0].rows
            if any(b.rows != height for b in block_row):
                raise ValueError("block heights differ")
            for i in range(height):
                row = []
                for b in block_row:
                    row.extend(b.entries[i])
                rows.append(row)
        return cls(rows)

    def entry(self, i, j):
        return self.entries[i][j]

    def is_zero(self):
        return all(x.is_zero for row in self.entries for x in row)

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and \
            self.entries == other.entries

    def __mul__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = LaurentPoly.zero()
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out, cols=other.cols)

    def __add__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return LaurentMatrix(
            [[self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
             for i in range(self.rows)], cols=self.cols)

    def __sub__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return LaurentMatrix(
            [[self.entries[i][j] - other.entries[i][j] for j in range(self.cols)]
             for i in range(self.rows)], cols=self.cols)

    def scale(self, poly):
        return LaurentMatrix([[x * poly for x in row] for row in self.entries],
                             cols=self.cols)

    def submatrix(self, row_indices, col_indices):
        return LaurentMatrix(
            [[self.entries[i][j] for j in col_indices] for i in row_indices],
            cols=len(list(col_indices)))

    def drop_columns(self, cols_to_drop):
        keep = [j for j in range(self.cols) if j not in set(cols_to_drop)]
        return self.submatrix(range(self.rows), keep)

    def to_pairs(self):
        return [[x.to_pairs() for x in row] for row in self.entries]

    def __repr__(self):
        body = "; ".join(", ".join(x.pretty() for x in row) for row in self.entries)
        return f"LaurentMatrix({self.rows}x{self.cols}: {body})"


def det_laurent(mat):
    """Exact determinant of a square Laurent matrix.

    Clears the minimal exponent of each column to land in Z[t], runs
    fraction-free Bareiss elimination there, and restores the shift.
    """
    if mat.rows != mat.cols:
        raise ValueError("determinant of a non-square matrix")
    n = mat.rows
    if n == 0:
        return LaurentPoly.one()
    a = [row[:] for row in mat.entries]
    total_shift = 0
    for j in range(n):
        exps = [a[i][j].min_exp for i in range(n) if not a[i][j].is_zero]
        if not exps:
            return LaurentPoly.zero()
        s = min(exps)
        if s:
            for i in range(n):
                a[i][j] = a[i][j].shift(-s)
            total_shift += s

    sign = 1
    prev = LaurentPoly.one()
    for k in range(n - 1):
        if a[k][k].is_zero:
            for i in range(k + 1, n):
                if not a[i][k].is_zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = _exact_div_zt(num, prev)
            a[i][k] = LaurentPoly.zero()
        prev = a[k][k]
    det = a[n - 1][n - 1]
    if sign < 0:
        det = -det
    return det.shift(total_shift)


def _exact_div_zt(f, g):
    """Exact division of Z[t] polynomials given as LaurentPoly."""
    if f.is_zero:
        return LaurentPoly.zero()
    q = _dexact_div(_dense(f), _dense(g))
    return LaurentPoly.from_int_list(q)


def maximal_minors_gcd(mat, size, expected=None, exhaustive=False):
    """gcd of all size x size minors of ``mat``, unit-normalized.

    Minors are enumerated in lexicographic order of (row set, column set)
    and folded into a gcd with two early exits: when the gcd reaches 1, and
    when it reaches ``expected`` (a known value of the full gcd, up to
    units).  Pass ``exhaustive=True`` to force full enumeration; in that
    case a supplied ``expected`` is verified.
    """
    if size == 0:
        return LaurentPoly.one()
    if size > mat.rows or size > mat.cols:
        return LaurentPoly.zero()
    expected_poly = None
    if expected is not None:
        expected_poly = normalize_unit(expected).poly
    acc = LaurentPoly.zero()
    for rows in combinations(range(mat.rows), size):
        for cols in combinations(range(mat.cols), size):
            d = det_laurent(mat.submatrix(rows, cols))
            acc = gcd_polys([acc, d])
            if acc == LaurentPoly.one():
                return acc
            if not exhaustive and expected_poly is not None and acc == expected_poly:
                return acc
    if exhaustive and expected_poly is not None and not acc.is_zero:
        if acc != expected_poly:
            raise DivisionFailed(
                "minor gcd disagrees with its predicted value")  # bug trap
    return acc


def parse_poly(text, var="t"):
    """Parse expressions like ``t^4 - t^3 + 2t - 1`` or ``3*t^-2 + 5``."""
    import re as _re

    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    token = _re.compile(
        rf"(?P<sign>[+-]?)"
        rf"(?:(?P<coeff>\d+)\*?)?"
        rf"(?:(?P<var>{_re.escape(var)})(?:\^(?P<exp>-?\d+))?)?")
    pos = 0
    coeffs = {}
    while pos < len(s):
        m = token.match(s, pos)
        if not m or m.end() == pos or (m.group("coeff") is None and m.group("var") is None):
            raise ValueError(f"cannot parse polynomial at ...{s[pos:]!r}")
        c = int(m.group("coeff")) if m.group("coeff") else 1
        if m.group("sign") == "-":
            c = -c
        if m.group("var"):
            e = int(m.group("exp")) if m.group("exp") else 1
        else:
            e = 0
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    return LaurentPoly(coeffs)
