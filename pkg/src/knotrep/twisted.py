"""Twisted chain matrices and twisted Alexander polynomials.

The chain complex of the presentation 2-complex is twisted by the tensor of
a permutation representation with the abelianization t-power: a generator g
goes to (permutation matrix of P(g)) * t^eps(g).  Chains are row vectors
and act on the right, with the basis ordered so that products of matrices
follow the order of letters in a word.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import AllDenominatorsVanish, DivisionFailed
from .intlinalg import AbelianGroup, chain_homology
from .laurent import (LaurentMatrix, LaurentPoly, UnitNormalForm, det_laurent,
                      divides, exact_divide, maximal_minors_gcd, normalize_unit)
from .permrep import PermRep, epsilon_kernel_image, trivial_rep
from .words import fox_derivative, letter_gen, meridian_word


class TwistedMatrixRep:
    """Caches the Laurent matrices (perm matrix of P(g)) * t^eps(g)."""

    def __init__(self, P):
        if P.epsilon is None:
            raise ValueError("representation lacks an abelianization map")
        self.P = P
        self.degree = P.degree
        self.eps = P.epsilon
        self._gen = []
        self._inv = []
        for g in range(P.presentation.num_generators):
            e = self.eps.of_generator(g)
            self._gen.append(_monomial_matrix(P.images[g], e))
            self._inv.append(_monomial_matrix(P.images[g].inverse(), -e))

    def of_generator(self, g):
        return self._gen[g]

    def of_letter(self, x):
        g, s = letter_gen(x)
        return self._gen[g] if s > 0 else self._inv[g]

    def of_word(self, word):
        m = LaurentMatrix.identity(self.degree)
        for x in word:
            m = m * self.of_letter(x)
        return m

    def of_ring_element(self, elt):
        acc = LaurentMatrix.zero(self.degree, self.degree)
        for w, c in sorted(elt.terms.items()):
            acc = acc + self.of_word(w).scale(LaurentPoly.term(c))
        return acc


def _monomial_matrix(perm, exponent):
    n = perm.degree
    zero = LaurentPoly.zero()
    entries = [[zero] * n for _ in range(n)]
    mono = LaurentPoly.term(1, exponent)
    for i in range(n):
        entries[i][perm(i)] = mono
    return LaurentMatrix(entries)


def twisted_matrix(P, word):
    """Image of a word under the tensor representation, as a Laurent matrix."""
    return TwistedMatrixRep(P).of_word(word)


def twisted_jacobian(P):
    """The twisted boundary pair (d2, d1).

    d2 is the (relators*N) x (generators*N) matrix of Fox derivative images,
    with a relation u = v contributing the block Phi(du/dg) - Phi(dv/dg);
    d1 stacks the blocks Phi(g) - I.  The chain condition d2 * d1 = 0 is
    verified exactly.
    """
    P.validate()
    rho = TwistedMatrixRep(P)
    pres = P.presentation
    n = P.degree
    g_count = pres.num_generators

    block_rows = []
    for u, v in pres.relator_pairs:
        row = []
        for g in range(g_count):
            block = rho.of_ring_element(fox_derivative(u, g)) - \
                rho.of_ring_element(fox_derivative(v, g))
            row.append(block)
        block_rows.append(row)
    if block_rows:
        d2 = LaurentMatrix.from_blocks(block_rows)
    else:
        d2 = LaurentMatrix.zero(0, g_count * n)

    ident = LaurentMatrix.identity(n)
    d1 = LaurentMatrix.from_blocks([[rho.of_generator(g) - ident]
                                    for g in range(g_count)])
    if not (d2 * d1).is_zero():
        raise DivisionFailed("chain condition d2 * d1 = 0 failed")  # bug trap
    return d2, d1


def _kernel_orbit_cycles(P):
    """Sizes of the meridian's cycles on the kernel image's orbits.

    These govern the degree-zero twisted homology: it is the direct sum of
    Z[t]/(t^m - 1) over these cycle lengths m.
    """
    kernel = epsilon_kernel_image(P)
    orbits = kernel.orbits()
    whereis = {}
    for idx, orbit in enumerate(orbits):
        for x in orbit:
            whereis[x] = idx
    cx = P.image_of(meridian_word(P.presentation, P.epsilon))
    cycles = []
    seen = set()
    for idx in range(len(orbits)):
        if idx in seen:
            continue
        length = 0
        j = idx
        while j not in seen:
            seen.add(j)
            length += 1
            j = whereis[cx(orbits[j][0])]
        cycles.append(length)
    return sorted(cycles)


def _h0_order_polynomial(P):
    acc = LaurentPoly.one()
    for m in _kernel_orbit_cycles(P):
        acc = acc * LaurentPoly({m: 1, 0: -1})
    return normalize_unit(acc).poly


def _delta0(P, d1, exhaustive):
    expected = _h0_order_polynomial(P)
    got = maximal_minors_gcd(d1, P.degree, expected=expected,
                             exhaustive=exhaustive)
    return got


@dataclass(frozen=True)
class TwistedResult:
    """Output of the twisted Alexander computation, all unit-normalized.

    Satisfies delta_rho * wada_denominator = wada_numerator * delta_0 as
    polynomials up to units.
    """

    delta_rho: UnitNormalForm
    delta_0: UnitNormalForm
    wada_numerator: UnitNormalForm
    wada_denominator: UnitNormalForm
    deleted_generator: int
    dropped_relator: int | None
    is_unit: bool
    untwisted_divides: bool

    def to_json(self):
        return {
            "delta_rho": self.delta_rho.to_json(),
            "delta_0": self.delta_0.to_json(),
            "wada_numerator": self.wada_numerator.to_json(),
            "wada_denominator": self.wada_denominator.to_json(),
            "deleted_generator": self.deleted_generator,
            "dropped_relator": self.dropped_relator,
            "is_unit": self.is_unit,
            "untwisted_divides": self.untwisted_divides,
        }


def twisted_alexander_poly(P, deleted_generator=None, dropped_relator=None,
                           exhaustive_minors=False):
    """Twisted Alexander data of a presentation under a permutation rep.

    Forms the Fox Jacobian, deletes the column block of one generator whose
    block of d1 has nonzero determinant (smallest index by default), and
    divides out that determinant:

        delta_rho = det(A) * delta_0 / det(B)

    with delta_0 the gcd of the maximal minors of d1.  When the relator
    count equals the generator count one relator is dropped first (the last
    one by default; any choice gives the same answer and tests exercise
    that).
    """
    pres = P.presentation
    n = P.degree
    g_count = pres.num_generators
    r_count = pres.num_relators
    d2, d1 = twisted_jacobian(P)

    drop = dropped_relator
    if drop is None and r_count == g_count:
        drop = r_count - 1
    if drop is not None and not 0 <= drop < r_count:
        raise ValueError("dropped relator index out of range")
    r_used = r_count - (0 if drop is None else 1)
    if r_used < g_count - 1:
        raise ValueError("presentation deficiency exceeds 1; no square data")

    denominators = []
    for g in range(g_count):
        block = d1.submatrix(range(g * n, (g + 1) * n), range(n))
        denominators.append(det_laurent(block))
    if deleted_generator is None:
        deleted = next((g for g in range(g_count) if denominators[g]), None)
        if deleted is None:
            raise AllDenominatorsVanish(
                "no generator block of d1 is invertible; "
                "the abelianization must vanish on every generator")
    else:
        deleted = deleted_generator
        if not 0 <= deleted < g_count:
            raise ValueError("deleted generator index out of range")
        if denominators[deleted].is_zero:
            raise AllDenominatorsVanish(
                f"generator {pres.generators[deleted]} has vanishing denominator")

    keep_rows = [i for r in range(r_count) if r != drop
                 for i in range(r * n, (r + 1) * n)]
    keep_cols = [j for g in range(g_count) if g != deleted
                 for j in range(g * n, (g + 1) * n)]
    a_matrix = d2.submatrix(keep_rows, keep_cols)

    if a_matrix.rows == a_matrix.cols:
        numerator = det_laurent(a_matrix)
    else:
        numerator = maximal_minors_gcd(a_matrix, a_matrix.cols,
                                       exhaustive=exhaustive_minors)

    delta_0 = _delta0(P, d1, exhaustive_minors)
    denominator = denominators[deleted]

    delta_rho = exact_divide(numerator * delta_0, denominator)
    if delta_rho is None:
        raise DivisionFailed(
            "det(B) does not divide det(A) * delta_0")  # bug trap
    assert delta_rho * denominator == numerator * delta_0

    delta_rho_unf = normalize_unit(delta_rho)
    if P.degree == 1 and P.is_trivial():
        untwisted = delta_rho_unf
    else:
        untwisted = twisted_alexander_poly(trivial_rep(pres)).delta_rho
    return TwistedResult(
        delta_rho=delta_rho_unf,
        delta_0=normalize_unit(delta_0),
        wada_numerator=normalize_unit(numerator),
        wada_denominator=normalize_unit(denominator),
        deleted_generator=deleted,
        dropped_relator=drop,
        is_unit=delta_rho_unf.is_one,
        untwisted_divides=divides(untwisted.poly, delta_rho),
    )


def alexander_polynomial(pres):
    """Classical Alexander polynomial, via the trivial representation."""
    return twisted_alexander_poly(trivial_rep(pres)).delta_rho


def _companion_evaluate(mat, r):
    """Substitute the r x r cyclic-shift matrix for t, entrywise.

    An entry f(t) becomes the integer block with (u, v) equal to the sum of
    coefficients of f over exponents congruent to v - u mod r.
    """
    rows = mat.rows * r
    out = [[0] * (mat.cols * r) for _ in range(rows)]
    for i in range(mat.rows):
        for j in range(mat.cols):
            f = mat.entry(i, j)
            if f.is_zero:
                continue
            for e, c in f.coeffs.items():
                k = e % r
                for u in range(r):
                    out[i * r + u][j * r + (u + k) % r] += c
    return out


def finite_cover_module_homology(P, r):
    """H1 of the twisted complex with t specialized to the r-cycle matrix.

    This is the first homology of the induced cover of the presentation
    complex at level r (all components together), computed purely from the
    Laurent-module side; it cross-validates the Reidemeister-Schreier
    route.
    """
    if r < 1:
        raise ValueError("cover order must be >= 1")
    d2, d1 = twisted_jacobian(P)
    d2_int = _companion_evaluate(d2, r)
    d1_int = _companion_evaluate(d1, r)
    middle = P.presentation.num_generators * P.degree * r
    return chain_homology(d2_int, d1_int, middle)


def twisted_module_quotient(P, r):
    """The twisted first-homology module with t^r - 1 divided out.

    Obtained from finite_cover_module_homology by stripping the free
    summand contributed by degree-zero homology: one Z for each shared
    period gcd(m, r) over the meridian cycles m on kernel-image orbits.
    The result is the module the branched-cover bounds speak about.
    """
    h = finite_cover_module_homology(P, r)
    baseline = sum(gcd(m, r) for m in _kernel_orbit_cycles(P))
    if h.rank < baseline:
        raise DivisionFailed("module rank below its degree-zero baseline")  # bug trap
    return AbelianGroup(h.rank - baseline, h.torsion)


def base_change_order_check(P, r):
    """Consistency of the base-changed polynomial with the level-r module.

    When the module quotient at level r is finite, its order must equal the
    absolute value of the base-changed twisted polynomial at s = 1 (the
    annihilator evaluation); when it is infinite that value must be 0.
    """
    from .laurent import base_change

    delta = twisted_alexander_poly(P).delta_rho.poly
    changed = base_change(delta, r)
    value = abs(changed.evaluate_at_one())
    quotient = twisted_module_quotient(P, r)
    order = quotient.order()
    if order is None:
        return value == 0
    return value == order
