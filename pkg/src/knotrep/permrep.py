"""Finite permutation representations of finitely presented groups.

Contains the backtracking search for homomorphisms into symmetric groups,
the image of the abelianization kernel, least periods, and the extension of
a periodic representation of the commutator subgroup to a transitive
permutation representation of the whole group.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property

from .covers import BranchedCover, CosetAction
from .errors import BudgetExhausted, CapExceeded, NotPeriodic, RepInvalid
from .perms import Permutation, all_permutations, conjugate
from .words import (abelianization_map, free_reduce, letter, letter_gen,
                    meridian_word, word_inverse, word_mul, word_pow)
from .errors import NotInfiniteCyclic

DEFAULT_CLOSURE_CAP = 50_000


@dataclass(frozen=True)
class PermRep:
    """A homomorphism into S_degree, one permutation per generator.

    ``epsilon`` is the abelianization map of the presentation when that
    abelianization is infinite cyclic, else None.
    """

    presentation: object
    degree: int
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.presentation.num_generators:
            raise RepInvalid("one image per generator is required")
        for p in self.images:
            if p.degree != self.degree:
                raise RepInvalid("image degree mismatch")

    @cached_property
    def epsilon(self):
        try:
            return abelianization_map(self.presentation)
        except NotInfiniteCyclic:
            return None

    def image_of(self, word):
        p = Permutation.identity(self.degree)
        for x in word:
            g, s = letter_gen(x)
            q = self.images[g]
            p = p * (q if s > 0 else q.inverse())
        return p

    def validate(self):
        for u, v in self.presentation.relator_pairs:
            if self.image_of(u) != self.image_of(v):
                raise RepInvalid(
                    "relator "
                    f"{self.presentation.format_word(word_mul(u, word_inverse(v)))}"
                    " is not killed by the representation")

    def is_trivial(self):
        return all(p.is_identity for p in self.images)

    def coset_action(self):
        return CosetAction(self.degree, self.images)

    def image_order(self, cap=DEFAULT_CLOSURE_CAP):
        return image_subgroup(self.images, cap=cap).order

    def to_json(self):
        return {
            "degree": self.degree,
            "images": {name: list(p.images)
                       for name, p in zip(self.presentation.generators, self.images)},
        }

    @classmethod
    def from_json(cls, presentation, data):
        degree = int(data["degree"])
        images = []
        for name in presentation.generators:
            if name not in data["images"]:
                raise RepInvalid(f"representation file misses generator {name!r}")
            images.append(Permutation(tuple(data["images"][name])))
        rep = cls(presentation, degree, tuple(images))
        rep.validate()
        return rep


def trivial_rep(pres):
    ident = Permutation.identity(1)
    return PermRep(pres, 1, tuple(ident for _ in pres.generators))


@dataclass(frozen=True)
class FiniteSubgroup:
    """Explicit subgroup of S_degree, closed under products and inverses."""

    degree: int
    generators: tuple
    elements: tuple     # discovery order of the closure

    @cached_property
    def _element_set(self):
        return frozenset(self.elements)

    def __contains__(self, p):
        return p in self._element_set

    @property
    def order(self):
        return len(self.elements)

    @property
    def is_trivial(self):
        return self.order == 1

    def orbits(self):
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            orbit = {start}
            frontier = [start]
            while frontier:
                x = frontier.pop()
                for p in self.elements:
                    y = p(x)
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            for x in orbit:
                seen[x] = True
            out.append(tuple(sorted(orbit)))
        return out


def _closure(seeds, identity, cap):
    """Right-multiplication closure of a finite-group generating set.

    Elements in breadth-first discovery order.  In a finite group, closure
    under products contains all inverses, so this is the generated subgroup.
    """
    gens = list(dict.fromkeys(seeds))
    if not gens:
        return [identity]
    elements = []
    seen = set()
    queue = list(gens)
    while queue:
        e = queue.pop(0)
        if e in seen:
            continue
        seen.add(e)
        elements.append(e)
        if cap is not None and len(elements) > cap:
            raise CapExceeded(f"subgroup closure exceeded cap {cap}", cap=cap)
        for g in gens:
            prod = _mul_generic(e, g)
            if prod not in seen:
                queue.append(prod)
    return elements


def _mul_generic(a, b):
    if isinstance(a, tuple):
        return tuple(x * y for x, y in zip(a, b))
    return a * b


def image_subgroup(generators, cap=DEFAULT_CLOSURE_CAP):
    generators = tuple(generators)
    if generators:
        degree = generators[0].degree
        if any(p.degree != degree for p in generators):
            raise ValueError("generators act on different sets")
        seeds = [p for p in generators]
        ident = Permutation.identity(degree)
        elements = _closure(seeds, ident, cap)
        if ident not in set(elements):
            elements.append(ident)
    else:
        degree = 0
        ident = Permutation.identity(0)
        elements = [ident]
    return FiniteSubgroup(degree, generators, tuple(elements))


def is_transitive(sub, degree):
    if any(p.degree != degree for p in sub.elements):
        raise ValueError("subgroup degree mismatch")
    orbit = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for p in sub.elements:
            y = p(x)
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return len(orbit) == degree


def epsilon_kernel_image(P, cap=DEFAULT_CLOSURE_CAP):
    """The image of the abelianization kernel: {P(w) : eps(w) = 0}.

    Generated by the elements P(g) P(x0)^(-eps(g)) and their conjugates by
    powers of P(x0), where x0 is a fixed word with eps(x0) = 1.  The
    conjugating powers only matter modulo the order of P(x0).
    """
    eps = P.epsilon
    if eps is None:
        raise ValueError("representation lacks an abelianization map")
    x0 = meridian_word(P.presentation, eps)
    cx = P.image_of(x0)
    m = cx.order()
    seeds = []
    for g in range(P.presentation.num_generators):
        base = P.images[g] * cx ** (-eps.of_generator(g))
        for k in range(m):
            seeds.append(cx ** (-k) * base * cx ** k)
    ident = Permutation.identity(P.degree)
    elements = _closure(seeds, ident, cap)
    if ident not in set(elements):
        elements.append(ident)
    return FiniteSubgroup(P.degree, tuple(dict.fromkeys(seeds)), tuple(elements))


def least_period(P, cap=DEFAULT_CLOSURE_CAP):
    """Smallest r >= 1 such that P(x0)^r centralizes the kernel image.

    This is the least period of the restriction of P to the abelianization
    kernel; it exists because the image is finite, and divides the order of
    P(x0).
    """
    eps = P.epsilon
    if eps is None:
        raise ValueError("representation lacks an abelianization map")
    x0 = meridian_word(P.presentation, eps)
    cx = P.image_of(x0)
    kernel = epsilon_kernel_image(P, cap=cap)
    m = cx.order()
    for r in sorted(d for d in range(1, m + 1) if m % d == 0):
        power = cx ** r
        if all(power * k == k * power for k in kernel.elements):
            return r
    return m


# ---------------------------------------------------------------------------
# search for homomorphisms into S_N

def _candidates(degree):
    """S_degree ordered by cycle type (long cycles first), then lex."""
    perms = all_permutations(degree)
    return sorted(perms, key=lambda p: (tuple(-l for l in p.cycle_type()),
                                        p.images))


def canonical_conjugate(images, degree):
    """Lexicographically minimal simultaneous conjugate of an image tuple."""
    best = None
    for tau in all_permutations(degree):
        cand = tuple(conjugate(p, tau) for p in images)
        if best is None or cand < best:
            best = cand
    return best


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit):
        self.left = limit

    def spend(self):
        if self.left is None:
            return
        if self.left <= 0:
            raise _BudgetSignal()
        self.left -= 1


class _BudgetSignal(Exception):
    pass


def _search_subtree(relator_data, num_gens, degree, first, candidates, budget):
    """All homomorphism image tuples with generator 0 fixed to ``first``."""
    images = [None] * num_gens
    inverses = [None] * num_gens
    found = []

    def relator_status(rel):
        """(value, forced) where forced = (gen, sign-solved image) or None."""
        missing_gen = None
        occurrences = 0
        for g, _s in rel:
            if images[g] is None:
                if missing_gen is None or missing_gen == g:
                    missing_gen = g
                    occurrences += 1
                else:
                    return None, None
        if missing_gen is None:
            prod = tuple(range(degree))
            for g, s in rel:
                table = images[g] if s > 0 else inverses[g]
                prod = tuple(table[x] for x in prod)
            return prod == tuple(range(degree)), None
        if occurrences != 1:
            return None, None
        # solve u * sigma^s * v = 1 for the single missing letter
        idx = next(i for i, (g, _s) in enumerate(rel) if g == missing_gen)
        u = tuple(range(degree))
        for g, s in rel[:idx]:
            table = images[g] if s > 0 else inverses[g]
            u = tuple(table[x] for x in u)
        v = tuple(range(degree))
        for g, s in rel[idx + 1:]:
            table = images[g] if s > 0 else inverses[g]
            v = tuple(table[x] for x in v)
        u_inv = [0] * degree
        v_inv = [0] * degree
        for i, x in enumerate(u):
            u_inv[x] = i
        for i, x in enumerate(v):
            v_inv[x] = i
        sigma_s = tuple(v_inv[u_inv[j]] for j in range(degree))
        _g, s = rel[idx]
        if s > 0:
            solved = sigma_s
        else:
            inv = [0] * degree
            for i, x in enumerate(sigma_s):
                inv[x] = i
            solved = tuple(inv)
        return None, (missing_gen, solved)

    def propagate():
        """Apply forced assignments; returns (ok, list of forced gens)."""
        forced = []
        while True:
            progress = False
            for rel in relator_data:
                value, force = relator_status(rel)
                if value is False:
                    return False, forced
                if force is not None:
                    g, solved = force
                    images[g] = solved
                    inv = [0] * degree
                    for i, x in enumerate(solved):
                        inv[x] = i
                    inverses[g] = inv
                    forced.append(g)
                    progress = True
            if not progress:
                return True, forced

    def undo(forced):
        for g in forced:
            images[g] = None
            inverses[g] = None

    def assign(g, perm):
        images[g] = perm.images
        inverses[g] = perm.inverse().images

    def extend():
        ok, forced = propagate()
        if ok:
            try:
                g = images.index(None)
            except ValueError:
                found.append(tuple(Permutation(im) for im in images))
                undo(forced)
                return
            for cand in candidates:
                budget.spend()
                assign(g, cand)
                extend()
                images[g] = None
                inverses[g] = None
        undo(forced)

    assign(0, first)
    try:
        extend()
    finally:
        images[0] = None
        inverses[0] = None
    return found


def search_homs(pres, degree, budget=None, threads=1):
    """All homomorphisms from the presentation into S_degree.

    Backtracks over whole generator images; relators force the image of a
    generator that occurs in them exactly once, and are checked as soon as
    their support is assigned.  Results are deduplicated up to simultaneous
    conjugation (the representative is the lexicographically minimal tuple
    over the conjugacy orbit) and sorted.

    Raises BudgetExhausted, carrying the deduplicated partial results, when
    the node budget runs out.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    relator_data = [tuple(letter_gen(x) for x in rel)
                    for rel in pres.relators if rel]
    num_gens = pres.num_generators
    candidates = _candidates(degree)

    partitions = candidates  # one subtree per image of generator 0
    per_budget = [None] * len(partitions)
    if budget is not None:
        q, rem = divmod(budget, len(partitions))
        per_budget = [q + (1 if i < rem else 0) for i in range(len(partitions))]

    def run(i):
        first = partitions[i]
        b = _Budget(per_budget[i])
        try:
            return _search_subtree(relator_data, num_gens, degree, first,
                                   candidates, b), False
        except _BudgetSignal:
            return [], True

    exhausted = False
    raw = []
    if threads > 1 and len(partitions) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for tuples, hit in pool.map(run, range(len(partitions))):
                raw.extend(tuples)
                exhausted = exhausted or hit
    else:
        for i in range(len(partitions)):
            tuples, hit = run(i)
            raw.extend(tuples)
            exhausted = exhausted or hit

    canonical = sorted({canonical_conjugate(t, degree) for t in raw})
    reps = []
    for images in canonical:
        rep = PermRep(pres, degree, images)
        rep.validate()
        reps.append(rep)
    if exhausted:
        raise BudgetExhausted(
            f"search budget {budget} exhausted at degree {degree}",
            partial=reps)
    return reps


# ---------------------------------------------------------------------------
# periodic representations and their extensions

@dataclass(frozen=True)
class PeriodicRep:
    """Representation of a branched-cover group by permutations of S_m.

    ``images`` align with the Schreier generators of ``cover.presentation``
    (tagged by base generator and level); factoring through the branched
    quotient is exactly periodicity with period ``cover.order``.
    """

    cover: BranchedCover
    target_degree: int
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != len(self.cover.cover.gens):
            raise NotPeriodic("one image per Schreier generator is required")
        for p in self.images:
            if p.degree != self.target_degree:
                raise NotPeriodic("image degree mismatch")

    @property
    def period(self):
        return self.cover.order

    def evaluate_cover_word(self, word):
        p = Permutation.identity(self.target_degree)
        for x in word:
            g, s = letter_gen(x)
            q = self.images[g]
            p = p * (q if s > 0 else q.inverse())
        return p

    def evaluate(self, base_word, start=None):
        """Value on a base-group word stabilizing the basepoint level."""
        return self.evaluate_cover_word(self.cover.cover.rewrite(base_word, start))

    def validate(self):
        for rel in self.cover.presentation.relators:
            if not self.evaluate_cover_word(rel).is_identity:
                raise NotPeriodic(
                    "images do not satisfy the branched-cover relators")

    def image_order(self, cap=DEFAULT_CLOSURE_CAP):
        """Order of the image subgroup of S_m, conjugates included."""
        x0 = self.cover.meridian
        seeds = []
        for idx in range(len(self.images)):
            w = self.cover.cover.generator_word(idx)
            for k in range(self.period):
                seeds.append(self.evaluate(_conjugate_word(w, x0, k)))
        return image_subgroup(seeds, cap=cap).order


def _conjugate_word(word, x0, k):
    """x0^-k * word * x0^k."""
    if k == 0:
        return word
    shift = word_pow(x0, k)
    return word_mul(word_inverse(shift), word, shift)


def periodic_from_rep(branched, rep_or_images):
    """Package searched images of the branched presentation as a PeriodicRep."""
    if isinstance(rep_or_images, PermRep):
        images = rep_or_images.images
        degree = rep_or_images.degree
    else:
        images = tuple(rep_or_images)
        degree = images[0].degree
    p = PeriodicRep(cover=branched, target_degree=degree, images=images)
    p.validate()
    return p


def least_period_of_periodic(p):
    """Least divisor d of the period such that level shift by d fixes p."""
    x0 = p.cover.meridian
    r = p.period
    for d in sorted(k for k in range(1, r + 1) if r % k == 0):
        ok = True
        for idx in range(len(p.images)):
            w = p.cover.cover.generator_word(idx)
            if p.evaluate(_conjugate_word(w, x0, d)) != p.evaluate(w):
                ok = False
                break
        if ok:
            return d
    return r


def _shift(vec, k):
    """Cyclic left shift by k: conjugation action on level vectors."""
    k %= len(vec)
    return vec[k:] + vec[:k]


def regular_extension(vecs, period, target_degree, cap=DEFAULT_CLOSURE_CAP):
    """Embed a shift-stable family of level vectors by right translation.

    ``vecs`` are tuples in Sigma^period generating the kernel image; the
    returned points list the generated subgroup in breadth-first discovery
    order with the identity placed last, so right translations and the
    level shift act on indices.
    """
    ident = tuple(Permutation.identity(target_degree) for _ in range(period))
    seeds = []
    for v in vecs:
        for k in range(period):
            seeds.append(_shift(v, k))
    elements = _closure(seeds, ident, cap)
    if ident not in set(elements):
        elements.append(ident)
    points = [e for e in elements if e != ident] + [ident]
    index = {pt: i for i, pt in enumerate(points)}
    return points, index


def extend_periodic(p, cap=DEFAULT_CLOSURE_CAP):
    """Extend a periodic representation to the whole group.

    Reduces to the least period r0, sends the meridian to the level shift
    and a commutator-subgroup element u to its vector of conjugate values
    (p(u), p(x^-1 u x), ..., p(x^-(r0-1) u x^(r0-1))), then realizes the
    semidirect product by right translation on the kernel image.  The
    result has degree equal to the order of that image, which the
    restriction permutes transitively.
    """
    p.validate()
    r0 = least_period_of_periodic(p)
    base = p.cover.cover.base
    eps_values = _base_epsilon(p)
    x0 = p.cover.meridian

    def vec(word):
        return tuple(p.evaluate(_conjugate_word(word, x0, k)) for k in range(r0))

    gen_vecs = [vec(p.cover.cover.generator_word(i)) for i in range(len(p.images))]
    points, index = regular_extension(gen_vecs, r0, p.target_degree, cap=cap)
    degree = len(points)

    images = []
    for g in range(base.num_generators):
        e = eps_values.of_generator(g)
        wg = word_mul(word_pow(x0, -e), (letter(g),))
        vg = vec(wg)
        shift_by = e % r0
        mapping = []
        for pt in points:
            moved = tuple(a * b for a, b in zip(_shift(pt, shift_by), vg))
            mapping.append(index[moved])
        images.append(Permutation(tuple(mapping)))

    P = PermRep(base, degree, tuple(images))
    P.validate()
    # the construction's guarantees, kept as hard checks
    kernel = epsilon_kernel_image(P, cap=cap)
    assert kernel.order == degree
    assert is_transitive(kernel, degree)
    assert least_period(P, cap=cap) == r0
    sigma_order = image_subgroup(
        [perm for v in gen_vecs for perm in v], cap=cap).order
    assert degree >= sigma_order
    return P


def _base_epsilon(p):
    return abelianization_map(p.cover.cover.base)
