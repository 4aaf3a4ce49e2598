"""Covers of presentation complexes via coset actions.

Reidemeister-Schreier rewriting produces a presentation of the stabilizer
of a basepoint: Schreier generators for the edges outside a breadth-first
spanning tree, and one rewritten relator per (base relator, coset) pair.
Tree-edge generators are freely trivial and eliminated on the fly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import ActionInvalid, InfiniteCover
from .intlinalg import cokernel_invariants
from .perms import Permutation
from .words import (GroupPresentation, Word, exponent_sum, free_reduce, letter,
                    letter_gen, meridian_word, word_inverse, word_mul, word_pow)


@dataclass(frozen=True)
class CosetAction:
    """An action of a presentation's generators on {0..degree-1}."""

    degree: int
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        for p in self.images:
            if p.degree != self.degree:
                raise ValueError("permutation degree mismatch")

    def of_word(self, word):
        p = Permutation.identity(self.degree)
        for x in word:
            g, s = letter_gen(x)
            q = self.images[g]
            p = p * (q if s > 0 else q.inverse())
        return p

    def validate(self, pres):
        if len(self.images) != pres.num_generators:
            raise ActionInvalid("one permutation per generator is required")
        for rel in pres.relators:
            if not self.of_word(rel).is_identity:
                raise ActionInvalid(
                    f"relator {pres.format_word(rel)} acts nontrivially")

    def orbit(self, basepoint):
        seen = {basepoint}
        queue = [basepoint]
        while queue:
            c = queue.pop(0)
            for p in self.images:
                nxt = p(c)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return tuple(sorted(seen))

    def is_transitive(self):
        return len(self.orbit(0)) == self.degree


def cyclic_action(pres, eps, r):
    """The action of the abelianization mod r on r points."""
    if r < 1:
        raise ValueError("cover order must be >= 1")
    images = []
    for i in range(pres.num_generators):
        e = eps.of_generator(i) % r
        images.append(Permutation(tuple((c + e) % r for c in range(r))))
    return CosetAction(r, tuple(images))


@dataclass(frozen=True)
class CoverPresentation:
    """Reidemeister-Schreier data for the cover defined by a coset action.

    ``gens`` lists the non-tree Schreier generators as (base generator
    index, coset) pairs, cosets ascending then generators ascending, and
    ``relators`` are words over them (letters index into ``gens``).  The
    transversal is a Schreier (prefix-closed) family of coset
    representative words, one per orbit element.
    """

    base: GroupPresentation
    action: CosetAction
    basepoint: int
    orbit: tuple
    transversal: tuple          # words, parallel to orbit
    gens: tuple                 # (gen index, coset) pairs
    relators: tuple             # words over cover generators
    restricted: bool = False

    @cached_property
    def _gen_index(self):
        return {pair: i for i, pair in enumerate(self.gens)}

    @cached_property
    def _orbit_pos(self):
        return {c: i for i, c in enumerate(self.orbit)}

    @property
    def generator_names(self):
        return tuple(f"g{g}_c{c}" for g, c in self.gens)

    def transversal_word(self, coset):
        return self.transversal[self._orbit_pos[coset]]

    def generator_word(self, idx):
        """The Schreier generator as a word in the base group."""
        g, c = self.gens[idx]
        target = self.action.images[g](c)
        return word_mul(self.transversal_word(c), (letter(g),),
                        word_inverse(self.transversal_word(target)))

    def rewrite(self, word, start=None):
        """Rewrite a base-group word into cover generators.

        The word must stabilize the start coset (use words whose
        abelianized image is a multiple of the cover order, say).
        """
        c = self.basepoint if start is None else start
        start_coset = c
        out = []
        for x in word:
            g, s = letter_gen(x)
            perm = self.action.images[g]
            if s > 0:
                pair = (g, c)
                if pair in self._gen_index:
                    out.append(self._gen_index[pair] + 1)
                c = perm(c)
            else:
                c = perm.inverse()(c)
                pair = (g, c)
                if pair in self._gen_index:
                    out.append(-(self._gen_index[pair] + 1))
        if c != start_coset:
            raise ValueError("word does not stabilize the start coset")
        return free_reduce(tuple(out))

    def to_presentation(self):
        return GroupPresentation(
            generators=self.generator_names,
            relator_pairs=tuple((rel, ()) for rel in self.relators),
            meridian=None,
            name=None,
        )


def reidemeister_schreier(pres, action, basepoint=0):
    """Presentation of the stabilizer of ``basepoint`` under ``action``.

    The action is restricted to the basepoint's orbit when it is not
    transitive; the result is flagged ``restricted`` in that case.
    """
    action.validate(pres)
    if not 0 <= basepoint < action.degree:
        raise ValueError("basepoint outside the action's degree")
    orbit = action.orbit(basepoint)
    restricted = len(orbit) < action.degree

    # breadth-first Schreier tree
    transversal = {basepoint: ()}
    tree = set()
    queue = [basepoint]
    while queue:
        c = queue.pop(0)
        for g in range(pres.num_generators):
            nxt = action.images[g](c)
            if nxt not in transversal:
                transversal[nxt] = transversal[c] + (letter(g),)
                tree.add((g, c))
                queue.append(nxt)

    gens = tuple((g, c) for c in orbit for g in range(pres.num_generators)
                 if (g, c) not in tree)
    cover = CoverPresentation(
        base=pres,
        action=action,
        basepoint=basepoint,
        orbit=orbit,
        transversal=tuple(transversal[c] for c in orbit),
        gens=gens,
        relators=(),
        restricted=restricted,
    )
    relators = tuple(cover.rewrite(rel, start=c)
                     for rel in pres.relators for c in orbit)
    # Schreier index bookkeeping: all gens minus tree edges, all rewrites
    n = len(orbit)
    assert len(gens) == pres.num_generators * n - (n - 1)
    assert len(relators) == pres.num_relators * n
    return CoverPresentation(
        base=pres,
        action=action,
        basepoint=basepoint,
        orbit=cover.orbit,
        transversal=cover.transversal,
        gens=gens,
        relators=relators,
        restricted=restricted,
    )


@dataclass(frozen=True)
class BranchedCover:
    """Presentation data for the order-r branched quotient of a cyclic cover.

    ``presentation`` extends the Reidemeister-Schreier presentation of the
    r-fold cyclic cover by the rewritten lifts of meridian^r, one per coset.
    """

    cover: CoverPresentation
    presentation: GroupPresentation
    order: int
    meridian: Word

    @property
    def num_schreier_generators(self):
        return len(self.cover.gens)


def branched_cover(pres, eps, r):
    if r < 1:
        raise ValueError("branching order must be >= 1")
    action = cyclic_action(pres, eps, r)
    cover = reidemeister_schreier(pres, action, basepoint=0)
    assert not cover.restricted  # surjective eps makes the action transitive
    x0 = meridian_word(pres, eps)
    branch_word = word_pow(x0, r)
    branch_relators = tuple(cover.rewrite(branch_word, start=c)
                            for c in cover.orbit)
    presentation = GroupPresentation(
        generators=cover.generator_names,
        relator_pairs=tuple((rel, ()) for rel in cover.relators + branch_relators),
        meridian=None,
        name=None,
    )
    return BranchedCover(cover=cover, presentation=presentation, order=r,
                         meridian=x0)


def branched_cover_presentation(pres, eps, r):
    """Presentation of the r-fold branched quotient group."""
    return branched_cover(pres, eps, r).presentation


def cover_homology(pres, action, basepoint=0):
    """First homology of the cover defined by ``action``.

    Abelianizes the Reidemeister-Schreier presentation and reads off the
    invariant factors.
    """
    cover = reidemeister_schreier(pres, action, basepoint)
    return presentation_homology(cover.to_presentation())


def presentation_homology(pres):
    """Abelianization of a presentation as an AbelianGroup."""
    rows = [[exponent_sum(rel, i) for i in range(pres.num_generators)]
            for rel in pres.relators]
    return cokernel_invariants(rows, cols=pres.num_generators)


def induced_quotient_homology(P, r):
    """H1 of the induced infinite cover with the t^r action divided out.

    Rewrites a presentation of the fundamental group of the induced cover
    at level r and adds the lift of meridian^r at the basepoint, which
    abelianizes to the coinvariants of H1 of the infinite induced cover
    under t^r.  This is the Reidemeister-Schreier route to the quantity the
    twisted module computes by companion-matrix evaluation; the plain
    homology of the finite cover is larger by one free summand per
    meridian cycle on the cover's components.
    """
    pres = P.presentation
    eps = P.epsilon
    if eps is None:
        raise ValueError("representation lacks an abelianization map")
    action = induced_cover_action(P, r)
    cover = reidemeister_schreier(pres, action, basepoint=0)
    from .words import meridian_word as _mw

    x0 = _mw(pres, eps)
    lift = word_pow(x0, r)
    if not action.of_word(lift).images[0] == 0:
        raise ActionInvalid(
            "meridian^r does not close up at the basepoint; "
            "the representation is not r-periodic over the basepoint fiber")
    extra = cover.rewrite(lift, start=0)
    rows = [[exponent_sum(rel, i) for i in range(len(cover.gens))]
            for rel in cover.relators + (extra,)]
    return cokernel_invariants(rows, cols=len(cover.gens))


def induced_cover_action(P, r):
    """Product of a permutation representation with the mod-r cyclic action.

    Pairs (point, level) are numbered point * r + level; the action is
    restricted to the orbit of (basepoint 0, level 0) and relabeled along
    the sorted orbit.  Pass r=None for the infinite cyclic cover marker,
    which is rejected here: infinite covers live in the Laurent-module
    world, never as finite actions.
    """
    if r is None:
        raise InfiniteCover(
            "the infinite cyclic cover has no finite coset action; "
            "use the twisted module instead")
    if r < 1:
        raise ValueError("cover order must be >= 1")
    n = P.degree
    eps = P.epsilon
    if eps is None:
        raise ValueError("representation lacks an abelianization map")
    images = []
    for g in range(P.presentation.num_generators):
        pg = P.images[g]
        e = eps.of_generator(g) % r
        images.append(Permutation(tuple(
            pg(i) * r + (j + e) % r for i in range(n) for j in range(r))))
    full = CosetAction(n * r, tuple(images))
    orbit = full.orbit(0)
    if len(orbit) == full.degree:
        return full
    pos = {c: i for i, c in enumerate(orbit)}
    restricted = []
    for p in full.images:
        restricted.append(Permutation(tuple(pos[p(c)] for c in orbit)))
    return CosetAction(len(orbit), tuple(restricted))
