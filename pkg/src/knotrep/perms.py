"""Permutations of {0..n-1}.

Composition is left-to-right: (p * q)(i) = q(p(i)), so products of
permutations match products of their permutation matrices in the row-vector
convention used by the twisted chain matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _itertools_permutations
from math import lcm


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation of 0..{len(self.images) - 1}")

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n, cycles):
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + type(cyc)((cyc[0],))):
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return Permutation(tuple(other.images[x] for x in self.images))

    def inverse(self):
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        res = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                res = res * base
            base = base * base
            n >>= 1
        return res

    @property
    def is_identity(self):
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self, include_fixed=False):
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self):
        """Cycle lengths including fixed points, longest first."""
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)),
                            reverse=True))

    def order(self):
        return lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def cycle_string(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycs)

    def __repr__(self):
        return f"Permutation({self.cycle_string()}, degree={self.degree})"


def all_permutations(n):
    """All of S_n in lexicographic order of image tuples."""
    return [Permutation(p) for p in _itertools_permutations(range(n))]


def conjugate(p, by):
    """by^-1 * p * by."""
    return by.inverse() * p * by
