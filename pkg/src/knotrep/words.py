"""Free-group words, finite presentations, Fox derivatives and abelianization.

A word is a tuple of nonzero ints: letter ``+(i+1)`` is generator ``i`` and
``-(i+1)`` its inverse.  The empty tuple is the identity.  Words are kept
freely reduced by the constructors below.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from math import gcd

from .errors import IdentityRelatorWarning, NotInfiniteCyclic, PresentationError
from .intlinalg import AbelianGroup, smith_normal_form

Word = tuple


def letter(gen_index, sign=1):
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return sign * (gen_index + 1)


def letter_gen(x):
    """(generator index, sign) of a letter."""
    return abs(x) - 1, (1 if x > 0 else -1)


def free_reduce(word):
    out = []
    for x in word:
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def word_inverse(word):
    return tuple(-x for x in reversed(word))


def word_mul(*words):
    out = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def word_pow(word, n):
    if n < 0:
        return word_pow(word_inverse(word), -n)
    return word_mul(*([word] * n)) if n else ()


def word_conjugate(word, by):
    """by^-1 * word * by, freely reduced."""
    return word_mul(word_inverse(by), word, by)


def exponent_sum(word, gen_index):
    return sum(s for x in word for g, s in (letter_gen(x),) if g == gen_index)


class GroupRingElement:
    """Element of the integral group ring of a free group.

    Stored as a map from freely reduced words to nonzero integer
    coefficients.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for w, c in items:
                w = free_reduce(w)
                c = clean.get(w, 0) + c
                if c:
                    clean[w] = c
                elif w in clean:
                    del clean[w]
        self.terms = clean

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(): 1})

    @classmethod
    def from_word(cls, word, coeff=1):
        return cls({free_reduce(word): coeff})

    @property
    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        other = _coerce_ring(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            c = out.get(w, 0) + c
            if c:
                out[w] = c
            elif w in out:
                del out[w]
        res = GroupRingElement()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = GroupRingElement()
        res.terms = {w: -c for w, c in self.terms.items()}
        return res

    def __sub__(self, other):
        other = _coerce_ring(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_ring(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            res = GroupRingElement()
            if other:
                res.terms = {w: c * other for w, c in self.terms.items()}
            return res
        other = _coerce_ring(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = word_mul(w1, w2)
                c = out.get(w, 0) + c1 * c2
                if c:
                    out[w] = c
                elif w in out:
                    del out[w]
        res = GroupRingElement()
        res.terms = out
        return res

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        other = _coerce_ring(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __eq__(self, other):
        other = _coerce_ring(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "GroupRingElement(0)"
        bits = " + ".join(f"{c}*{list(w)}" for w, c in sorted(self.terms.items()))
        return f"GroupRingElement({bits})"


def _coerce_ring(x):
    if isinstance(x, GroupRingElement):
        return x
    if isinstance(x, int):
        return GroupRingElement({(): x})
    return NotImplemented


def fox_derivative(word, gen_index):
    """Fox free derivative d(word)/d(generator) in the free group ring.

    Characterized by d(g)/d(g) = 1, d(h)/d(g) = 0 for h != g,
    d(g^-1)/d(g) = -g^-1 and the product rule
    d(uv)/d(g) = d(u)/d(g) + u * d(v)/d(g).
    """
    terms = {}
    prefix = []

    def add(w, c):
        w = tuple(w)
        c = terms.get(w, 0) + c
        if c:
            terms[w] = c
        elif w in terms:
            del terms[w]

    for x in word:
        g, s = letter_gen(x)
        if s > 0:
            if g == gen_index:
                add(prefix, 1)
            _push(prefix, x)
        else:
            _push(prefix, x)
            if g == gen_index:
                add(prefix, -1)
    res = GroupRingElement()
    res.terms = terms
    return res


def _push(prefix, x):
    if prefix and prefix[-1] == -x:
        prefix.pop()
    else:
        prefix.append(x)


def fundamental_identity_check(word, num_gens):
    """w - 1 == sum_g d(w)/d(g) * (g - 1), returned as an exact bool."""
    lhs = GroupRingElement.from_word(word) - 1
    rhs = GroupRingElement.zero()
    for g in range(num_gens):
        gm1 = GroupRingElement.from_word((letter(g),)) - 1
        rhs = rhs + fox_derivative(word, g) * gm1
    return lhs == rhs


@dataclass(frozen=True)
class GroupPresentation:
    """Finite presentation with relations stored as (u, v) pairs, u = v.

    Plain relators have an empty right-hand side.  ``meridian`` is an
    optional generator index singled out as a preferred abelianization
    generator.
    """

    generators: tuple
    relator_pairs: tuple = ()
    meridian: int | None = None
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if not self.generators:
            raise PresentationError("presentation needs at least one generator")
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator name")
        pairs = []
        for u, v in self.relator_pairs:
            pairs.append((free_reduce(u), free_reduce(v)))
        object.__setattr__(self, "relator_pairs", tuple(pairs))
        for u, v in self.relator_pairs:
            for x in u + v:
                g, _ = letter_gen(x)
                if not 0 <= g < len(self.generators):
                    raise PresentationError(f"letter {x} outside generator range")
        if self.meridian is not None and not 0 <= self.meridian < len(self.generators):
            raise PresentationError("meridian index out of range")

    @property
    def num_generators(self):
        return len(self.generators)

    @property
    def relators(self):
        """Relators as single words u * v^-1."""
        return tuple(word_mul(u, word_inverse(v)) for u, v in self.relator_pairs)

    @property
    def num_relators(self):
        return len(self.relator_pairs)

    def generator_index(self, name):
        try:
            return self.generators.index(name)
        except ValueError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def word_from_names(self, tokens):
        out = []
        for tok in tokens:
            if tok.endswith("^-1"):
                out.append(letter(self.generator_index(tok[:-3]), -1))
            else:
                out.append(letter(self.generator_index(tok)))
        return free_reduce(tuple(out))

    def format_word(self, word):
        if not word:
            return "1"
        bits = []
        for x in word:
            g, s = letter_gen(x)
            bits.append(self.generators[g] + ("" if s > 0 else "^-1"))
        return " ".join(bits)

    def to_text(self):
        """Canonical source text; round-trips through parse_presentation."""
        lines = ["gens: " + " ".join(self.generators)]
        for u, v in self.relator_pairs:
            if v:
                lines.append(f"rel: {self.format_word(u)} = {self.format_word(v)}")
            else:
                lines.append(f"rel: {self.format_word(u)}")
        if self.meridian is not None:
            lines.append("meridian: " + self.generators[self.meridian])
        return "\n".join(lines) + "\n"


_TOKEN_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*(\^-1)?$")


def parse_presentation(text, name=None):
    """Parse the line-oriented presentation format.

    ``gens: x a`` declares generators; ``rel: w`` or ``rel: w = w`` adds a
    relation; ``meridian: x`` designates a meridian.  ``#`` starts a comment.
    """
    generators = None
    pairs = []
    meridian_name = None
    meridian_line = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            raise PresentationError("expected '<directive>: ...'", lineno,
                                    len(line) - len(line.lstrip()) + 1)
        head, rest = line.split(":", 1)
        directive = head.strip()
        col0 = line.index(":") + 2
        if directive == "gens":
            if generators is not None:
                raise PresentationError("duplicate gens line", lineno, 1)
            generators = rest.split()
            if not generators:
                raise PresentationError("empty generator list", lineno, col0)
            for g in generators:
                if not _TOKEN_RE.match(g) or g.endswith("^-1"):
                    raise PresentationError(f"bad generator name {g!r}", lineno,
                                            line.index(g) + 1)
        elif directive == "rel":
            if generators is None:
                raise PresentationError("rel before gens", lineno, 1)
            sides = rest.split("=")
            if len(sides) > 2:
                raise PresentationError("more than one '=' in relation", lineno, col0)
            parsed_sides = []
            for side in sides:
                tokens = side.split()
                if not tokens:
                    raise PresentationError("empty word in relation", lineno, col0)
                for tok in tokens:
                    if not _TOKEN_RE.match(tok):
                        raise PresentationError(f"bad token {tok!r}", lineno,
                                                line.index(tok) + 1)
                    base = tok[:-3] if tok.endswith("^-1") else tok
                    if base not in generators:
                        raise PresentationError(f"undeclared generator {base!r}",
                                                lineno, line.index(tok) + 1)
                parsed_sides.append(tokens)
            u = parsed_sides[0]
            v = parsed_sides[1] if len(parsed_sides) == 2 else []
            pairs.append((u, v, lineno))
        elif directive == "meridian":
            if generators is None:
                raise PresentationError("meridian before gens", lineno, 1)
            meridian_name = rest.strip()
            meridian_line = lineno
            if meridian_name not in generators:
                raise PresentationError(f"undeclared generator {meridian_name!r}",
                                        lineno, col0)
        else:
            raise PresentationError(f"unknown directive {directive!r}", lineno, 1)

    if generators is None:
        raise PresentationError("missing gens line")

    pres = GroupPresentation(
        generators=tuple(generators),
        relator_pairs=(),
        meridian=generators.index(meridian_name) if meridian_name else None,
        name=name,
    )
    word_pairs = []
    for u, v, lineno in pairs:
        wu = pres.word_from_names(u)
        wv = pres.word_from_names(v)
        if not word_mul(wu, word_inverse(wv)):
            warnings.warn(
                f"relation at line {lineno} reduces to the identity",
                IdentityRelatorWarning,
                stacklevel=2,
            )
        word_pairs.append((wu, wv))
    return GroupPresentation(
        generators=tuple(generators),
        relator_pairs=tuple(word_pairs),
        meridian=pres.meridian,
        name=name,
    )


BUILTIN_PRESENTATIONS = {
    "trefoil": "gens: x a\nrel: a x x a = x a x\nmeridian: x\n",
    "figure8": "gens: a b\nrel: a b a^-1 b^-1 a = b a^-1 b^-1 a b\nmeridian: a\n",
    "unknot": "gens: x\nmeridian: x\n",
}


def builtin_presentation(name):
    try:
        text = BUILTIN_PRESENTATIONS[name]
    except KeyError:
        raise PresentationError(
            f"unknown knot {name!r}; builtins: {', '.join(sorted(BUILTIN_PRESENTATIONS))}"
        ) from None
    return parse_presentation(text, name=name)


@dataclass(frozen=True)
class AbelianizationMap:
    """Epimorphism onto Z, given by the exponent of each generator."""

    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))

    def __call__(self, word):
        total = 0
        for x in word:
            g, s = letter_gen(x)
            total += s * self.exponents[g]
        return total

    def of_generator(self, i):
        return self.exponents[i]


def abelianization_map(pres):
    """Abelianization of a presentation, verified infinite cyclic.

    The exponent matrix of the relators is put in Smith normal form; the
    quotient must be Z, otherwise NotInfiniteCyclic is raised.  When a
    meridian is designated the map is normalized so it has value +1 there.
    """
    g = pres.num_generators
    relators = pres.relators
    # columns are relators, rows are generators
    mat = [[exponent_sum(rel, i) for rel in relators] for i in range(g)]
    snf = smith_normal_form(mat, cols=len(relators), transforms=True)
    rank = g - len(snf.diagonal)
    torsion = tuple(d for d in snf.diagonal if d > 1)
    if rank != 1 or torsion:
        h1 = AbelianGroup(rank, torsion)
        raise NotInfiniteCyclic(
            f"abelianization is {h1}, not Z (not a knot-group presentation)",
            homology=h1,
        )
    eps = list(snf.left[len(snf.diagonal)])
    assert gcd(*(abs(e) for e in eps)) == 1
    if pres.meridian is not None:
        m = eps[pres.meridian]
        if abs(m) != 1:
            raise NotInfiniteCyclic(
                f"designated meridian has abelianized image {m}, not a generator of Z"
            )
        if m < 0:
            eps = [-e for e in eps]
    else:
        first = next(e for e in eps if e)
        if first < 0:
            eps = [-e for e in eps]
    amap = AbelianizationMap(tuple(eps))
    for rel in relators:
        assert amap(rel) == 0
    return amap


def meridian_word(pres, eps):
    """A word with abelianized image exactly 1.

    Prefers the designated meridian, then any single generator with image
    +1 or -1, then an extended-gcd combination of generators.
    """
    if pres.meridian is not None and eps.of_generator(pres.meridian) == 1:
        return (letter(pres.meridian),)
    for i in range(pres.num_generators):
        if eps.of_generator(i) == 1:
            return (letter(i),)
        if eps.of_generator(i) == -1:
            return (letter(i, -1),)
    # fold an extended gcd over the generators
    coeffs = [0] * pres.num_generators
    acc = 0
    acc_coeffs = [0] * pres.num_generators
    for i in range(pres.num_generators):
        e = eps.of_generator(i)
        if e == 0:
            continue
        g0, x, y = _xgcd(acc, e)
        acc_coeffs = [x * c for c in acc_coeffs]
        acc_coeffs[i] += y
        acc = g0
        if acc == 1:
            coeffs = acc_coeffs
            break
    else:
        raise NotInfiniteCyclic("abelianization map is not surjective")
    word = ()
    for i, c in enumerate(coeffs):
        word = word_mul(word, word_pow((letter(i),), c))
    assert eps(word) == 1
    return word


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0
