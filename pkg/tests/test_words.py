import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotrep.errors import (IdentityRelatorWarning, NotInfiniteCyclic,
                            PresentationError)
from knotrep.words import (GroupRingElement, abelianization_map,
                           builtin_presentation, fox_derivative, free_reduce,
                           fundamental_identity_check, letter, meridian_word,
                           parse_presentation, word_inverse, word_mul,
                           word_pow)

x, a = letter(0), letter(1)
X, A = -x, -a

words = st.lists(st.sampled_from([x, X, a, A]), max_size=20).map(tuple)


def test_free_reduce_examples():
    assert free_reduce((x, X)) == ()
    assert free_reduce((a, x, X, a)) == (a, a)
    assert free_reduce((a, X, a)) == (a, X, a)


@given(words)
def test_free_reduce_idempotent_and_short(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert len(r) <= len(w)


@given(words)
def test_inverse_cancels(w):
    assert word_mul(w, word_inverse(w)) == ()


def test_parse_trefoil_relator(trefoil):
    assert trefoil.generators == ("x", "a")
    assert trefoil.relators == ((a, x, x, a, X, A, X),)
    assert trefoil.meridian == 0


def test_parse_free_group():
    pres = parse_presentation("gens: x\n")
    assert pres.num_relators == 0
    assert pres.generators == ("x",)


def test_parse_identity_relator_warns():
    with pytest.warns(IdentityRelatorWarning):
        pres = parse_presentation("gens: x a\nrel: a = a\n")
    assert pres.relators == ((),)


def test_parse_comments_and_meridian():
    pres = parse_presentation("# a comment\ngens: x a  # trailing\nrel: x a = a x\nmeridian: a\n")
    assert pres.meridian == 1


@pytest.mark.parametrize("text,fragment", [
    ("rel: x\n", "rel before gens"),
    ("gens:\n", "empty generator list"),
    ("gens: x\nrel: y\n", "undeclared"),
    ("gens: x\nrel: x = \n", "empty word"),
    ("gens: x\nbogus: 1\n", "unknown directive"),
    ("gens: x\nrel: x^2\n", "bad token"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(PresentationError) as err:
        parse_presentation(text)
    assert fragment in str(err.value)


def test_parse_error_carries_location():
    with pytest.raises(PresentationError) as err:
        parse_presentation("gens: x\nrel: x y\n")
    assert err.value.line == 2
    assert err.value.column == 8


def test_to_text_round_trip(trefoil, figure8, unknot):
    for pres in (trefoil, figure8, unknot):
        again = parse_presentation(pres.to_text(), name=pres.name)
        assert again.generators == pres.generators
        assert again.relator_pairs == pres.relator_pairs
        assert again.meridian == pres.meridian


def test_fox_defining_rules():
    assert fox_derivative((x,), 0) == GroupRingElement.one()
    assert fox_derivative((x,), 1) == GroupRingElement.zero()
    assert fox_derivative((X,), 0) == GroupRingElement({(X,): -1})


def test_fox_trefoil_row(trefoil):
    u, v = trefoil.relator_pairs[0]
    # d/dx: a + ax - 1 - xa ; d/da: 1 + ax^2 - x
    row_x = fox_derivative(u, 0) - fox_derivative(v, 0)
    row_a = fox_derivative(u, 1) - fox_derivative(v, 1)
    assert row_x == GroupRingElement({(a,): 1, (a, x): 1, (): -1, (x, a): -1})
    assert row_a == GroupRingElement({(): 1, (a, x, x): 1, (x,): -1})


@given(words, words, st.integers(min_value=0, max_value=1))
def test_fox_product_rule(u, v, g):
    left = fox_derivative(word_mul(u, v), g)
    right = fox_derivative(u, g) + GroupRingElement.from_word(u) * fox_derivative(v, g)
    assert left == right


@given(words)
@settings(max_examples=300)
def test_fundamental_identity(w):
    assert fundamental_identity_check(w, 2)


def test_abelianization_trefoil(trefoil):
    eps = abelianization_map(trefoil)
    assert eps.exponents == (1, 0)
    for rel in trefoil.relators:
        assert eps(rel) == 0


def test_abelianization_figure8(figure8):
    assert abelianization_map(figure8).exponents == (1, 1)


def test_abelianization_unknot(unknot):
    assert abelianization_map(unknot).exponents == (1,)


def test_abelianization_rejects_free_rank_two():
    pres = parse_presentation("gens: x y\n")
    with pytest.raises(NotInfiniteCyclic) as err:
        abelianization_map(pres)
    assert err.value.homology.rank == 2


def test_abelianization_rejects_torsion():
    pres = parse_presentation("gens: x\nrel: x x\n")
    with pytest.raises(NotInfiniteCyclic):
        abelianization_map(pres)


def test_meridian_word_prefers_designated(trefoil):
    eps = abelianization_map(trefoil)
    assert meridian_word(trefoil, eps) == (x,)


def test_meridian_word_combination():
    # torus-knot style presentation; no single generator abelianizes to 1
    pres = parse_presentation("gens: u v\nrel: u u = v v v\n")
    eps = abelianization_map(pres)
    assert sorted(map(abs, eps.exponents)) == [2, 3]
    w = meridian_word(pres, eps)
    assert eps(w) == 1


def test_builtin_names():
    with pytest.raises(PresentationError):
        builtin_presentation("granny")


@given(words, st.integers(min_value=-4, max_value=4))
def test_word_pow_matches_repeated_mul(w, n):
    expected = ()
    base = w if n >= 0 else word_inverse(w)
    for _ in range(abs(n)):
        expected = word_mul(expected, base)
    assert word_pow(w, n) == expected
