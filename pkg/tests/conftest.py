import json
import pathlib

import pytest

from knotrep.perms import Permutation
from knotrep.permrep import PermRep
from knotrep.words import builtin_presentation, parse_presentation

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

WIRTINGER_TREFOIL = """\
gens: a b c
rel: a b a^-1 = c
rel: b c b^-1 = a
rel: c a c^-1 = b
meridian: a
"""


@pytest.fixture
def trefoil():
    return builtin_presentation("trefoil")


@pytest.fixture
def figure8():
    return builtin_presentation("figure8")


@pytest.fixture
def unknot():
    return builtin_presentation("unknot")


@pytest.fixture
def wirtinger_trefoil():
    return parse_presentation(WIRTINGER_TREFOIL, name="trefoil-wirtinger")


@pytest.fixture
def d3_rep(trefoil):
    """The dihedral representation of the trefoil group on three points."""
    return PermRep(trefoil, 3, (Permutation((1, 0, 2)), Permutation((1, 2, 0))))


@pytest.fixture
def d3_rep_file():
    return FIXTURES / "trefoil_d3_rep.json"


@pytest.fixture
def d3_rep_json(d3_rep_file):
    return json.loads(d3_rep_file.read_text())
