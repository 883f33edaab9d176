"""
Shared fixtures: presets, seeded random elements and repository paths.
"""

import os
import random
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, ROOT)

from operads.presets import preset  # noqa: E402
from operads.spanning import free_basis  # noqa: E402
from operads.term import Element  # noqa: E402

FIXTURES = os.path.join(ROOT, "fixtures")
GOLDEN = os.path.join(ROOT, "tests", "golden")

# Number of seeded cases in every property test
PROPERTY_CASES = 200


def random_element(P, n, rng, terms=3):
    """Small random combination of free monomials with integer coefficients."""
    monomials = free_basis(P, n).monomials
    out = Element.zero(n)
    for tree in rng.sample(monomials, min(terms, len(monomials))):
        out = out + Element.from_tree(tree) * rng.choice([-3, -2, -1, 1, 2, 5])
    return out


def random_permutation(n, rng):
    sigma = list(range(1, n + 1))
    rng.shuffle(sigma)
    return tuple(sigma)


@pytest.fixture
def ap():
    return preset('almost-poisson')


@pytest.fixture
def kokoris():
    return preset('kokoris')


@pytest.fixture
def free2():
    return preset('free2')


@pytest.fixture(params=range(PROPERTY_CASES))
def rng(request):
    return random.Random(request.param)


@pytest.fixture
def fixture_path():
    def path(name):
        return os.path.join(FIXTURES, name)
    return path
