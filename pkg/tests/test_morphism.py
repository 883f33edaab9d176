"""
Tests for generator maps, relation transport and low-arity isomorphism checks.
"""

import pytest

from operads.errors import ArityError, MissingInverseError, SymmetryError, UnknownGeneratorError
from operads.linalg import same_span
from operads.morphism import (
    GenMap, apply, builtin_map, compose_maps, describe_image, iso_check_low_arity, relations_map_into_ideal,
    transport,
)
from operads.presentation import parse_document
from operads.presets import preset
from operads.spanning import ideal_span
from operads.term import Element, Node, compose, parse_element, permute_inputs

from conftest import random_element, random_permutation


def test_depolarization_of_product(kokoris):
    f = builtin_map('kokoris-depolarization')
    m = Element.from_tree(Node(f.source.generator('m'), 1, 2))
    assert apply(f, m) == parse_element("1/2*p(1,2) + 1/2*p(2,1)", kokoris.generators)
    assert apply(f, Element.zero(3)) == Element.zero(3)


def test_describe_image():
    lines = describe_image(builtin_map('kokoris-depolarization'))
    assert lines == ["m(1,2) => 1/2*p(1,2) + 1/2*p(2,1)", "b(1,2) => 1/2*p(1,2) - 1/2*p(2,1)"]


@pytest.mark.parametrize("name", ['kokoris-depolarization', 'kokoris-polarization', 'associative-polarization',
                                  'associative-depolarization', 'star-product', 'star-rescaling'])
def test_relations_map_into_target_ideal(name):
    checks = relations_map_into_ideal(builtin_map(name))
    assert checks
    assert all(check.passed for check in checks)


def test_identity_has_unit_coordinates(ap):
    checks = relations_map_into_ideal(GenMap.identity(ap))
    assert all(check.passed for check in checks)
    for check in checks:
        assert check.coordinates == [(f"{check.relation}(1,2,3)", 1)]


def test_polarized_associator_is_not_almost_poisson():
    f = GenMap('pol', preset('associative'), preset('almost-poisson'),
               {'p': builtin_map('kokoris-polarization').images['p']})
    [check] = relations_map_into_ideal(f)
    assert not check.passed


def test_kokoris_isomorphism():
    iso = iso_check_low_arity(builtin_map('kokoris-depolarization'), builtin_map('kokoris-polarization'), 4)
    assert iso.passed
    assert iso.source_dims == iso.target_dims == [1, 2, 7, 37]


def test_associative_isomorphism_at_t_one():
    iso = iso_check_low_arity(builtin_map('associative-polarization'), builtin_map('associative-depolarization'), 4)
    assert iso.passed
    assert iso.source_dims == [1, 2, 6, 24]


def test_poisson_identity_isomorphism():
    identity = builtin_map('poisson-identity')
    assert iso_check_low_arity(identity, identity, 4).passed


def test_iso_check_arguments():
    f = builtin_map('kokoris-depolarization')
    with pytest.raises(MissingInverseError):
        iso_check_low_arity(f, None, 3)
    with pytest.raises(ArityError):
        iso_check_low_arity(f, builtin_map('kokoris-polarization'), 6)


def test_image_symmetry_checked(ap, kokoris):
    p12 = Element.from_tree(Node(kokoris.generator('p'), 1, 2))
    with pytest.raises(SymmetryError):
        GenMap('bad', ap, kokoris, {'m': p12, 'b': p12})
    with pytest.raises(UnknownGeneratorError):
        GenMap('bad', ap, kokoris, {'m': p12 + permute_inputs(p12, (2, 1))})


def test_composite_is_identity_on_generators():
    f = builtin_map('kokoris-depolarization')
    g = builtin_map('kokoris-polarization')
    roundtrip = compose_maps(f, g)
    for gen in f.source.generators:
        x = Element.from_tree(Node(gen, 1, 2))
        assert roundtrip.images[gen.name] == x


def test_transport_gives_the_same_ideal():
    f = builtin_map('kokoris-depolarization')
    transported = transport(preset('almost-poisson'), f)
    assert same_span(ideal_span(transported, 3).reduce(), ideal_span(preset('kokoris'), 3).reduce())


def test_maps_from_a_document(fixture_path):
    with open(fixture_path('maps.op'), encoding='utf-8') as handle:
        document = parse_document(handle.read())
    forward = GenMap.from_decl(document.maps['depolarize'])
    backward = GenMap.from_decl(document.maps['polarize'])
    assert forward.images == builtin_map('kokoris-depolarization').images
    assert iso_check_low_arity(forward, backward, 3).passed


def test_apply_commutes_with_composition(rng, kokoris):
    f = builtin_map('kokoris-polarization')
    x = random_element(kokoris, 2, rng, terms=2)
    y = random_element(kokoris, rng.choice([2, 3]), rng, terms=2)
    slot = rng.randint(1, 2)
    assert apply(f, compose(x, slot, y)) == compose(apply(f, x), slot, apply(f, y))


def test_apply_commutes_with_permutation(rng, ap):
    f = builtin_map('kokoris-depolarization')
    n = rng.choice([3, 4])
    e = random_element(ap, n, rng)
    sigma = random_permutation(n, rng)
    assert apply(f, permute_inputs(e, sigma)) == permute_inputs(apply(f, e), sigma)
