"""
Tests for the bracket filtration and associated graded dimensions.
"""

import pytest

from operads.errors import OperadError
from operads.graded import arity_report, gr_dimensions, leading_part, leading_presentation, weight_split
from operads.presets import preset
from operads.spanning import ap_weight_oracle, context_span, quotient_dimension
from operads.term import Element

from conftest import random_element


def test_almost_poisson_arity_three(ap):
    table = gr_dimensions(ap, 3)
    assert table.free == [3, 6, 3]
    assert table.as_tuple() == (1, 3, 3)
    assert table.total == 7


def test_almost_poisson_arity_four(ap):
    assert gr_dimensions(ap, 4).as_tuple() == (1, 6, 15, 15)
    assert list(gr_dimensions(ap, 4).gr) == ap_weight_oracle(4)


def test_jacobi_removes_one_top_weight_dimension():
    assert gr_dimensions(preset('poisson'), 3).as_tuple() == (1, 3, 2)


@pytest.mark.parametrize("name", ['almost-poisson', 'poisson', 'livernet-loday', 'kokoris', 'alternative',
                                  'ap-family', 'associative-polarized'])
def test_graded_total_is_quotient_dimension(name):
    P = preset(name)
    for n in range(1, 5):
        assert gr_dimensions(P, n).total == quotient_dimension(P, n)


def test_livernet_loday_graded_is_poisson():
    P = preset('livernet-loday')
    assert gr_dimensions(P, 3).as_tuple() == (1, 3, 2)
    assert gr_dimensions(P, 4).as_tuple() == gr_dimensions(preset('poisson'), 4).as_tuple()


def test_needs_ideal_generators():
    with pytest.raises(OperadError):
        gr_dimensions(preset('commutative-assoc'), 3)


def test_weight_split_sums_back(rng, free2):
    e = random_element(free2, rng.choice([3, 4]), rng, terms=5)
    parts = weight_split(e, ['b'])
    total = Element.zero(e.arity)
    for weight, part in parts.items():
        total = total + part
        assert weight_split(part, ['b']) == {weight: part}
    assert total == e
    assert leading_part(e, ['b']) == parts[min(parts)]


def test_leading_presentation_of_ap_family():
    leading = leading_presentation(preset('ap-family'))
    assert leading.elements == preset('almost-poisson').elements


def test_table_text_and_records(ap):
    table = gr_dimensions(ap, 3)
    lines = table.format().splitlines()
    assert lines[0] == "arity 3"
    assert lines[-1].split() == ["total", "12", "5", "7"]
    assert table.records()[2] == {'arity': 3, 'weight': 2, 'free': 3, 'leading': 0, 'gr': 3}


def test_arity_report(ap):
    report = arity_report(ap, 4)
    assert (report.free_dimension, report.ideal_rank, report.quotient_dimension) == (120, 83, 37)
    assert report.table.as_tuple() == (1, 6, 15, 15)
    assert arity_report(ap, 2).ideal_rank == 0


# ----------------------------------------------------------------------
# brute-force cross-check
# ----------------------------------------------------------------------

@pytest.mark.parametrize("name", ['almost-poisson', 'poisson', 'kokoris', 'ap-family'])
def test_table_from_brute_force_span(name):
    P = preset(name)
    assert gr_dimensions(P, 4, span=context_span(P, 4)) == gr_dimensions(P, 4)


@pytest.mark.slow
def test_table_from_brute_force_span_at_random_points(rng):
    if rng.random() < 0.5:
        P = preset('ap-family').specialize({'t': rng.randint(-2, 2), 'v': rng.randint(-2, 2)})
    else:
        point = {name: rng.randint(-2, 2) for name in ('s', 't', 'u', 'v')}
        P = preset('poisson-family').specialize(point)
    assert gr_dimensions(P, 4, span=context_span(P, 4)) == gr_dimensions(P, 4)
