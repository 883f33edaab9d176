"""
Tests for exact spans, membership and parameter constraints.
"""

import pytest
from sympy import QQ

from operads.coeff import ONE, Poly, parse_poly
from operads.errors import DimensionMismatchError, DomainMismatchError, NonlinearParameterError
from operads.linalg import (
    SpanBasis, check_coordinates, express, independent_subset, member, rank, rank_at, reduce, residual,
    same_span, solve_parameter_constraints,
)
from operads.presets import jacobi, preset
from operads.spanning import free_basis, ideal_span


def vec(*entries):
    return {i: Poly(x) for i, x in enumerate(entries) if x}


def test_rational_rank():
    assert rank([vec(1, 0), vec(0, 1), vec(1, 1)], 2) == 2
    assert rank([], 3) == 0


def test_reduced_rows_are_unique():
    first = reduce([vec(1, 2, 0), vec(0, 1, 1)], 3)
    second = reduce([vec(1, 3, 1), vec(2, 5, 1)], 3)
    assert first.pivots == [0, 1]
    assert same_span(first, second)


def test_duplicate_parameter_rows():
    t = Poly.param('t')
    span = reduce([{0: t, 1: ONE}, {0: t, 1: ONE}], 2)
    assert span.domain == 'polynomial'
    assert span.rank == 1
    assert span.certificate == t
    assert rank_at(span.vectors(), 2, {'t': 0}) == 1


def test_generic_rank_drops_on_certificate():
    t = Poly.param('t')
    vectors = [{0: ONE, 1: ONE}, {0: ONE, 1: t + 1}]
    span = reduce(vectors, 2)
    assert span.rank == 2
    assert span.certificate == t
    assert rank_at(vectors, 2, {'t': 0}) == 1
    assert rank_at(vectors, 2, {'t': 5}) == 2


def test_mixed_domain_rejected():
    with pytest.raises(DomainMismatchError):
        reduce([{0: Poly.param('t')}], 1, domain='rational')
    with pytest.raises(DomainMismatchError):
        residual({0: ONE}, reduce([{0: Poly.param('t')}], 1))


def test_dimension_mismatch_rejected():
    span = reduce([vec(1, 0)], 2)
    with pytest.raises(DimensionMismatchError):
        member({5: ONE}, span)


def test_jacobi_membership():
    for name, expected in (('poisson', True), ('almost-poisson', False)):
        P = preset(name)
        basis = free_basis(P, 3)
        span = ideal_span(P, 3).reduce()
        result = member(basis.vector(jacobi()), span)
        assert result.is_member is expected
        if expected:
            assert check_coordinates(basis.vector(jacobi()), span, result)


def test_zero_vector_is_member():
    span = reduce([vec(1, 1)], 2)
    result = member({}, span)
    assert result.is_member
    assert result.coordinates == {}


def test_polynomial_membership_certificate():
    family = preset('ap-family')
    basis = free_basis(family, 3)
    span = ideal_span(family, 3).reduce()
    vector = basis.vector(family.relation('assoc'))
    result = member(vector, span)
    assert result.is_member
    assert check_coordinates(vector, span, result)


def test_residual_with_parameter_entries():
    span = reduce([vec(1, 1, 0)], 3)
    v = parse_poly("v")
    assert residual({0: v, 1: v}, span) == {}
    assert residual({0: v, 2: ONE}, span) == {1: -v, 2: ONE}


def test_express_coordinates():
    generators = [vec(1, 0, 1), vec(0, 1, 1), vec(1, 1, 2)]
    coords = express(vec(2, 3, 5), generators)
    assert coords is not None
    total = [sum(c * g.get(i, Poly(0)).to_rational() for c, g in zip(coords, generators)) for i in range(3)]
    assert total == [QQ(2), QQ(3), QQ(5)]
    assert express(vec(1, 0, 0), generators[:2]) is None


def test_independent_subset_in_input_order():
    vectors = [vec(1, 1), vec(2, 2), vec(0, 1), vec(1, 0)]
    assert independent_subset(vectors) == [0, 2]


def test_constraint_from_opposite_signs():
    v = Poly.param('v')
    constraints = solve_parameter_constraints([{0: v * 2, 1: v * 2}], SpanBasis(2, {}))
    assert str(constraints) == "{v = 0}"
    assert constraints.holds_at({'v': 0})
    assert not constraints.holds_at({'v': 1})


def test_constraint_already_in_span():
    span = reduce([vec(1, 1)], 2)
    v = Poly.param('v')
    constraints = solve_parameter_constraints([{0: v, 1: v}], span)
    assert str(constraints) == "{}"
    assert constraints.satisfiable


def test_constraints_solved_for_sorted_pivots():
    s, t, u = (Poly.param(name) for name in "stu")
    constraints = solve_parameter_constraints([{0: s, 1: u - t * 2}], SpanBasis(2, {}))
    assert str(constraints) == "{s = 0, u = 2*t}"
    assert constraints.as_dict() == {'s': '0', 'u': '2*t'}


def test_contradictory_constraints():
    v = Poly.param('v')
    constraints = solve_parameter_constraints([{0: v, 1: v - 1}], SpanBasis(2, {}))
    assert not constraints.satisfiable
    assert str(constraints).endswith("(unsatisfiable)")


def test_nonlinear_parameter_rejected():
    t = Poly.param('t')
    with pytest.raises(NonlinearParameterError):
        solve_parameter_constraints([{0: t * t}], SpanBasis(1, {}))


# ----------------------------------------------------------------------
# properties
# ----------------------------------------------------------------------

def random_vectors(rng, dimension, count, parameter=False):
    """Sparse integer vectors, some of them combinations of earlier ones."""
    t = Poly.param('t')
    out = []
    for _ in range(count):
        if out and rng.random() < 0.4:
            v = {}
            for row in rng.sample(out, min(2, len(out))):
                c = rng.choice([-2, -1, 1, 3])
                for k, x in row.items():
                    v[k] = v.get(k, Poly(0)) + x * c
            out.append({k: x for k, x in v.items() if x})
            continue
        v = {}
        for k in rng.sample(range(dimension), rng.randint(1, dimension)):
            x = Poly(rng.choice([-3, -1, 1, 2, 4]))
            if parameter and rng.random() < 0.3:
                x = x * t + rng.randint(-1, 1)
            if x:
                v[k] = x
        out.append(v)
    return out


def test_rank_is_order_invariant(rng):
    dimension = rng.randint(2, 7)
    vectors = random_vectors(rng, dimension, rng.randint(1, 8), parameter=rng.random() < 0.5)
    shuffled = list(vectors)
    rng.shuffle(shuffled)
    first, second = reduce(vectors, dimension), reduce(shuffled, dimension)
    assert first.rank == second.rank
    if first.domain == 'rational':
        assert same_span(first, second)


def test_member_iff_rank_unchanged(rng):
    dimension = rng.randint(2, 7)
    vectors = random_vectors(rng, dimension, rng.randint(1, 6))
    basis = reduce(vectors, dimension)
    if rng.random() < 0.5:
        candidate = {}
        for row in vectors:
            c = rng.randint(-2, 2)
            for k, x in row.items():
                candidate[k] = candidate.get(k, Poly(0)) + x * c
        candidate = {k: x for k, x in candidate.items() if x}
    else:
        candidate = random_vectors(rng, dimension, 1)[0]
    grown = rank(vectors + [candidate], dimension)
    assert member(candidate, basis).is_member == (grown == basis.rank)
    assert (not residual(candidate, basis)) == (grown == basis.rank)
