"""
Tests for tree monomials, canonical forms, the input action and composition.
"""

import pytest

from operads.coeff import ONE, parse_poly
from operads.errors import ArityError, LeafRangeError, RepeatedLeafError, UnknownGeneratorError
from operads.presets import B, M, P, assoc_m, b, half_sum_images, leibniz, m
from operads.spanning import free_basis
from operads.term import (
    Element, Node, antisymmetrize, bracket_weight, canonicalize, compose, cyclic_sum, degree_split, format_tree,
    multilinearize, parse_element, permute_inputs, relabel, substitute_generators, symmetrize, to_element,
    vertices,
)

from conftest import random_element, random_permutation

GENS = (M, B)


def el(text, parameters=None):
    return parse_element(text, GENS, parameters)


# ----------------------------------------------------------------------
# canonical form
# ----------------------------------------------------------------------

def test_symmetric_swap_has_no_sign():
    assert canonicalize(Node(M, 2, 1)) == el("m(1,2)")


def test_antisymmetric_swap_negates():
    assert canonicalize(Node(B, 2, 1)) == el("-b(1,2)")


def test_inner_sort_keeps_sign():
    e = canonicalize(Node(B, Node(M, 3, 1), 2))
    assert e.terms() == [(Node(B, Node(M, 1, 3), 2), ONE)]


def test_equal_antisymmetric_subtrees():
    tree = Node(B, Node(B, 1, 2), Node(B, 1, 2))
    with pytest.raises(RepeatedLeafError):
        canonicalize(tree)
    assert not canonicalize(tree, check=False)


def test_leaf_labels_validated():
    with pytest.raises(LeafRangeError):
        canonicalize(Node(M, 1, 3))


# ----------------------------------------------------------------------
# action, composition, weights
# ----------------------------------------------------------------------

def test_cycle_on_associator_monomial():
    e = permute_inputs(el("m(m(1,2),3)"), (2, 3, 1))
    assert e == el("m(1,m(2,3))")


def test_swap_on_bracket():
    assert permute_inputs(el("b(1,2)"), (2, 1)) == el("-b(1,2)")


def test_cyclic_sum_kills_associator():
    assert not cyclic_sum(assoc_m())


def test_symmetrize_helpers():
    assert antisymmetrize(el("m(m(1,2),3)"), 1, 3) == el("m(m(1,2),3) - m(1,m(2,3))")
    assert not symmetrize(el("b(1,2)"), 1, 2)
    assert symmetrize(el("m(1,2)"), 1, 2) == el("2*m(1,2)")


def test_permutation_size_checked():
    with pytest.raises(ArityError):
        permute_inputs(el("m(1,2)"), (1, 2, 3))


def test_compose_grafting():
    assert compose(el("m(1,2)"), 1, el("b(1,2)")) == el("m(b(1,2),3)")
    assert compose(el("b(1,2)"), 2, el("m(1,2)")) == el("b(1,m(2,3))")
    with pytest.raises(ArityError):
        compose(el("b(1,2)"), 3, el("m(1,2)"))


def test_bracket_weight_examples():
    assert bracket_weight(Node(M, Node(M, 1, 2), 3), ['b']) == 0
    assert bracket_weight(Node(B, Node(B, 1, 2), 3), ['b']) == 2
    assert bracket_weight(Node(M, Node(B, 1, 3), 2), [B]) == 1


def test_generator_substitution():
    image = substitute_generators(to_element(2, {Node(P, 1, 2): ONE}), half_sum_images())
    assert image == el("1/2*m(1,2) + 1/2*b(1,2)")


def test_multilinearize_sums_both_placements():
    def square(x, x2, y):
        return m(m(x, x2), y)
    assert to_element(3, multilinearize(square, 1, 2, 3)) == el("2*m(m(1,2),3)")


def test_degree_split():
    e = el("t*m(m(1,2),3) + (t^2 - 1)*b(b(1,2),3)", ['t'])
    parts = degree_split(e, 't')
    assert sorted(parts) == [0, 1, 2]
    assert parts[0] == el("-b(b(1,2),3)")
    assert parts[1] == el("m(m(1,2),3)")
    assert parts[2] == el("b(b(1,2),3)")


# ----------------------------------------------------------------------
# text form
# ----------------------------------------------------------------------

def test_format_order_and_signs():
    e = el("2*m(1,b(2,3)) - b(m(1,2),3)")
    assert str(e) == "-b(m(1,2),3) + 2*m(1,b(2,3))"
    assert str(el("0*m(1,2)")) == "0"


def test_text_round_trip():
    for text in ("b(m(1,2),3) - m(b(1,3),2) - m(1,b(2,3))", "(t + 1)*m(1,2)", "1/2*t*b(b(1,3),2)"):
        e = el(text, ['t'])
        assert el(str(e), ['t']) == e
        assert str(el(str(e), ['t'])) == str(e)


def test_parse_coefficients():
    e = el("1/2*t*m(m(1,2),3)", ['t'])
    assert e.coefficient(Node(M, Node(M, 1, 2), 3)) == parse_poly("1/2*t")
    assert e.coefficient(Node(M, 3, Node(M, 2, 1))) == parse_poly("1/2*t")


def test_parse_diagnostics():
    with pytest.raises(RepeatedLeafError):
        el("m(1,1)")
    with pytest.raises(LeafRangeError):
        el("m(1,4)")
    with pytest.raises(UnknownGeneratorError):
        el("q(1,2)")
    with pytest.raises(ArityError):
        el("m(m(1,2),3) + m(1,2)")


# ----------------------------------------------------------------------
# seeded properties
# ----------------------------------------------------------------------

def _swap_first(tree, name):
    """Swap the children of the first vertex labeled name (pre-order)."""
    if isinstance(tree, int):
        return tree, False
    if tree.gen.name == name:
        return Node(tree.gen, tree.right, tree.left), True
    left, done = _swap_first(tree.left, name)
    if done:
        return Node(tree.gen, left, tree.right), True
    right, done = _swap_first(tree.right, name)
    return Node(tree.gen, tree.left, right), done


def test_canonical_form_is_idempotent(rng, free2):
    n = rng.choice([3, 4, 5])
    tree = rng.choice(free_basis(free2, n).monomials)
    raw = relabel(tree, dict(enumerate(random_permutation(n, rng), start=1)))
    [(canon, coeff)] = canonicalize(raw).terms()
    assert coeff in (1, -1)
    assert canonicalize(canon).terms() == [(canon, ONE)]


def test_input_action_is_a_group_action(rng, free2):
    n = rng.choice([2, 3, 4, 5])
    e = random_element(free2, n, rng)
    sigma, tau = random_permutation(n, rng), random_permutation(n, rng)
    product = tuple(tau[s - 1] for s in sigma)
    assert permute_inputs(permute_inputs(e, sigma), tau) == permute_inputs(e, product)
    assert permute_inputs(e, tuple(range(1, n + 1))) == e


def test_nested_composition_exchange(rng, free2):
    x = random_element(free2, rng.choice([1, 2]), rng, terms=2)
    y = random_element(free2, 2, rng, terms=2)
    z = random_element(free2, rng.choice([1, 2]), rng, terms=2)
    i = rng.randint(1, x.arity)
    j = rng.randint(1, y.arity)
    assert compose(compose(x, i, y), i + j - 1, z) == compose(x, i, compose(y, j, z))


def test_disjoint_composition_exchange(rng, free2):
    x = random_element(free2, 2, rng, terms=2)
    y = random_element(free2, rng.choice([1, 2]), rng, terms=2)
    z = random_element(free2, 2, rng, terms=2)
    i, j = 1, 2
    assert compose(compose(x, j, y), i, z) == compose(compose(x, i, z), j + z.arity - 1, y)


def test_weight_is_additive(rng, free2):
    k, l = rng.choice([2, 3]), rng.choice([1, 2])
    x = rng.choice(free_basis(free2, k).monomials)
    y = rng.choice(free_basis(free2, l).monomials)
    slot = rng.randint(1, k)
    expected = bracket_weight(x, ['b']) + bracket_weight(y, ['b'])
    [(tree, _)] = compose(Element.from_tree(x), slot, Element.from_tree(y)).terms()
    assert bracket_weight(tree, ['b']) == expected


def test_antisymmetric_child_swap_negates(rng, free2):
    n = rng.choice([2, 3, 4])
    candidates = [t for t in free_basis(free2, n).monomials if any(v.gen.name == "b" for v in vertices(t))]
    tree = rng.choice(candidates)
    swapped, done = _swap_first(tree, 'b')
    assert done
    assert Element.from_terms(n, [(swapped, 1)]) == -Element.from_tree(tree)


def test_leibniz_text_matches_builder():
    assert el(str(leibniz())) == leibniz()
    assert format_tree(Node(B, Node(M, 1, 2), 3)) == "b(m(1,2),3)"
