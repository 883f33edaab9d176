"""
Spanning Module
Multilinear monomial bases of free operads, spanning sets of operadic ideals
generated by arity-3 relations, and the counting oracles that check them.
"""

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, prod
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy import factorial2
from sympy.utilities.iterables import multiset_partitions

from .coeff import Rational
from .errors import ArityError, OperadError
from .linalg import IncrementalSpan, SpanBasis, Vector, random_point, reduce
from .presentation import Presentation
from .term import (
    Element, Generator, Node, Symmetry, Tree, compose, permute_inputs, relabel, substitute, tree_key,
)

logger = logging.getLogger(__name__)

DEFAULT_SEED = 1729


# ============================================
# FREE BASIS
# ============================================

@dataclass
class FreeBasis:
    """
    Canonical monomials of the free operad at one arity, in canonical order.

    Attributes:
        arity: Number of inputs
        monomials: Canonical trees sorted by the canonical tree order
        index: Tree -> position
    """
    arity: int
    monomials: List[Tree]
    index: Dict[Tree, int]

    def __len__(self) -> int:
        return len(self.monomials)

    def vector(self, e: Element) -> Vector:
        """Coordinates of an element."""
        if e.arity != self.arity:
            raise ArityError(f"element of arity {e.arity} in a basis of arity {self.arity}")
        out = {}
        for tree, coeff in e.items():
            if tree not in self.index:
                raise OperadError(f"monomial {tree} is not in the free basis")
            out[self.index[tree]] = coeff
        return out

    def element(self, vector: Vector) -> Element:
        return Element(self.arity, {self.monomials[i]: c for i, c in vector.items()})


def _trees(labels: FrozenSet[int], generators: Tuple[Generator, ...]) -> List[Tree]:
    if len(labels) == 1:
        return [next(iter(labels))]
    ordered = sorted(labels)
    low, rest = ordered[0], ordered[1:]
    out = []
    for size in range(len(rest) + 1):
        for others in combinations(rest, size):
            left = frozenset((low,) + others)
            right = labels - left
            if not right:
                continue
            lefts, rights = _trees(left, generators), _trees(right, generators)
            for gen in generators:
                for x in lefts:
                    for y in rights:
                        out.append(Node(gen, x, y))
                        if gen.symmetry is Symmetry.NONE:
                            out.append(Node(gen, y, x))
    return out


@lru_cache(maxsize=None)
def _free_basis(generators: Tuple[Generator, ...], n: int) -> FreeBasis:
    monomials = sorted(_trees(frozenset(range(1, n + 1)), generators), key=tree_key)
    return FreeBasis(n, monomials, {tree: i for i, tree in enumerate(monomials)})


def free_basis(P: Presentation, n: int) -> FreeBasis:
    """
    All canonical monomials of arity n over the generators of P.

    Args:
        P: Presentation (only its generators matter)
        n: Arity, at least 1

    Returns:
        FreeBasis in canonical order
    """
    if n < 1:
        raise ArityError("arity 0 is not part of a reduced operad")
    return _free_basis(P.generators, n)


def free_dimension_oracle(P: Presentation, n: int) -> int:
    """
    Free operad dimension from the recurrence
    f(n) = (g_sym/2 + g_none) * Σ_i C(n,i) f(i) f(n-i), f(1) = 1.
    """
    symmetric = sum(1 for g in P.generators if g.symmetry is not Symmetry.NONE)
    planar = len(P.generators) - symmetric
    f = [0, 1]
    for k in range(2, n + 1):
        total = sum(comb(k, i) * f[i] * f[k - i] for i in range(1, k))
        f.append((symmetric + 2 * planar) * total // 2)
    return f[n]


# ============================================
# COUNTING ORACLES
# ============================================

def _set_partitions(n: int):
    if n == 0:
        return [[]]
    return multiset_partitions(list(range(1, n + 1)))


def ap_weight_oracle(n: int) -> List[int]:
    """
    Almost Poisson dimensions per bracket weight: weight w collects the set
    partitions of {1..n} into n - w blocks, each block B weighted by (2|B|-3)!!.
    """
    weights = [0] * n
    for partition in _set_partitions(n):
        weights[n - len(partition)] += prod(int(factorial2(2 * len(block) - 3)) for block in partition)
    return weights


def ap_dimension_oracle(n: int) -> int:
    """Arity-n dimension of the almost Poisson operad without linear algebra."""
    return sum(ap_weight_oracle(n))


# ============================================
# IDEAL SPANS
# ============================================

@dataclass
class IdealSpan:
    """
    Independent spanning set of the arity-n component of the ideal.

    Attributes:
        arity: n
        basis: Ambient free basis
        elements: Composites of relations, independent at the sample point
        vectors: Their coordinates in the free basis
        point: Parameter values used for independence selection
    """
    arity: int
    basis: FreeBasis
    elements: List[Element]
    vectors: List[Vector]
    point: Dict[str, Rational]

    @property
    def rank(self) -> int:
        return len(self.elements)

    def reduce(self) -> SpanBasis:
        return reduce(self.vectors, len(self.basis))


def _order_preserving(labels: Sequence[int]) -> Dict[int, int]:
    return {i + 1: label for i, label in enumerate(labels)}


def grow(elements: Sequence[Element], generators: Sequence[Generator]) -> List[Element]:
    """
    Candidates for the next arity: root graftings g(E, c) (and g(c, E) for
    generators without symmetry) and slot substitutions of g(a, b) into a leaf.
    Remaining labels are distributed order-preservingly.
    """
    out: List[Element] = []
    for e in elements:
        k = e.arity
        labels = list(range(1, k + 2))
        for c in labels:
            mapping = _order_preserving([x for x in labels if x != c])
            shifted = [(relabel(tree, mapping), coeff) for tree, coeff in e.items()]
            for gen in generators:
                out.append(Element.from_terms(k + 1, [(Node(gen, tree, c), coeff) for tree, coeff in shifted]))
                if gen.symmetry is Symmetry.NONE:
                    out.append(Element.from_terms(k + 1, [(Node(gen, c, tree), coeff) for tree, coeff in shifted]))

        for slot in range(1, k + 1):
            for gen in generators:
                pairs = permutations(labels, 2) if gen.symmetry is Symmetry.NONE else combinations(labels, 2)
                for a, b in pairs:
                    rest = iter(x for x in labels if x not in (a, b))
                    mapping: Dict[int, Tree] = {j: next(rest) for j in range(1, k + 1) if j != slot}
                    mapping[slot] = Node(gen, a, b)
                    out.append(Element.from_terms(k + 1, [(substitute(tree, mapping), coeff)
                                                          for tree, coeff in e.items()]))
    return out


def _select(candidates: Sequence[Element], basis: FreeBasis, point) -> Tuple[List[Element], List[Vector]]:
    span = IncrementalSpan(point or None)
    elements, vectors = [], []
    for candidate in candidates:
        if not candidate:
            continue
        vector = basis.vector(candidate)
        if span.add(vector):
            elements.append(candidate)
            vectors.append(vector)
    return elements, vectors


def sample_point(P: Presentation, seed: int = DEFAULT_SEED) -> Dict[str, Rational]:
    return random_point(P.parameters, random.Random(seed))


def ideal_span(P: Presentation, n: int, seed: int = DEFAULT_SEED) -> IdealSpan:
    """
    Spanning set of the ideal's arity-n component, grown arity by arity from
    all input permutations of the relations.

    Args:
        P: Presentation
        n: Arity, at least 3
        seed: Seed of the sample point used to pick an independent subset

    Returns:
        IdealSpan whose elements are independent for generic parameters
    """
    if n < 3:
        raise ArityError("the ideal is generated in arity 3")
    return _ideal_span(P, n, seed)


@lru_cache(maxsize=64)
def _ideal_span(P: Presentation, n: int, seed: int) -> IdealSpan:
    point = sample_point(P, seed)
    basis = free_basis(P, 3)
    candidates = [permute_inputs(r, sigma) for r in P.elements for sigma in permutations(range(1, 4))]
    elements, vectors = _select(candidates, basis, point)
    for k in range(4, n + 1):
        basis = free_basis(P, k)
        candidates = grow(elements, P.generators)
        elements, vectors = _select(candidates, basis, point)
        logger.debug(f"{P.name}: arity {k}, {len(candidates)} candidates, rank {len(elements)}")
    return IdealSpan(n, basis, elements, vectors, point)


def _relation_composites(P: Presentation, m: int) -> List[Element]:
    """Relations (all input orders) with free monomials composed into their slots."""
    relations = [permute_inputs(r, sigma) for r in P.elements for sigma in permutations(range(1, 4))]
    out = []
    for a1 in range(1, m - 1):
        for a2 in range(1, m - a1):
            a3 = m - a1 - a2
            for r in relations:
                for y3 in free_basis(P, a3).monomials:
                    with3 = compose(r, 3, Element.from_tree(y3))
                    for y2 in free_basis(P, a2).monomials:
                        with2 = compose(with3, 2, Element.from_tree(y2))
                        for y1 in free_basis(P, a1).monomials:
                            out.append(compose(with2, 1, Element.from_tree(y1)))
    return out


def context_span(P: Presentation, n: int) -> IdealSpan:
    """
    Brute-force spanning set: every relation placed at every vertex of every
    monomial shape, closed under all input permutations. Used as an
    independent completeness check for ideal_span.
    """
    if n < 3:
        raise ArityError("the ideal is generated in arity 3")
    point = sample_point(P)
    basis = free_basis(P, n)
    shapes = list(_relation_composites(P, n))
    for k in range(2, n - 1):
        inner = _relation_composites(P, n - k + 1)
        for outer in free_basis(P, k).monomials:
            for slot in range(1, k + 1):
                for z in inner:
                    shapes.append(compose(Element.from_tree(outer), slot, z))
    candidates = (permute_inputs(e, sigma) for e in shapes for sigma in permutations(range(1, n + 1)))
    elements, vectors = _select(list(candidates), basis, point)
    logger.debug(f"{P.name}: brute-force arity {n}, {len(shapes)} shapes, rank {len(elements)}")
    return IdealSpan(n, basis, elements, vectors, point)


def quotient_dimension(P: Presentation, n: int, point: Optional[Dict[str, Rational]] = None,
                       seed: int = DEFAULT_SEED) -> int:
    """
    Dimension of the arity-n component of the quotient operad.

    Args:
        P: Presentation
        n: Arity
        point: Optional parameter values to specialize at first

    Returns:
        free dimension - ideal rank (generic in any remaining parameters)
    """
    if point:
        P = P.specialize(point)
    free = len(free_basis(P, n))
    if n < 3:
        return free
    return free - ideal_span(P, n, seed).rank
