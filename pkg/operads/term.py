"""
Term Module
Tree monomials over binary generators, signed canonical forms, the symmetric
group action on inputs, partial composition and generator substitution.

A tree is either an int (a leaf label) or a Node. Signs never live in trees:
an Element maps canonical trees to nonzero Poly coefficients.
"""

import logging
from enum import Enum
from functools import lru_cache
from itertools import permutations
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from .coeff import ONE, ZERO, Poly, Scalar, as_poly, read_factor
from .errors import ArityError, InternalConsistencyError, LeafRangeError, RepeatedLeafError, UnknownGeneratorError
from .lexer import Token, TokenStream, describe

logger = logging.getLogger(__name__)


class Symmetry(str, Enum):
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"
    NONE = "none"


class Generator(NamedTuple):
    name: str
    symmetry: Symmetry
    arity: int = 2

    def __str__(self) -> str:
        return f"{self.name}:{self.arity} {self.symmetry.value}"


class Node(NamedTuple):
    gen: Generator
    left: "Tree"
    right: "Tree"


Tree = Union[int, Node]

# Raw linear combination of trees whose leaves are distinct but arbitrary labels
LinearTrees = Dict[Tree, Poly]


# ============================================
# TREE HELPERS
# ============================================

def leaves(tree: Tree) -> List[int]:
    """Leaf labels from left to right."""
    if isinstance(tree, int):
        return [tree]
    return leaves(tree.left) + leaves(tree.right)


def vertices(tree: Tree) -> Iterator[Node]:
    """Internal vertices in pre-order."""
    if isinstance(tree, Node):
        yield tree
        yield from vertices(tree.left)
        yield from vertices(tree.right)


@lru_cache(maxsize=1 << 16)
def tree_key(tree: Tree) -> tuple:
    """
    Total order on trees: minimal leaf, number of leaves, leaves before
    vertices, root generator name, then left and right child recursively.
    """
    if isinstance(tree, int):
        return (tree, 1, 0, "")
    left, right = tree_key(tree.left), tree_key(tree.right)
    return (min(left[0], right[0]), left[1] + right[1], 1, tree.gen.name, left, right)


def relabel(tree: Tree, mapping: Mapping[int, int]) -> Tree:
    """Rename leaf labels; no canonicalization."""
    if isinstance(tree, int):
        return mapping[tree]
    return Node(tree.gen, relabel(tree.left, mapping), relabel(tree.right, mapping))


def substitute(tree: Tree, mapping: Mapping[int, Tree]) -> Tree:
    """Replace leaves by subtrees; leaves missing from mapping are kept."""
    if isinstance(tree, int):
        return mapping.get(tree, tree)
    return Node(tree.gen, substitute(tree.left, mapping), substitute(tree.right, mapping))


def bracket_weight(tree: Tree, ideal_gens: Iterable[Union[str, Generator]]) -> int:
    """
    Number of internal vertices labeled by a generator of the filtration ideal.

    Args:
        tree: Monomial tree
        ideal_gens: Generators (or their names) generating the ideal

    Returns:
        Filtration weight of the monomial
    """
    names = {g.name if isinstance(g, Generator) else g for g in ideal_gens}
    return sum(1 for vertex in vertices(tree) if vertex.gen.name in names)


def format_tree(tree: Tree) -> str:
    if isinstance(tree, int):
        return str(tree)
    return f"{tree.gen.name}({format_tree(tree.left)},{format_tree(tree.right)})"


# ============================================
# CANONICAL FORM
# ============================================

def _canon(tree: Tree) -> Tuple[int, Optional[Tree]]:
    """Signed canonical form; sign 0 means the tree is zero."""
    if isinstance(tree, int):
        return 1, tree
    sign_left, left = _canon(tree.left)
    if not sign_left:
        return 0, None
    sign_right, right = _canon(tree.right)
    if not sign_right:
        return 0, None

    sign = sign_left * sign_right
    symmetry = tree.gen.symmetry
    if symmetry is not Symmetry.NONE:
        if left == right:
            if symmetry is Symmetry.ANTISYMMETRIC:
                return 0, None
        elif tree_key(right) < tree_key(left):
            left, right = right, left
            if symmetry is Symmetry.ANTISYMMETRIC:
                sign = -sign
    return sign, Node(tree.gen, left, right)


def check_labels(tree: Tree) -> int:
    """Validate that leaves are exactly 1..n and return n."""
    labels = leaves(tree)
    seen = set()
    for label in labels:
        if label in seen:
            raise RepeatedLeafError(f"leaf {label} repeated in {format_tree(tree)}")
        seen.add(label)
    n = len(labels)
    for label in labels:
        if not 1 <= label <= n:
            raise LeafRangeError(f"leaf out of range: {label} in {format_tree(tree)}")
    return n


def canonicalize(tree: Tree, check: bool = True) -> "Element":
    """
    One-term Element holding the signed canonical form of a raw tree.

    Args:
        tree: Raw tree, children in any order
        check: Validate that leaf labels are exactly 1..n

    Returns:
        sign * canonical tree, or the zero Element for an antisymmetric
        vertex with equal subtrees
    """
    if check:
        arity = check_labels(tree)
    else:
        arity = len(leaves(tree))
    sign, canon = _canon(tree)
    if not sign:
        if check:
            raise InternalConsistencyError(f"antisymmetric zero with distinct leaves: {format_tree(tree)}")
        return Element.zero(arity)
    return Element(arity, {canon: ONE if sign > 0 else -ONE})


def _accumulate(acc: Dict[Tree, Poly], tree: Tree, coeff: Poly):
    sign, canon = _canon(tree)
    if sign:
        term = coeff if sign > 0 else -coeff
        acc[canon] = acc[canon] + term if canon in acc else term


# ============================================
# ELEMENTS
# ============================================

class Element:
    """
    Finite linear combination of canonical monomials of one arity.
    Immutable; equality and hashing are by arity and term map.
    """

    __slots__ = ('arity', '_terms', '_hash')

    def __init__(self, arity: int, terms: Optional[Mapping[Tree, Poly]] = None):
        self.arity = arity
        self._terms = {t: c for t, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def zero(cls, arity: int) -> "Element":
        return cls(arity)

    @classmethod
    def from_tree(cls, tree: Tree) -> "Element":
        return canonicalize(tree)

    @classmethod
    def from_terms(cls, arity: int, terms: Iterable[Tuple[Tree, Scalar]]) -> "Element":
        """Sum of coefficient * raw tree, canonicalized (labels must be 1..arity)."""
        acc: Dict[Tree, Poly] = {}
        for tree, coeff in terms:
            _accumulate(acc, tree, as_poly(coeff))
        return cls(arity, acc)

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    def terms(self) -> List[Tuple[Tree, Poly]]:
        """Terms sorted by the canonical tree order."""
        return sorted(self._terms.items(), key=lambda item: tree_key(item[0]))

    def monomials(self) -> List[Tree]:
        return [tree for tree, _ in self.terms()]

    def coefficient(self, tree: Tree) -> Poly:
        """Coefficient of a (raw) tree, sign of its canonical form included."""
        sign, canon = _canon(tree)
        if not sign:
            return ZERO
        coeff = self._terms.get(canon, ZERO)
        return coeff if sign > 0 else -coeff

    @property
    def params(self) -> Tuple[str, ...]:
        names = set()
        for coeff in self._terms.values():
            names.update(coeff.names)
        return tuple(sorted(names))

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self):
        return iter(self.terms())

    # ------------------------------------------------------------------
    # Linear structure
    # ------------------------------------------------------------------

    def _check_arity(self, other: "Element"):
        if self.arity != other.arity:
            raise ArityError(f"cannot combine arity {self.arity} with arity {other.arity}")

    def __add__(self, other: "Element") -> "Element":
        self._check_arity(other)
        terms = dict(self._terms)
        for tree, coeff in other._terms.items():
            terms[tree] = terms[tree] + coeff if tree in terms else coeff
        return Element(self.arity, terms)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element(self.arity, {t: -c for t, c in self._terms.items()})

    def __mul__(self, scalar: Scalar) -> "Element":
        scalar = as_poly(scalar)
        if not scalar:
            return Element.zero(self.arity)
        return Element(self.arity, {t: c * scalar for t, c in self._terms.items()})

    __rmul__ = __mul__

    def map_coefficients(self, fn: Callable[[Poly], Poly]) -> "Element":
        return Element(self.arity, {t: fn(c) for t, c in self._terms.items()})

    def evaluate(self, assignment: Mapping[str, Scalar]) -> "Element":
        """Specialize parameters in every coefficient; unused names are ignored."""
        if not assignment:
            return self
        return self.map_coefficients(lambda c: c.evaluate(assignment, strict=False))

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.arity == other.arity and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({self.arity}, {format_element(self)!r})"


def format_element(e: Element) -> str:
    """Text form ``coeff*monomial`` joined by +/-, coefficient 1 omitted."""
    if not e:
        return "0"
    out = ""
    for i, (tree, coeff) in enumerate(e.terms()):
        negative = coeff.leading_coefficient() < 0
        size = -coeff if negative else coeff
        mono = format_tree(tree)
        if size == 1:
            text = mono
        elif len(size.raw) == 1:
            text = f"{size}*{mono}"
        else:
            text = f"({size})*{mono}"
        if i == 0:
            out = ("-" if negative else "") + text
        else:
            out += (" - " if negative else " + ") + text
    return out


# ============================================
# OPERATIONS
# ============================================

def permute_inputs(e: Element, sigma: Sequence[int]) -> Element:
    """
    Relabel leaf i as sigma(i) and re-canonicalize.

    Args:
        e: Element of arity n
        sigma: Images of 1..n, i.e. sigma[i-1] = sigma(i)

    Returns:
        The permuted element
    """
    if len(sigma) != e.arity or sorted(sigma) != list(range(1, e.arity + 1)):
        raise ArityError(f"{tuple(sigma)} is not a permutation of 1..{e.arity}")
    mapping = {i + 1: image for i, image in enumerate(sigma)}
    acc: Dict[Tree, Poly] = {}
    for tree, coeff in e.items():
        _accumulate(acc, relabel(tree, mapping), coeff)
    return Element(e.arity, acc)


def compose(outer: Element, slot: int, inner: Element) -> Element:
    """
    Partial composition outer o_slot inner.

    Leaf slot of outer is replaced by inner; labels are shifted
    order-preservingly so the result has leaves 1..k+m-1.
    """
    k, m = outer.arity, inner.arity
    if not 1 <= slot <= k:
        raise ArityError(f"slot {slot} out of range 1..{k}")
    outer_map = {j: j if j < slot else j + m - 1 for j in range(1, k + 1)}
    inner_map = {j: j + slot - 1 for j in range(1, m + 1)}

    acc: Dict[Tree, Poly] = {}
    for inner_tree, inner_coeff in inner.items():
        shifted = relabel(inner_tree, inner_map)
        for outer_tree, outer_coeff in outer.items():
            mapping: Dict[int, Tree] = dict(outer_map)
            mapping[slot] = shifted
            _accumulate(acc, substitute(outer_tree, mapping), outer_coeff * inner_coeff)
    return Element(k + m - 1, acc)


def cyclic_sum(e: Element) -> Element:
    """(1 + sigma + sigma^2) e for the cycle sigma = (1 2 3)."""
    if e.arity != 3:
        raise ArityError("cyclic sum is defined on arity 3")
    sigma, sigma2 = (2, 3, 1), (3, 1, 2)
    return e + permute_inputs(e, sigma) + permute_inputs(e, sigma2)


def symmetrize(e: Element, i: int, j: int, sign: int = 1) -> Element:
    """e + sign * (i j) e; sign=-1 antisymmetrizes."""
    swap = list(range(1, e.arity + 1))
    swap[i - 1], swap[j - 1] = j, i
    return e + permute_inputs(e, swap) * sign


def antisymmetrize(e: Element, i: int, j: int) -> Element:
    """(1 - (i j)) e."""
    return symmetrize(e, i, j, sign=-1)


def all_permutations(n: int) -> List[Tuple[int, ...]]:
    return list(permutations(range(1, n + 1)))


def substitute_generators(e: Element, images: Mapping[str, Element]) -> Element:
    """
    Replace every vertex by the image of its generator, expanded multilinearly.

    Args:
        e: Element over the source generators
        images: Generator name -> arity-2 Element over the target generators

    Returns:
        Canonical element over the target generators
    """
    acc: Dict[Tree, Poly] = {}
    for tree, coeff in e.items():
        for raw, c in _expand_images(tree, images).items():
            _accumulate(acc, raw, coeff * c)
    return Element(e.arity, acc)


def _expand_images(tree: Tree, images: Mapping[str, Element]) -> LinearTrees:
    if isinstance(tree, int):
        return {tree: ONE}
    if tree.gen.name not in images:
        raise UnknownGeneratorError(f"no image for generator {tree.gen.name!r}")
    image = images[tree.gen.name]
    lefts = _expand_images(tree.left, images)
    rights = _expand_images(tree.right, images)
    out: LinearTrees = {}
    for shape, c in image.items():
        for left, cl in lefts.items():
            for right, cr in rights.items():
                raw = substitute(shape, {1: left, 2: right})
                out[raw] = out[raw] + c * cl * cr if raw in out else c * cl * cr
    return out


# ============================================
# RAW BUILDERS
# ============================================

def operate(gen: Generator, left: Union[int, LinearTrees], right: Union[int, LinearTrees]) -> LinearTrees:
    """Apply a generator to two raw combinations on disjoint labels."""
    if isinstance(left, int):
        left = {left: ONE}
    if isinstance(right, int):
        right = {right: ONE}
    out: LinearTrees = {}
    for lt, lc in left.items():
        for rt, rc in right.items():
            node = Node(gen, lt, rt)
            out[node] = out[node] + lc * rc if node in out else lc * rc
    return out


def combine(*pairs: Tuple[Scalar, LinearTrees]) -> LinearTrees:
    """Linear combination sum(c * x) of raw combinations."""
    out: LinearTrees = {}
    for scalar, trees in pairs:
        scalar = as_poly(scalar)
        for tree, coeff in trees.items():
            value = scalar * coeff
            out[tree] = out[tree] + value if tree in out else value
    return out


def to_element(arity: int, trees: LinearTrees) -> Element:
    return Element.from_terms(arity, trees.items())


def multilinearize(builder: Callable[..., LinearTrees], first: int, second: int, *others: int) -> LinearTrees:
    """
    Full polarization of an identity that uses one variable twice.

    builder(x, x2, *others) receives the labels for the two occurrences;
    the result sums both placements of the fresh labels.
    """
    return combine((1, builder(first, second, *others)), (1, builder(second, first, *others)))


def degree_split(e: Element, name: str) -> Dict[int, Element]:
    """Split an element by the degree of one parameter in its coefficients."""
    parts: Dict[int, Dict[Tree, Poly]] = {}
    for tree, coeff in e.items():
        for k, piece in coeff.split_degree(name).items():
            parts.setdefault(k, {})[tree] = piece
    return {k: Element(e.arity, terms) for k, terms in sorted(parts.items())}


# ============================================
# PARSING
# ============================================

def parse_element(text: str, generators: Iterable[Generator], parameters: Optional[Iterable[str]] = None,
                  arity: Optional[int] = None) -> Element:
    """
    Parse an element such as ``b(m(1,2),3) - 1/2*t*m(b(1,3),2)``.

    Args:
        text: Element text
        generators: Declared generators
        parameters: Allowed parameter names (None allows any)
        arity: Required arity (None infers it from the first monomial)

    Returns:
        Canonical element
    """
    stream = TokenStream(text)
    allowed = None if parameters is None else frozenset(parameters)
    element = read_element(stream, {g.name: g for g in generators}, allowed, arity)
    if not stream.at_end():
        token = stream.peek()
        raise stream.error(f"unexpected {describe(token)}", token)
    return element


def read_element(stream: TokenStream, generators: Mapping[str, Generator], allowed: Optional[frozenset],
                 arity: Optional[int]) -> Element:
    state = {'arity': arity}
    start = stream.peek()
    summands: List[Tuple[Poly, Optional[Tree], Token]] = []

    negate = bool(stream.accept('-'))
    if not negate:
        stream.accept('+')
    summands.append(_read_summand(stream, generators, allowed, state, negate))
    while stream.at('+') or stream.at('-'):
        negate = stream.next().text == '-'
        summands.append(_read_summand(stream, generators, allowed, state, negate))

    if len(summands) == 1 and summands[0][1] is None and not summands[0][0]:
        if state['arity'] is None:
            raise stream.error("cannot infer the arity of 0", start, ArityError)
        return Element.zero(state['arity'])

    for coeff, tree, token in summands:
        if tree is None:
            raise stream.error("expected a monomial", token)
    return Element.from_terms(state['arity'], [(tree, coeff) for coeff, tree, _ in summands])


def _read_summand(stream, generators, allowed, state, negate) -> Tuple[Poly, Optional[Tree], Token]:
    start = stream.peek()
    coeff = -ONE if negate else ONE
    tree = None
    while True:
        token = stream.peek()
        if token.kind == 'NAME' and stream.at('(', 1):
            if tree is not None:
                raise stream.error("product of two monomials", token)
            tree = _read_monomial(stream, generators, state)
        else:
            coeff = coeff * read_factor(stream, allowed)
        if not stream.accept('*'):
            break
    return coeff, tree, start


def _read_monomial(stream: TokenStream, generators: Mapping[str, Generator], state: dict) -> Tree:
    start = stream.peek()
    leaf_tokens: List[Token] = []
    tree = _read_tree(stream, generators, leaf_tokens)

    seen = set()
    for token in leaf_tokens:
        label = int(token.text)
        if label in seen:
            raise stream.error(f"repeated leaf label {label}", token, RepeatedLeafError)
        seen.add(label)

    expected = state['arity']
    bound = expected if expected is not None else len(leaf_tokens)
    for token in leaf_tokens:
        label = int(token.text)
        if not 1 <= label <= bound:
            raise stream.error(f"leaf out of range: {label} (arity {bound})", token, LeafRangeError)

    if expected is None:
        state['arity'] = len(leaf_tokens)
    elif len(leaf_tokens) != expected:
        raise stream.error(f"monomial has arity {len(leaf_tokens)}, expected {expected}", start, ArityError)
    return tree


def _read_tree(stream: TokenStream, generators: Mapping[str, Generator], leaf_tokens: List[Token]) -> Tree:
    token = stream.peek()
    if token.kind == 'INT':
        leaf_tokens.append(stream.next())
        return int(token.text)
    name = stream.expect_kind('NAME', "a generator or leaf label")
    if name.text not in generators:
        raise stream.error(f"unknown generator {name.text!r}", name, UnknownGeneratorError)
    stream.expect('(')
    left = _read_tree(stream, generators, leaf_tokens)
    stream.expect(',')
    right = _read_tree(stream, generators, leaf_tokens)
    stream.expect(')')
    return Node(generators[name.text], left, right)
