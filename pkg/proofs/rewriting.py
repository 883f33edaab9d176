"""
Rewriting Module
Directed rewriting of tree monomials by relations, used to replay the
"expand two ways and compare" arguments modulo a power of the bracket ideal.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from operads.coeff import Poly
from operads.errors import InternalConsistencyError, OperadError
from operads.term import Element, Node, Symmetry, Tree, bracket_weight, format_tree, substitute

import config

logger = logging.getLogger(__name__)

LEFT = "left"
RIGHT = "right"

Match = Tuple[int, Dict[int, Tree]]


@dataclass(frozen=True)
class RewriteRule:
    """
    head -> rhs, where head is a two-vertex tree g(h(1,2),3).

    Attributes:
        name: Relation name
        head: Canonical head tree
        rhs: Arity-3 element equal to head modulo the relation
    """
    name: str
    head: Node
    rhs: Element

    @classmethod
    def from_relation(cls, name: str, relation: Element, head: Node) -> "RewriteRule":
        """
        Solve a relation for one of its monomials.

        Args:
            name: Rule name
            relation: Arity-3 relation element
            head: Tree of shape g(h(1,2),3); its coefficient must be a nonzero constant

        Returns:
            RewriteRule
        """
        if isinstance(head, int) or isinstance(head.left, int) or head.right != 3:
            raise OperadError(f"rule head must have shape g(h(1,2),3), got {format_tree(head)}")
        coeff = relation.coefficient(head)
        if not coeff or not coeff.is_constant():
            raise OperadError(f"{name}: head {format_tree(head)} needs a nonzero constant coefficient")
        rhs = Element.from_tree(head) - relation * (Poly(1) / coeff.to_rational())
        return cls(name, head, rhs)

    def match(self, tree: Tree, view: str = LEFT) -> Optional[Match]:
        """
        Try the rule at the root of tree.

        Both orientations g(h(x,y),z) and g(z,h(x,y)) are tried; the swapped
        one picks up the sign of the outer generator. view decides which child
        plays h(x,y) when both could.

        Returns:
            (sign, leaf mapping) or None
        """
        if isinstance(tree, int) or tree.gen != self.head.gen:
            return None
        inner = self.head.left.gen
        direct = None
        if not isinstance(tree.left, int) and tree.left.gen == inner:
            direct = (1, {1: tree.left.left, 2: tree.left.right, 3: tree.right})
        swapped = None
        if tree.gen.symmetry is not Symmetry.NONE and not isinstance(tree.right, int) and tree.right.gen == inner:
            sign = -1 if tree.gen.symmetry is Symmetry.ANTISYMMETRIC else 1
            swapped = (sign, {1: tree.right.left, 2: tree.right.right, 3: tree.left})
        if view == RIGHT:
            return swapped or direct
        return direct or swapped

    def apply(self, match: Match) -> List[Tuple[Tree, Poly]]:
        sign, mapping = match
        return [(substitute(tree, mapping), coeff * sign) for tree, coeff in self.rhs.terms()]


class RewriteEngine:
    """
    Rewrites outermost-leftmost until no rule applies. Terms whose weight
    reaches the cutoff are moved to a remainder bucket and left alone.
    """

    def __init__(self, rules: Sequence[RewriteRule], ideal_gens: Iterable[str],
                 cutoff: int = config.FILTRATION_CUTOFF, step_limit: int = config.REWRITE_STEP_LIMIT):
        self.rules = list(rules)
        self.ideal_gens = tuple(ideal_gens)
        self.cutoff = cutoff
        self.step_limit = step_limit

    def _rewrite_at(self, tree: Tree, view: str) -> Optional[List[Tuple[Tree, Poly]]]:
        if isinstance(tree, int):
            return None
        for rule in self.rules:
            match = rule.match(tree, view)
            if match is not None:
                return rule.apply(match)
        left = self._rewrite_at(tree.left, view)
        if left is not None:
            return [(Node(tree.gen, t, tree.right), c) for t, c in left]
        right = self._rewrite_at(tree.right, view)
        if right is not None:
            return [(Node(tree.gen, tree.left, t), c) for t, c in right]
        return None

    def normalize(self, e: Element, view: str = LEFT) -> Tuple[Element, Element, int]:
        """
        Rewrite every term of e to normal form.

        Args:
            e: Element to expand
            view: Orientation preference when a vertex matches both ways

        Returns:
            (normal part, remainder of weight >= cutoff, number of rewrite steps)
        """
        normal: List[Tuple[Tree, Poly]] = []
        remainder: List[Tuple[Tree, Poly]] = []
        pending = deque(e.terms())
        steps = 0
        while pending:
            tree, coeff = pending.popleft()
            if bracket_weight(tree, self.ideal_gens) >= self.cutoff:
                remainder.append((tree, coeff))
                continue
            rewritten = self._rewrite_at(tree, view)
            if rewritten is None:
                normal.append((tree, coeff))
                continue
            steps += 1
            if steps > self.step_limit:
                raise InternalConsistencyError(f"rewriting did not terminate within {self.step_limit} steps")
            # canonical form keeps later matches orientation-independent
            pending.extend(Element.from_terms(e.arity, [(t, c * coeff) for t, c in rewritten]).terms())

        normal_part = Element.from_terms(e.arity, normal)
        rest = Element.from_terms(e.arity, remainder)
        logger.debug(f"normalize({view}): {steps} steps, {len(normal_part)} normal terms, "
                     f"{len(rest)} in remainder")
        return normal_part, rest, steps

    def expand(self, e: Element, view: str = LEFT) -> Element:
        """Normal part only."""
        return self.normalize(e, view)[0]
