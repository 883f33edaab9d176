"""
Graded Module
Filtration of an operad by powers of the ideal generated by designated
generators: per-weight dimensions of the associated graded operad.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Union

from .errors import OperadError
from .linalg import reduce
from .presentation import Presentation, Relation
from .spanning import DEFAULT_SEED, IdealSpan, free_basis, ideal_span
from .term import Element, Generator, bracket_weight

logger = logging.getLogger(__name__)


def weight_split(e: Element, ideal_gens: Iterable[Union[str, Generator]]) -> Dict[int, Element]:
    """
    Split an element by bracket weight.

    Args:
        e: Element
        ideal_gens: Generators of the filtration ideal

    Returns:
        weight -> homogeneous part; the parts sum to e
    """
    ideal_gens = list(ideal_gens)
    parts: Dict[int, dict] = {}
    for tree, coeff in e.items():
        parts.setdefault(bracket_weight(tree, ideal_gens), {})[tree] = coeff
    return {w: Element(e.arity, terms) for w, terms in sorted(parts.items())}


def leading_part(e: Element, ideal_gens) -> Element:
    """Lowest-weight homogeneous part (zero for the zero element)."""
    parts = weight_split(e, ideal_gens)
    return parts[min(parts)] if parts else e


@dataclass
class GradedTable:
    """
    Per-weight dimensions at one arity.

    Attributes:
        arity: n
        free: Free dimension per weight 0..n-1
        leading: Rank of ideal leading parts per weight
        gr: Associated graded dimension per weight
    """
    arity: int
    free: List[int]
    leading: List[int]
    gr: List[int] = field(init=False)

    def __post_init__(self):
        self.gr = [f - l for f, l in zip(self.free, self.leading)]

    @property
    def total(self) -> int:
        return sum(self.gr)

    def as_tuple(self):
        return tuple(self.gr)

    def format(self) -> str:
        lines = [f"arity {self.arity}", f"{'weight':>6} {'free':>6} {'lead':>6} {'gr':>6}"]
        for w, (f, l, g) in enumerate(zip(self.free, self.leading, self.gr)):
            lines.append(f"{w:>6} {f:>6} {l:>6} {g:>6}")
        lines.append(f"{'total':>6} {sum(self.free):>6} {sum(self.leading):>6} {self.total:>6}")
        return "\n".join(lines)

    def records(self) -> List[dict]:
        return [
            {'arity': self.arity, 'weight': w, 'free': f, 'leading': l, 'gr': g}
            for w, (f, l, g) in enumerate(zip(self.free, self.leading, self.gr))
        ]


def gr_dimensions(P: Presentation, n: int, seed: int = DEFAULT_SEED,
                  span: Optional[IdealSpan] = None) -> GradedTable:
    """
    Associated graded dimensions at arity n.

    Columns of the ideal span are ordered by weight, so the pivot of each
    reduced row sits at the lowest weight of the ideal elements it stands for;
    counting pivots per weight counts leading parts with full saturation.

    Args:
        P: Presentation with ideal_gens designated
        n: Arity
        span: Spanning set of the ideal to use instead of ideal_span(P, n, seed)

    Returns:
        GradedTable
    """
    if not P.ideal_gens:
        raise OperadError(f"{P.name} has no ideal generators; graded analysis needs them")
    basis = free_basis(P, n)
    weights = [bracket_weight(tree, P.ideal_gens) for tree in basis.monomials]
    free = [0] * n
    for w in weights:
        free[w] += 1

    leading = [0] * n
    if n >= 3:
        if span is None:
            span = ideal_span(P, n, seed)
        order = sorted(range(len(basis)), key=lambda i: (weights[i], i))
        position = {old: new for new, old in enumerate(order)}
        permuted = [{position[i]: c for i, c in v.items()} for v in span.vectors]
        reduced = reduce(permuted, len(basis))
        for pivot in reduced.pivots:
            leading[weights[order[pivot]]] += 1

    table = GradedTable(n, free, leading)
    logger.debug(f"{P.name}: gr dims at arity {n} = {table.as_tuple()}")
    return table


def leading_presentation(P: Presentation) -> Presentation:
    """Presentation whose relations are the lowest-weight parts of P's relations."""
    relations = [Relation(r.name, leading_part(r.element, P.ideal_gens)) for r in P.relations]
    return P.with_relations(relations, name=f"{P.name}_leading")


@dataclass
class ArityReport:
    """Free basis size, ideal rank, quotient dimension and graded table at one arity."""
    presentation: str
    arity: int
    free_dimension: int
    ideal_rank: int
    table: Optional[GradedTable] = None

    @property
    def quotient_dimension(self) -> int:
        return self.free_dimension - self.ideal_rank


def arity_report(P: Presentation, n: int, seed: int = DEFAULT_SEED) -> ArityReport:
    free = len(free_basis(P, n))
    rank = ideal_span(P, n, seed).rank if n >= 3 else 0
    table = gr_dimensions(P, n, seed) if P.ideal_gens else None
    return ArityReport(P.name, n, free, rank, table)
