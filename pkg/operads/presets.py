"""
Presets Module
Built-in presentations, written directly in code so that verifications do not
depend on the parser. Each preset also ships as a fixture file under fixtures/.
"""

import logging
from functools import lru_cache
from typing import Callable, Dict, List

from .coeff import Poly
from .errors import UnknownPresetError
from .presentation import Presentation, Relation
from .term import (
    Element, Generator, LinearTrees, Symmetry, combine, operate, substitute_generators, to_element,
)

logger = logging.getLogger(__name__)

# Commutative product, anticommutative bracket, and a product with no symmetry
M = Generator("m", Symmetry.SYMMETRIC)
B = Generator("b", Symmetry.ANTISYMMETRIC)
P = Generator("p", Symmetry.NONE)


def m(x, y) -> LinearTrees:
    return operate(M, x, y)


def b(x, y) -> LinearTrees:
    return operate(B, x, y)


def p(x, y) -> LinearTrees:
    return operate(P, x, y)


def bracket(x, y) -> LinearTrees:
    """Commutator [x, y] = p(x, y) - p(y, x)."""
    return combine((1, p(x, y)), (-1, p(y, x)))


def associator(op: Callable, x, y, z) -> LinearTrees:
    """(x y) z - x (y z) for the operation op."""
    return combine((1, op(op(x, y), z)), (-1, op(x, op(y, z))))


def jacobiator(op: Callable, x, y, z) -> LinearTrees:
    """op(op(x,y),z) + op(op(y,z),x) + op(op(z,x),y)."""
    return combine((1, op(op(x, y), z)), (1, op(op(y, z), x)), (1, op(op(z, x), y)))


# ============================================
# RELATION ELEMENTS
# ============================================

def assoc_m() -> Element:
    return to_element(3, associator(m, 1, 2, 3))


def leibniz() -> Element:
    """{a1 a2, a3} - {a1, a3} a2 - a1 {a2, a3}."""
    return to_element(3, combine((1, b(m(1, 2), 3)), (-1, m(b(1, 3), 2)), (-1, m(1, b(2, 3)))))


def jacobi() -> Element:
    return to_element(3, jacobiator(b, 1, 2, 3))


def assoc_deformation() -> Element:
    """{{a1,a2},a3} - {{a3,a2},a1} + 2{{a1,a3},a2}."""
    return to_element(3, combine((1, b(b(1, 2), 3)), (-1, b(b(3, 2), 1)), (2, b(b(1, 3), 2))))


def leibniz_deformation() -> Element:
    """{{a1,a3},a2} + {{a2,a3},a1}."""
    return to_element(3, combine((1, b(b(1, 3), 2)), (1, b(b(2, 3), 1))))


def assoc_p() -> Element:
    return to_element(3, associator(p, 1, 2, 3))


def kokoris_relation() -> Element:
    """J(a1,a2,a3) - 4(a1,a2,a3) + [[a1,a3],a2] in the single product p."""
    return to_element(3, combine(
        (1, jacobiator(bracket, 1, 2, 3)),
        (-4, associator(p, 1, 2, 3)),
        (1, bracket(bracket(1, 3), 2)),
    ))


def half_sum_images() -> Dict[str, Element]:
    """p -> (m + b)/2."""
    half = Poly(1) / 2
    return {'p': to_element(2, combine((half, m(1, 2)), (half, b(1, 2))))}


# ============================================
# PRESETS
# ============================================

def _free2() -> Presentation:
    return Presentation("free2", (), (M, B), (), ("b",))


def _commutative_assoc() -> Presentation:
    return Presentation("commutative_assoc", (), (M,), (Relation("assoc", assoc_m()),), ())


def _anticommutative() -> Presentation:
    return Presentation("anticommutative", (), (B,), (), ("b",))


def _almost_poisson() -> Presentation:
    relations = (Relation("assoc", assoc_m()), Relation("leibniz", leibniz()))
    return Presentation("almost_poisson", (), (M, B), relations, ("b",))


def _poisson() -> Presentation:
    at_zero = _livernet_loday().specialize({'t': 0})
    return at_zero.with_relations(list(at_zero.relations), name="poisson")


def _livernet_loday() -> Presentation:
    t = Poly.param('t')
    assoc = assoc_m() - to_element(3, b(2, b(1, 3))) * t
    relations = (Relation("assoc", assoc), Relation("leibniz", leibniz()), Relation("jacobi", jacobi()))
    return Presentation("livernet_loday", ("t",), (M, B), relations, ("b",))


def _ap_family() -> Presentation:
    t, v = Poly.param('t'), Poly.param('v')
    relations = (
        Relation("assoc", assoc_m() - assoc_deformation() * t),
        Relation("leibniz", leibniz() - leibniz_deformation() * v),
    )
    return Presentation("ap_family", ("t", "v"), (M, B), relations, ("b",))


def _poisson_family() -> Presentation:
    s, t, u, v = (Poly.param(name) for name in ("s", "t", "u", "v"))
    product_part = to_element(3, combine((1, m(b(1, 2), 3)), (-1, m(b(3, 2), 1))))
    bracket_part = to_element(3, combine((1, b(b(1, 2), 3)), (-1, b(b(3, 2), 1))))
    middle = to_element(3, b(b(1, 3), 2))
    assoc = assoc_m() - product_part * s - bracket_part * t - middle * u
    relations = (
        Relation("leibniz", leibniz() - leibniz_deformation() * v),
        Relation("assoc", assoc),
        Relation("jacobi", jacobi()),
    )
    return Presentation("poisson_family", ("s", "t", "u", "v"), (M, B), relations, ("b",))


def _kokoris() -> Presentation:
    return Presentation("kokoris", (), (P,), (Relation("kokoris", kokoris_relation()),), ("p",))


def _associative() -> Presentation:
    return Presentation("associative", (), (P,), (Relation("assoc", assoc_p()),), ("p",))


def _associative_polarized() -> Presentation:
    polarized = substitute_generators(assoc_p(), half_sum_images()) * 4
    return Presentation("associative_polarized", (), (M, B), (Relation("assoc", polarized),), ("b",))


def _alternative() -> Presentation:
    left = to_element(3, combine((1, associator(p, 1, 2, 3)), (1, associator(p, 2, 1, 3))))
    right = to_element(3, combine((1, associator(p, 1, 2, 3)), (1, associator(p, 1, 3, 2))))
    relations = (Relation("left", left), Relation("right", right))
    return Presentation("alternative", (), (P,), relations, ("p",))


def _alternative_polarized() -> Presentation:
    images = half_sum_images()
    relations = tuple(
        Relation(r.name, substitute_generators(r.element, images) * 4) for r in _alternative().relations
    )
    return Presentation("alternative_polarized", (), (M, B), relations, ("b",))


PRESETS: Dict[str, Callable[[], Presentation]] = {
    'free2': _free2,
    'commutative-assoc': _commutative_assoc,
    'anticommutative': _anticommutative,
    'poisson': _poisson,
    'livernet-loday': _livernet_loday,
    'almost-poisson': _almost_poisson,
    'ap-family': _ap_family,
    'poisson-family': _poisson_family,
    'kokoris': _kokoris,
    'alternative': _alternative,
    'associative-polarized': _associative_polarized,
    'associative': _associative,
    'alternative-polarized': _alternative_polarized,
}


@lru_cache(maxsize=None)
def preset(name: str) -> Presentation:
    """
    Look up a built-in presentation.

    Args:
        name: Preset name, e.g. 'almost-poisson'

    Returns:
        The presentation
    """
    try:
        builder = PRESETS[name]
    except KeyError:
        raise UnknownPresetError(f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}")
    presentation = builder()
    logger.debug(f"Built preset {presentation.summary()}")
    return presentation


def preset_names() -> List[str]:
    return list(PRESETS)
