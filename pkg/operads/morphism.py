"""
Morphism Module
Generator substitution maps between presentations and low-arity isomorphism checks.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from .coeff import Poly, Rational
from .errors import (
    ArityError, InternalConsistencyError, MissingInverseError, SymmetryError, UnknownGeneratorError,
    UnknownPresetError,
)
from .linalg import Membership, express, member
from .presentation import MapDecl, Presentation, Relation
from .presets import B, M, P, preset
from .spanning import free_basis, ideal_span, quotient_dimension
from .term import (
    Element, Node, Symmetry, all_permutations, format_tree, permute_inputs, substitute_generators,
)

logger = logging.getLogger(__name__)


@dataclass
class GenMap:
    """
    Operad map given by the images of the source generators.

    Attributes:
        name: Map name
        source: Source presentation
        target: Target presentation
        images: Source generator name -> arity-2 element over the target generators
    """
    name: str
    source: Presentation
    target: Presentation
    images: Dict[str, Element] = field(default_factory=dict)

    def __post_init__(self):
        target_names = set(self.target.generator_map)
        for gen in self.source.generators:
            if gen.name not in self.images:
                raise UnknownGeneratorError(f"{self.name}: no image for generator {gen.name!r}")
            image = self.images[gen.name]
            if image.arity != 2:
                raise ArityError(f"{self.name}: image of {gen.name} has arity {image.arity}")
            for tree, _ in image.terms():
                if tree.gen.name not in target_names:
                    raise UnknownGeneratorError(f"{self.name}: {tree.gen.name!r} is not a generator of "
                                                f"{self.target.name}")
            swapped = permute_inputs(image, (2, 1))
            if gen.symmetry is Symmetry.SYMMETRIC and swapped != image:
                raise SymmetryError(f"{self.name}: image of symmetric {gen.name} is not symmetric")
            if gen.symmetry is Symmetry.ANTISYMMETRIC and swapped != -image:
                raise SymmetryError(f"{self.name}: image of antisymmetric {gen.name} is not antisymmetric")
        extra = set(self.images) - set(self.source.generator_map)
        if extra:
            raise UnknownGeneratorError(f"{self.name}: {sorted(extra)[0]!r} is not a generator of {self.source.name}")

    @classmethod
    def identity(cls, P: Presentation) -> "GenMap":
        images = {g.name: Element.from_tree(Node(g, 1, 2)) for g in P.generators}
        return cls(f"identity-{P.name}", P, P, images)

    @classmethod
    def from_decl(cls, decl: MapDecl) -> "GenMap":
        return cls(decl.name, decl.source, decl.target, dict(decl.images))

    def apply(self, e: Element) -> Element:
        return apply(self, e)

    def to_dsl(self) -> str:
        lines = [f"map {self.name.replace('-', '_')} : {self.source.name} -> {self.target.name} {{"]
        for gen in self.source.generators:
            lines.append(f"    {gen.name}(1,2) => {self.images[gen.name]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def apply(f: GenMap, e: Element) -> Element:
    """
    Substitute generator images vertex by vertex.

    Args:
        f: Generator map
        e: Element over f.source

    Returns:
        Canonical element over f.target
    """
    return substitute_generators(e, f.images)


def compose_maps(first: GenMap, second: GenMap, name: Optional[str] = None) -> GenMap:
    """second o first."""
    images = {g: apply(second, image) for g, image in first.images.items()}
    return GenMap(name or f"{second.name}*{first.name}", first.source, second.target, images)


def transport(P: Presentation, f: GenMap, name: Optional[str] = None) -> Presentation:
    """Presentation over f's target generators whose relations are the images of P's."""
    relations = [Relation(r.name, apply(f, r.element)) for r in P.relations]
    names = set(f.target.parameters)
    for relation in relations:
        names.update(relation.element.params)
    return Presentation(
        name=name or f"{P.name}_via_{f.name.replace('-', '_')}",
        parameters=tuple(sorted(names)),
        generators=f.target.generators,
        relations=tuple(relations),
        ideal_gens=f.target.ideal_gens,
    )


# ============================================
# CHECKS
# ============================================

@dataclass
class RelationCheck:
    """Membership of one relation image in the target ideal."""
    relation: str
    image: Element
    membership: Membership
    coordinates: List[Tuple[str, Rational]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.membership.is_member


def relation_generators(P: Presentation) -> Tuple[List[str], List[Element]]:
    """All input permutations of P's relations, labeled like ``leibniz(2,1,3)``."""
    labels, elements = [], []
    for relation in P.relations:
        if not relation.element:
            continue
        for sigma in all_permutations(3):
            labels.append(f"{relation.name}({','.join(map(str, sigma))})")
            elements.append(permute_inputs(relation.element, sigma))
    return labels, elements


def coordinates_in_relations(e: Element, P: Presentation) -> Optional[List[Tuple[str, Rational]]]:
    """
    Express an arity-3 element through permuted relations of P.

    Returns:
        Nonzero (label, coefficient) pairs, or None when e is not in the span
    """
    basis = free_basis(P, 3)
    labels, elements = relation_generators(P)
    coords = express(basis.vector(e), [basis.vector(x) for x in elements])
    if coords is None:
        return None
    return [(label, c) for label, c in zip(labels, coords) if c]


def relations_map_into_ideal(f: GenMap) -> List[RelationCheck]:
    """
    Decide for each source relation whether its image lies in the target ideal at arity 3.
    """
    span = ideal_span(f.target, 3).reduce()
    basis = free_basis(f.target, 3)
    checks = []
    for relation in f.source.relations:
        image = apply(f, relation.element)
        result = member(basis.vector(image), span)
        coordinates = []
        if result.is_member and not image.params and not f.target.parameters:
            coordinates = coordinates_in_relations(image, f.target) or []
        checks.append(RelationCheck(relation.name, image, result, coordinates))
        logger.debug(f"{f.name}: {relation.name} -> member={result.is_member}")
    return checks


@dataclass
class IsoReport:
    """Outcome of a low-arity isomorphism check."""
    forward: List[RelationCheck]
    backward: List[RelationCheck]
    source_dims: List[int]
    target_dims: List[int]
    composites: Dict[str, bool]

    @property
    def relations_ok(self) -> bool:
        return all(c.passed for c in self.forward) and all(c.passed for c in self.backward)

    @property
    def composites_ok(self) -> bool:
        return all(self.composites.values())

    @property
    def dims_ok(self) -> bool:
        return self.source_dims == self.target_dims

    @property
    def passed(self) -> bool:
        return self.relations_ok and self.composites_ok and self.dims_ok


def iso_check_low_arity(f: GenMap, inverse: Optional[GenMap], max_arity: int) -> IsoReport:
    """
    Check that f and inverse are mutually inverse operad maps up to arity N.

    Args:
        f: Forward map
        inverse: Backward map
        max_arity: N, at most 5

    Returns:
        IsoReport
    """
    if inverse is None:
        raise MissingInverseError(f"{f.name}: an isomorphism check needs an inverse map")
    if max_arity > 5:
        raise ArityError("isomorphism checks stop at arity 5")

    forward = relations_map_into_ideal(f)
    backward = relations_map_into_ideal(inverse)

    # generators only: the arity-2 ideal component is zero
    composites = {}
    for first, second in ((f, inverse), (inverse, f)):
        for gen in first.source.generators:
            x = Element.from_tree(Node(gen, 1, 2))
            composites[f"{second.name}*{first.name}({gen.name})"] = apply(second, apply(first, x)) == x

    source_dims = [quotient_dimension(f.source, n) for n in range(1, max_arity + 1)]
    target_dims = [quotient_dimension(f.target, n) for n in range(1, max_arity + 1)]
    report = IsoReport(forward, backward, source_dims, target_dims, composites)

    if report.relations_ok and report.composites_ok and not report.dims_ok:
        raise InternalConsistencyError(
            f"{f.name}: maps are mutually inverse but dimensions differ: {source_dims} vs {target_dims}")
    return report


# ============================================
# BUILTIN MAPS
# ============================================

def _p_sym():
    return Element.from_tree(Node(P, 1, 2)) + Element.from_tree(Node(P, 2, 1))


def _p_anti():
    return Element.from_tree(Node(P, 1, 2)) - Element.from_tree(Node(P, 2, 1))


def _m() -> Element:
    return Element.from_tree(Node(M, 1, 2))


def _b() -> Element:
    return Element.from_tree(Node(B, 1, 2))


def livernet_loday_at_one() -> Presentation:
    at_one = preset('livernet-loday').specialize({'t': 1})
    return at_one.with_relations(list(at_one.relations), name="livernet_loday_t1")


def _kokoris_depolarization() -> GenMap:
    half = Poly(1) / 2
    images = {'m': _p_sym() * half, 'b': _p_anti() * half}
    return GenMap('kokoris-depolarization', preset('almost-poisson'), preset('kokoris'), images)


def _kokoris_polarization() -> GenMap:
    return GenMap('kokoris-polarization', preset('kokoris'), preset('almost-poisson'), {'p': _m() + _b()})


def _associative_polarization() -> GenMap:
    half = Poly(1) / 2
    images = {'m': _p_sym() * half, 'b': _p_anti() * half}
    return GenMap('associative-polarization', livernet_loday_at_one(), preset('associative'), images)


def _associative_depolarization() -> GenMap:
    return GenMap('associative-depolarization', preset('associative'), livernet_loday_at_one(),
                  {'p': _m() + _b()})


def _poisson_identity() -> GenMap:
    identity = GenMap.identity(preset('poisson'))
    identity.name = 'poisson-identity'
    return identity


def _star_product() -> GenMap:
    hbar = Poly.param('hbar')
    return GenMap('star-product', preset('kokoris'), preset('almost-poisson'),
                  {'p': _m() + _b() * (hbar / 2)})


def _star_rescaling() -> GenMap:
    hbar = Poly.param('hbar')
    ap = preset('almost-poisson')
    return GenMap('star-rescaling', ap, ap, {'m': _m(), 'b': _b() * (hbar / 2)})


def _alternative_polarization() -> GenMap:
    half = Poly(1) / 2
    return GenMap('alternative-polarization', preset('alternative'), preset('alternative-polarized'),
                  {'p': (_m() + _b()) * half})


def _alternative_depolarization() -> GenMap:
    return GenMap('alternative-depolarization', preset('alternative-polarized'), preset('alternative'),
                  {'m': _p_sym(), 'b': _p_anti()})


BUILTIN_MAPS: Dict[str, Callable[[], GenMap]] = {
    'kokoris-depolarization': _kokoris_depolarization,
    'kokoris-polarization': _kokoris_polarization,
    'associative-polarization': _associative_polarization,
    'associative-depolarization': _associative_depolarization,
    'poisson-identity': _poisson_identity,
    'star-product': _star_product,
    'star-rescaling': _star_rescaling,
    'alternative-polarization': _alternative_polarization,
    'alternative-depolarization': _alternative_depolarization,
}

# Default inverse used by map-check when none is given
INVERSES: Dict[str, str] = {
    'kokoris-depolarization': 'kokoris-polarization',
    'kokoris-polarization': 'kokoris-depolarization',
    'associative-polarization': 'associative-depolarization',
    'associative-depolarization': 'associative-polarization',
    'poisson-identity': 'poisson-identity',
    'alternative-polarization': 'alternative-depolarization',
    'alternative-depolarization': 'alternative-polarization',
}


@lru_cache(maxsize=None)
def builtin_map(name: str) -> GenMap:
    try:
        builder = BUILTIN_MAPS[name]
    except KeyError:
        raise UnknownPresetError(f"unknown map {name!r}; available: {', '.join(sorted(BUILTIN_MAPS))}")
    return builder()


def describe_image(f: GenMap) -> List[str]:
    return [f"{format_tree(Node(g, 1, 2))} => {f.images[g.name]}" for g in f.source.generators]
