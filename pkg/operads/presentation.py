"""
Presentation Module
Operad presentations (binary generators plus arity-3 relations) and the
text format they are written in:

    operad almost_poisson {
        gen m : 2 symmetric;
        gen b : 2 antisymmetric;
        ideal b;
        rel assoc : m(m(1,2),3) - m(1,m(2,3)) = 0;
    }

A document may hold several operad blocks and ``map`` blocks.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from .coeff import Scalar
from .errors import (
    ArityError, OperadError, ParseError, UndeclaredParameterError, UnknownGeneratorError, UnknownPresetError,
)
from .lexer import TokenStream, describe
from .term import Element, Generator, Symmetry, format_element, read_element

logger = logging.getLogger(__name__)

RELATION_ARITY = 3


@dataclass(frozen=True)
class Relation:
    name: str
    element: Element

    def __str__(self) -> str:
        return f"{self.name} : {format_element(self.element)} = 0"


@dataclass(frozen=True)
class Presentation:
    """
    Generators, parameters and arity-3 relations of an operad.

    Attributes:
        name: Presentation name
        parameters: Declared parameter names
        generators: Binary generators, names unique
        relations: Named arity-3 relation elements (canonical)
        ideal_gens: Names of the generators spanning the filtration ideal
    """
    name: str
    parameters: Tuple[str, ...] = ()
    generators: Tuple[Generator, ...] = ()
    relations: Tuple[Relation, ...] = ()
    ideal_gens: Tuple[str, ...] = ()

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise OperadError(f"{self.name}: generator names must be unique")
        for gen in self.generators:
            if gen.arity != 2:
                raise ArityError(f"{self.name}: generator {gen.name} has arity {gen.arity}, only 2 is supported")
        for name in self.ideal_gens:
            if name not in names:
                raise UnknownGeneratorError(f"{self.name}: ideal generator {name!r} is not declared")

        declared = set(self.parameters)
        for relation in self.relations:
            if relation.element.arity != RELATION_ARITY:
                raise ArityError(f"{self.name}: relation {relation.name} has arity {relation.element.arity}")
            for tree, _ in relation.element.terms():
                for vertex_name in _generator_names(tree):
                    if vertex_name not in names:
                        raise UnknownGeneratorError(f"{self.name}: relation {relation.name} uses {vertex_name!r}")
            extra = set(relation.element.params) - declared
            if extra:
                raise UndeclaredParameterError(
                    f"{self.name}: relation {relation.name} uses undeclared parameter {sorted(extra)[0]!r}")

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    @property
    def generator_map(self) -> Dict[str, Generator]:
        return {g.name: g for g in self.generators}

    def generator(self, name: str) -> Generator:
        try:
            return self.generator_map[name]
        except KeyError:
            raise UnknownGeneratorError(f"{self.name} has no generator {name!r}")

    @property
    def elements(self) -> List[Element]:
        """Nonzero relation elements in declaration order."""
        return [r.element for r in self.relations if r.element]

    @property
    def ideal_generators(self) -> Tuple[Generator, ...]:
        return tuple(self.generator(name) for name in self.ideal_gens)

    def relation(self, name: str) -> Element:
        for relation in self.relations:
            if relation.name == name:
                return relation.element
        raise OperadError(f"{self.name} has no relation {name!r}")

    # ------------------------------------------------------------------
    # Derived presentations
    # ------------------------------------------------------------------

    def specialize(self, assignment: Mapping[str, Scalar]) -> "Presentation":
        """
        Substitute values for some parameters.

        Args:
            assignment: Parameter name -> rational value

        Returns:
            Presentation over the remaining parameters
        """
        unknown = sorted(set(assignment) - set(self.parameters))
        if unknown:
            raise UndeclaredParameterError(f"{self.name} has no parameter {unknown[0]!r}")
        if not assignment:
            return self
        relations = tuple(Relation(r.name, r.element.evaluate(assignment)) for r in self.relations)
        return Presentation(
            name=self.name,
            parameters=tuple(p for p in self.parameters if p not in assignment),
            generators=self.generators,
            relations=relations,
            ideal_gens=self.ideal_gens,
        )

    def with_relations(self, relations: List[Relation], name: Optional[str] = None,
                       parameters: Optional[Tuple[str, ...]] = None) -> "Presentation":
        return Presentation(
            name=name or self.name,
            parameters=self.parameters if parameters is None else parameters,
            generators=self.generators,
            relations=tuple(relations),
            ideal_gens=self.ideal_gens,
        )

    # ------------------------------------------------------------------
    # Text form
    # ------------------------------------------------------------------

    def to_dsl(self) -> str:
        """Source text that parses back to this presentation."""
        lines = [f"operad {self.name} {{"]
        if self.parameters:
            lines.append(f"    param {', '.join(self.parameters)};")
        for gen in self.generators:
            lines.append(f"    gen {gen.name} : {gen.arity} {gen.symmetry.value};")
        if self.ideal_gens:
            lines.append(f"    ideal {', '.join(self.ideal_gens)};")
        for relation in self.relations:
            lines.append(f"    rel {relation};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        params = f", parameters {', '.join(self.parameters)}" if self.parameters else ""
        return (f"{self.name}: {len(self.generators)} generators, "
                f"{len(self.relations)} relations{params}")


def _generator_names(tree) -> List[str]:
    if isinstance(tree, int):
        return []
    return [tree.gen.name] + _generator_names(tree.left) + _generator_names(tree.right)


# ============================================
# DOCUMENTS
# ============================================

@dataclass(frozen=True)
class MapDecl:
    """A parsed ``map`` block: images of source generators over the target."""
    name: str
    source: Presentation
    target: Presentation
    images: Dict[str, Element] = field(hash=False)


@dataclass
class Document:
    operads: Dict[str, Presentation] = field(default_factory=dict)
    maps: Dict[str, MapDecl] = field(default_factory=dict)


def parse(source: str) -> Presentation:
    """
    Parse a source holding exactly one operad block.

    Args:
        source: DSL text

    Returns:
        Validated presentation with canonical relations
    """
    document = parse_document(source)
    if len(document.operads) != 1:
        raise ParseError(f"expected exactly one operad block, found {len(document.operads)}")
    return next(iter(document.operads.values()))


def parse_document(source: str) -> Document:
    """Parse every operad and map block of a source text."""
    stream = TokenStream(source)
    document = Document()
    while not stream.at_end():
        token = stream.peek()
        if stream.at('operad'):
            presentation = _read_operad(stream)
            if presentation.name in document.operads:
                raise stream.error(f"operad {presentation.name!r} declared twice", token)
            document.operads[presentation.name] = presentation
        elif stream.at('map'):
            decl = _read_map(stream, document)
            document.maps[decl.name] = decl
        else:
            raise stream.error(f"expected 'operad' or 'map', found {describe(token)}", token)
    logger.debug(f"Parsed {len(document.operads)} operads and {len(document.maps)} maps")
    return document


def _read_operad(stream: TokenStream) -> Presentation:
    stream.expect('operad')
    name = stream.expect_kind('NAME', "an operad name").text
    stream.expect('{')

    parameters: List[str] = []
    generators: Dict[str, Generator] = {}
    ideal: List[str] = []
    relations: List[Relation] = []

    while not stream.accept('}'):
        token = stream.peek()
        if stream.accept('param'):
            for item in _read_names(stream):
                if item.text in parameters:
                    raise stream.error(f"parameter {item.text!r} declared twice", item)
                parameters.append(item.text)
        elif stream.accept('gen'):
            gen_name = stream.expect_kind('NAME', "a generator name")
            stream.expect(':')
            arity = stream.expect_kind('INT', "the generator arity")
            if arity.text != '2':
                raise stream.error(f"generator arity must be 2, found {arity.text}", arity, ArityError)
            symmetry = stream.expect_kind('NAME', "a symmetry")
            try:
                sym = Symmetry(symmetry.text)
            except ValueError:
                raise stream.error(f"unknown symmetry {symmetry.text!r}", symmetry)
            if gen_name.text in generators:
                raise stream.error(f"generator {gen_name.text!r} declared twice", gen_name)
            generators[gen_name.text] = Generator(gen_name.text, sym)
            stream.expect(';')
        elif stream.accept('ideal'):
            for item in _read_names(stream):
                if item.text not in generators:
                    raise stream.error(f"unknown generator {item.text!r}", item, UnknownGeneratorError)
                ideal.append(item.text)
        elif stream.accept('rel'):
            rel_name = stream.expect_kind('NAME', "a relation name")
            stream.expect(':')
            allowed = frozenset(parameters)
            lhs = read_element(stream, generators, allowed, RELATION_ARITY)
            stream.expect('=')
            rhs = read_element(stream, generators, allowed, RELATION_ARITY)
            stream.expect(';')
            relations.append(Relation(rel_name.text, lhs - rhs))
        elif token.kind == 'EOF':
            raise stream.error("unterminated operad block", token)
        else:
            raise stream.error(f"expected 'param', 'gen', 'ideal' or 'rel', found {describe(token)}", token)

    return Presentation(
        name=name,
        parameters=tuple(parameters),
        generators=tuple(generators.values()),
        relations=tuple(relations),
        ideal_gens=tuple(ideal),
    )


def _read_names(stream: TokenStream):
    names = [stream.expect_kind('NAME', "a name")]
    while stream.accept(','):
        names.append(stream.expect_kind('NAME', "a name"))
    stream.expect(';')
    return names


def _resolve(stream: TokenStream, document: Document) -> Presentation:
    token = stream.expect_kind('NAME', "an operad name")
    if token.text in document.operads:
        return document.operads[token.text]
    from .presets import preset
    try:
        return preset(token.text.replace('_', '-'))
    except UnknownPresetError:
        raise stream.error(f"unknown operad {token.text!r}", token)


def _read_map(stream: TokenStream, document: Document) -> MapDecl:
    stream.expect('map')
    name = stream.expect_kind('NAME', "a map name").text
    stream.expect(':')
    source = _resolve(stream, document)
    stream.expect('->')
    target = _resolve(stream, document)
    stream.expect('{')

    images: Dict[str, Element] = {}
    source_gens = source.generator_map
    while not stream.accept('}'):
        gen_token = stream.expect_kind('NAME', "a source generator")
        if gen_token.text not in source_gens:
            raise stream.error(f"unknown generator {gen_token.text!r}", gen_token, UnknownGeneratorError)
        stream.expect('(')
        first = stream.expect_kind('INT', "leaf 1")
        stream.expect(',')
        second = stream.expect_kind('INT', "leaf 2")
        stream.expect(')')
        if (first.text, second.text) != ('1', '2'):
            raise stream.error("a map image must be written for gen(1,2)", first)
        stream.expect('=>')
        images[gen_token.text] = read_element(stream, target.generator_map, None, 2)
        stream.expect(';')

    return MapDecl(name, source, target, images)
