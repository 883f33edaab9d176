"""
Operads Package
Exact arithmetic for operads presented by binary generators and arity-3 relations
"""

from .coeff import Poly, parse_poly, rational
from .errors import OperadError, ParseError
from .graded import GradedTable, arity_report, gr_dimensions, weight_split
from .linalg import SpanBasis, member, reduce, solve_parameter_constraints
from .morphism import GenMap, apply, builtin_map, iso_check_low_arity, relations_map_into_ideal
from .presentation import Presentation, Relation, parse, parse_document
from .presets import preset, preset_names
from .spanning import free_basis, ideal_span, quotient_dimension
from .term import Element, Generator, Node, Symmetry, compose, parse_element, permute_inputs

__all__ = [
    'Poly', 'parse_poly', 'rational',
    'OperadError', 'ParseError',
    'Element', 'Generator', 'Node', 'Symmetry', 'compose', 'parse_element', 'permute_inputs',
    'Presentation', 'Relation', 'parse', 'parse_document',
    'preset', 'preset_names',
    'free_basis', 'ideal_span', 'quotient_dimension',
    'SpanBasis', 'member', 'reduce', 'solve_parameter_constraints',
    'GradedTable', 'arity_report', 'gr_dimensions', 'weight_split',
    'GenMap', 'apply', 'builtin_map', 'iso_check_low_arity', 'relations_map_into_ideal',
]
