"""
Coefficient Module
Exact coefficients: sympy rationals and polynomials over QQ in named parameters.
Polynomials live in cached graded-lex rings keyed by the parameters that actually
occur; each Poly also carries its declared parameters, the union over the
operands it was built from, so a cancelled term still accepts its names.
"""

import logging
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from sympy import QQ
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import GeneratorsError
from sympy.polys.rings import PolyElement, PolyRing

from .errors import CoefficientError, DomainMismatchError, UndeclaredParameterError
from .lexer import TokenStream, describe

logger = logging.getLogger(__name__)

# Ground field element type (gmpy2.mpq when gmpy2 is installed)
Rational = QQ.dtype

Scalar = Union[int, Rational, "Poly"]


def rational(value) -> Rational:
    """
    Convert an int, rational, Fraction, constant Poly or literal string to a QQ element.

    Args:
        value: Value to convert

    Returns:
        Reduced rational number
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise CoefficientError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Poly):
        return value.to_rational()
    if isinstance(value, str):
        return parse_poly(value, parameters=()).to_rational()
    try:
        return QQ(int(value.numerator), int(value.denominator))
    except (AttributeError, TypeError, ValueError):
        raise CoefficientError(f"not a rational number: {value!r}")


@lru_cache(maxsize=None)
def poly_ring(names: Tuple[str, ...]) -> PolyRing:
    """Polynomial ring over QQ in the given (sorted) parameter names."""
    return PolyRing(",".join(names), QQ, grlex)


def _ring_names(ring: PolyRing) -> Tuple[str, ...]:
    return tuple(str(s) for s in ring.symbols)


@lru_cache(maxsize=None)
def _ring_name_set(ring: PolyRing) -> frozenset:
    return frozenset(_ring_names(ring))


def _trim(p: PolyElement) -> PolyElement:
    """Drop ring generators that do not occur in p."""
    ring = p.ring
    if not ring.ngens:
        return p
    used = [any(monom[i] for monom in p) for i in range(ring.ngens)]
    if all(used):
        return p
    names = tuple(name for name, keep in zip(_ring_names(ring), used) if keep)
    return p.set_ring(poly_ring(names))


def _unify(a: PolyElement, b: PolyElement) -> Tuple[PolyElement, PolyElement]:
    if a.ring is b.ring or a.ring == b.ring:
        return a, b
    names = tuple(sorted(set(_ring_names(a.ring)) | set(_ring_names(b.ring))))
    ring = poly_ring(names)
    return a.set_ring(ring), b.set_ring(ring)


class Poly:
    """
    Immutable polynomial over QQ in named parameters.

    Constants are polynomials in no parameters, so Poly(3) == 3 holds and
    every Element coefficient has the same type.
    """

    __slots__ = ('_p', '_declared')

    def __init__(self, value: Union[int, Rational, str, "Poly", PolyElement] = 0,
                 declared: Iterable[str] = ()):
        if isinstance(value, PolyElement):
            self._p = _trim(value)
            found = _ring_name_set(value.ring)
        elif isinstance(value, Poly):
            self._p = value._p
            found = value._declared
        elif isinstance(value, str):
            parsed = parse_poly(value)
            self._p = parsed._p
            found = parsed._declared
        else:
            self._p = poly_ring(()).ground_new(rational(value))
            found = frozenset()
        self._declared = found.union(declared) if declared else found

    def _derived(self, p: PolyElement, *operands: Scalar) -> "Poly":
        """Result of an operation: declared names are the union over the operands."""
        declared = set(self._declared)
        for operand in operands:
            if isinstance(operand, Poly):
                declared.update(operand._declared)
        return Poly(p, declared)

    @classmethod
    def param(cls, name: str) -> "Poly":
        """The polynomial consisting of a single parameter."""
        return cls(poly_ring((name,)).gens[0])

    # ------------------------------------------------------------------
    # Introspection
    # ------------------------------------------------------------------

    @property
    def names(self) -> Tuple[str, ...]:
        """Parameters occurring in this polynomial, sorted."""
        return _ring_names(self._p.ring)

    @property
    def parameters(self) -> Tuple[str, ...]:
        """Declared parameters, sorted; a superset of names."""
        return tuple(sorted(self._declared))

    @property
    def raw(self) -> PolyElement:
        return self._p

    def is_zero(self) -> bool:
        return not self._p

    def is_constant(self) -> bool:
        return self._p.is_ground

    def to_rational(self) -> Rational:
        if not self._p.is_ground:
            raise CoefficientError(f"{self} is not a constant")
        return self._p.get(self._p.ring.zero_monom, QQ.zero)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._p:
            return -1
        return max(sum(monom) for monom in self._p)

    def degree(self, name: str) -> int:
        """Degree in one parameter (0 when the parameter does not occur)."""
        names = self.names
        if name not in names:
            return 0 if self._p else -1
        i = names.index(name)
        return max(monom[i] for monom in self._p)

    def monomials(self) -> List[Tuple[Dict[str, int], Rational]]:
        """Terms as (exponent map, coefficient) in descending graded-lex order."""
        names = self.names
        return [
            ({name: e for name, e in zip(names, monom) if e}, coeff)
            for monom, coeff in self._p.terms(order=grlex)
        ]

    def split_degree(self, name: str) -> Dict[int, "Poly"]:
        """
        Split by the exponent of one parameter.

        Returns:
            Map k -> coefficient of name^k (a Poly free of name)
        """
        names = self.names
        if name not in names:
            return {0: self} if self._p else {}
        i = names.index(name)
        ring = self._p.ring
        parts: Dict[int, dict] = {}
        for monom, coeff in self._p.items():
            stripped = monom[:i] + (0,) + monom[i + 1:]
            parts.setdefault(monom[i], {})[stripped] = coeff
        return {k: Poly(ring.from_dict(terms), self._declared - {name}) for k, terms in sorted(parts.items())}

    def leading_coefficient(self) -> Rational:
        if not self._p:
            return QQ.zero
        return self._p.terms(order=grlex)[0][1]

    def lift(self, ring: PolyRing) -> PolyElement:
        """This polynomial as an element of a ring containing its parameters."""
        try:
            return self._p.set_ring(ring)
        except GeneratorsError:
            raise DomainMismatchError(f"{self} does not live in {ring}")

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: Scalar) -> "Poly":
        a, b = _unify(self._p, _coerce(other))
        return self._derived(a + b, other)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "Poly":
        a, b = _unify(self._p, _coerce(other))
        return self._derived(a - b, other)

    def __rsub__(self, other: Scalar) -> "Poly":
        a, b = _unify(_coerce(other), self._p)
        return self._derived(a - b, other)

    def __mul__(self, other: Scalar) -> "Poly":
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self._derived(self._p.mul_ground(rational(other)))
        a, b = _unify(self._p, _coerce(other))
        return self._derived(a * b, other)

    __rmul__ = __mul__

    def __truediv__(self, other: Union[int, Rational]) -> "Poly":
        divisor = rational(other)
        if not divisor:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self._derived(self._p.mul_ground(QQ.one / divisor))

    def __neg__(self) -> "Poly":
        return self._derived(-self._p)

    def __pow__(self, exponent: int) -> "Poly":
        return self._derived(self._p ** exponent)

    def __bool__(self) -> bool:
        return bool(self._p)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            a, b = _unify(self._p, other._p)
            return a == b
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self._p == rational(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._p)

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, Scalar], strict: bool = True) -> "Poly":
        """
        Substitute rational values for parameters.

        Args:
            assignment: Parameter name -> rational value
            strict: Reject names outside the declared parameters

        Returns:
            Polynomial in the remaining parameters
        """
        names = self.names
        unknown = sorted(set(assignment) - self._declared)
        if strict and unknown:
            raise CoefficientError(f"unknown parameter {unknown[0]!r} for {self}")

        ring = self._p.ring
        pairs = [(ring.gens[names.index(name)], rational(value))
                 for name, value in sorted(assignment.items()) if name in names]
        remaining = self._declared.difference(assignment)
        if not pairs:
            return Poly(self._p, remaining) if remaining != self._declared else self

        result = self._p.evaluate(pairs)
        if isinstance(result, PolyElement):
            rest = tuple(name for name in names if name not in assignment)
            return Poly(result.set_ring(poly_ring(rest)), remaining)
        return Poly(result, remaining)

    # ------------------------------------------------------------------
    # Text form
    # ------------------------------------------------------------------

    def __str__(self) -> str:
        if not self._p:
            return "0"
        names = self.names
        pieces = []
        for monom, coeff in self._p.terms(order=grlex):
            body = "*".join(name if e == 1 else f"{name}^{e}" for name, e in zip(names, monom) if e)
            negative = coeff < 0
            size = -coeff if negative else coeff
            if not body:
                text = str(size)
            elif size == 1:
                text = body
            else:
                text = f"{size}*{body}"
            pieces.append((negative, text))

        negative, text = pieces[0]
        out = ("-" if negative else "") + text
        for negative, text in pieces[1:]:
            out += (" - " if negative else " + ") + text
        return out

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


def _coerce(value: Scalar) -> PolyElement:
    if isinstance(value, Poly):
        return value._p
    return poly_ring(()).ground_new(rational(value))


def as_poly(value: Scalar) -> Poly:
    """Coerce an int, rational or Poly to a Poly."""
    return value if isinstance(value, Poly) else Poly(value)


ZERO = Poly(0)
ONE = Poly(1)


# ============================================
# OPERATIONS
# ============================================

def poly_arith(a: Scalar, b: Scalar, op: str) -> Poly:
    """
    Exact add, sub or mul of two polynomials after unifying their parameters.

    Args:
        a: Left operand
        b: Right operand
        op: One of 'add', 'sub', 'mul'

    Returns:
        Normalized polynomial
    """
    a, b = as_poly(a), as_poly(b)
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    raise CoefficientError(f"unknown operation {op!r}")


def evaluate(p: Scalar, assignment: Mapping[str, Scalar]) -> Union[Rational, Poly]:
    """
    Specialize parameters of p.

    Returns a Rational when no parameter remains, otherwise a Poly in the rest.
    Names outside p's declared parameters are rejected.
    """
    result = as_poly(p).evaluate(assignment, strict=True)
    if result.is_constant():
        return result.to_rational()
    return result


# ============================================
# PARSING
# ============================================

def parse_poly(text: str, parameters: Optional[Iterable[str]] = None) -> Poly:
    """
    Parse the textual polynomial form, e.g. ``2*t*v^2 - 1/2``.

    Args:
        text: Polynomial literal
        parameters: Allowed parameter names (None allows any)

    Returns:
        Parsed polynomial
    """
    stream = TokenStream(text)
    allowed = None if parameters is None else frozenset(parameters)
    result = read_sum(stream, allowed)
    if not stream.at_end():
        token = stream.peek()
        raise stream.error(f"unexpected {describe(token)}", token)
    return result


def read_sum(stream: TokenStream, allowed: Optional[frozenset]) -> Poly:
    negate = False
    if stream.accept('-'):
        negate = True
    else:
        stream.accept('+')
    total = read_product(stream, allowed)
    if negate:
        total = -total
    while stream.at('+') or stream.at('-'):
        sign = stream.next().text
        term = read_product(stream, allowed)
        total = total + term if sign == '+' else total - term
    return total


def read_product(stream: TokenStream, allowed: Optional[frozenset]) -> Poly:
    value = read_factor(stream, allowed)
    while stream.accept('*'):
        value = value * read_factor(stream, allowed)
    return value


def read_factor(stream: TokenStream, allowed: Optional[frozenset]) -> Poly:
    """Atom with an optional ``^ INT`` power."""
    value = read_atom(stream, allowed)
    if stream.accept('^'):
        exponent = stream.expect_kind('INT', "an integer exponent")
        value = value ** int(exponent.text)
    return value


def read_atom(stream: TokenStream, allowed: Optional[frozenset]) -> Poly:
    token = stream.peek()
    if token.kind == 'INT':
        stream.next()
        numerator = int(token.text)
        if stream.accept('/'):
            denominator_token = stream.expect_kind('INT', "an integer denominator")
            denominator = int(denominator_token.text)
            if denominator == 0:
                raise stream.error("zero denominator", denominator_token)
            return Poly(QQ(numerator, denominator))
        return Poly(numerator)
    if token.kind == 'NAME':
        stream.next()
        if allowed is not None and token.text not in allowed:
            raise stream.error(f"undeclared parameter {token.text!r}", token, UndeclaredParameterError)
        return Poly.param(token.text)
    if stream.accept('('):
        value = read_sum(stream, allowed)
        stream.expect(')')
        return value
    raise stream.error(f"expected a coefficient, found {describe(token)}", token)
