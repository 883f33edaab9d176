"""
Linear Algebra Module
Exact rank, span, membership and coordinates for sparse vectors whose entries
are rationals or polynomials in named parameters, plus linear constraint
solving on parameters.

Rational spans are kept in reduced row echelon form (sympy's sparse
``sdm_irref``); parameter spans use fraction-free triangular elimination and
report the generic rank together with a degeneracy certificate.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices.sdm import sdm_irref

from .coeff import ONE, ZERO, Poly, Rational, as_poly, poly_ring
from .errors import DimensionMismatchError, DomainMismatchError, NonlinearParameterError

logger = logging.getLogger(__name__)

Vector = Dict[int, Poly]

RATIONAL = 'rational'
POLYNOMIAL = 'polynomial'


# ============================================
# HELPERS
# ============================================

def vector_parameters(vectors: Iterable[Vector]) -> Tuple[str, ...]:
    names = set()
    for vector in vectors:
        for entry in vector.values():
            names.update(entry.names)
    return tuple(sorted(names))


def _check_dimension(vectors: Iterable[Vector], dimension: int):
    for vector in vectors:
        for col in vector:
            if not 0 <= col < dimension:
                raise DimensionMismatchError(f"coordinate {col} outside ambient dimension {dimension}")


def _to_rational(vector: Vector) -> Dict[int, Rational]:
    return {col: entry.to_rational() for col, entry in vector.items() if entry}


def evaluate_vector(vector: Vector, point: Mapping[str, Rational]) -> Vector:
    out = {}
    for col, entry in vector.items():
        value = entry.evaluate(point, strict=False)
        if value:
            out[col] = value
    return out


def random_point(names: Sequence[str], rng: random.Random, low: int = -97, high: int = 97) -> Dict[str, Rational]:
    """Seeded rational sample point with nonzero coordinates."""
    point = {}
    for name in names:
        value = 0
        while value == 0:
            value = rng.randint(low, high)
        point[name] = QQ(value, rng.randint(1, 11))
    return point


# ============================================
# INCREMENTAL ECHELON FORMS
# ============================================

class _EchelonQQ:
    """
    Incremental Gauss-Jordan form over QQ.
    Every row has a 1 at its pivot and zeros at all other pivot columns.
    """

    def __init__(self):
        self.rows: Dict[int, Dict[int, Rational]] = {}
        self.where: Dict[int, set] = {}   # column -> pivots of rows with a nonzero there

    def reduce(self, vector: Dict[int, Rational]) -> Dict[int, Rational]:
        v = dict(vector)
        for col in [c for c in v if c in self.rows]:
            factor = v.get(col)
            if not factor:
                continue
            for k, x in self.rows[col].items():
                value = v.get(k, QQ.zero) - factor * x
                if value:
                    v[k] = value
                else:
                    v.pop(k, None)
        return v

    def insert(self, vector: Dict[int, Rational]) -> bool:
        v = self.reduce(vector)
        if not v:
            return False
        pivot = min(v)
        scale = QQ.one / v[pivot]
        row = {k: x * scale for k, x in v.items()}

        # clear the new pivot column from the existing rows
        for other in list(self.where.get(pivot, ())):
            target = self.rows[other]
            factor = target[pivot]
            for k, x in row.items():
                value = target.get(k, QQ.zero) - factor * x
                if value:
                    if k not in target:
                        self.where.setdefault(k, set()).add(other)
                    target[k] = value
                else:
                    target.pop(k, None)
                    self.where[k].discard(other)

        self.rows[pivot] = row
        for k in row:
            self.where.setdefault(k, set()).add(pivot)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def _poly_key(p) -> tuple:
    return (not p.is_ground, max(sum(m) for m in p.monoms()), len(p), tuple(sorted(p.terms())))


class _EchelonPoly:
    """
    Fraction-free triangular form over QQ[params].
    Each row's pivot is its leftmost entry; rows are primitive with monic pivots.
    """

    def __init__(self, ring):
        self.ring = ring
        self.rows: Dict[int, Dict[int, object]] = {}
        self.locus: set = set()

    def _normalize(self, v: Dict[int, object]) -> Dict[int, object]:
        content = None
        for entry in v.values():
            content = entry if content is None else content.gcd(entry)
            if content.is_ground:
                break
        if content is not None and not content.is_ground:
            self.locus.add(content.monic())
            v = {k: x.exquo(content) for k, x in v.items()}
        lead = v[min(v)].LC
        return {k: x.quo_ground(lead) for k, x in v.items()}

    def _eliminate(self, v, row, col):
        a, c = row[col], v[col]
        if a.is_ground:
            factor = c.quo_ground(a.LC)
            out = dict(v)
            for k, x in row.items():
                value = out.get(k, self.ring.zero) - factor * x
                if value:
                    out[k] = value
                else:
                    out.pop(k, None)
            return out, self.ring.one, factor
        g = a.gcd(c)
        af, cf = a.exquo(g), c.exquo(g)
        out = {k: af * x for k, x in v.items()}
        for k, x in row.items():
            value = out.get(k, self.ring.zero) - cf * x
            if value:
                out[k] = value
            else:
                out.pop(k, None)
        return out, af, cf

    def insert(self, vector: Dict[int, object]) -> bool:
        v = {k: x for k, x in vector.items() if x}
        before = len(self.rows)
        while v:
            col = min(v)
            row = self.rows.get(col)
            if row is None:
                v = self._normalize(v)
                self.rows[col] = v
                if not v[col].is_ground:
                    self.locus.add(v[col].monic())
                break
            if _poly_key(v[col]) < _poly_key(row[col]):
                # keep the simpler pivot, continue with the displaced row
                v = self._normalize(v)
                if not v[col].is_ground:
                    self.locus.add(v[col].monic())
                self.rows[col], v = v, row
                continue
            v, _, _ = self._eliminate(v, row, col)
            if v:
                v = self._normalize(v)
        return len(self.rows) > before

    def member(self, vector: Dict[int, object]):
        """
        Fraction-free membership with bookkeeping scale * vector = Σ coords[c] * rows[c].

        Returns:
            (is_member, coords, scale) with coords keyed by pivot column
        """
        v = {k: x for k, x in vector.items() if x}
        scale = self.ring.one
        coords: Dict[int, object] = {}
        while v:
            col = min(v)
            row = self.rows.get(col)
            if row is None:
                return False, {}, scale
            v, af, cf = self._eliminate(v, row, col)
            scale = scale * af
            coords = {k: x * af for k, x in coords.items()}
            coords[col] = coords.get(col, self.ring.zero) + cf
        return True, {k: x for k, x in coords.items() if x}, scale

    @property
    def rank(self) -> int:
        return len(self.rows)

    def certificate(self):
        product = self.ring.one
        for factor in sorted(self.locus, key=_poly_key):
            product = product * factor
        return product


# ============================================
# SPANS
# ============================================

@dataclass
class SpanBasis:
    """
    Row-reduced span of sparse vectors.

    Attributes:
        dimension: Ambient dimension
        rows: Reduced rows keyed by pivot column (entries as Poly)
        domain: 'rational' or 'polynomial'
        parameters: Parameter names of a polynomial span
        certificate: Product of the nonconstant pivots; the generic rank holds off its zero set
    """
    dimension: int
    rows: Dict[int, Vector]
    domain: str = RATIONAL
    parameters: Tuple[str, ...] = ()
    certificate: Poly = ONE
    _engine: object = field(default=None, repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def vectors(self) -> List[Vector]:
        return [self.rows[p] for p in self.pivots]


@dataclass
class Membership:
    """
    Outcome of a membership test.

    scale * v = Σ coordinates[p] * rows[p]; scale is 1 over the rationals.
    """
    is_member: bool
    coordinates: Dict[int, Poly] = field(default_factory=dict)
    scale: Poly = ONE
    certificate: Poly = ONE

    def __bool__(self) -> bool:
        return self.is_member


def reduce(vectors: Sequence[Vector], dimension: int, domain: Optional[str] = None) -> SpanBasis:
    """
    Row-reduce a list of sparse vectors.

    Args:
        vectors: Sparse vectors (column -> Poly)
        dimension: Ambient dimension
        domain: Force 'rational' or 'polynomial'; inferred when None

    Returns:
        SpanBasis with rank, pivots and (over parameters) a degeneracy certificate
    """
    _check_dimension(vectors, dimension)
    parameters = vector_parameters(vectors)
    if domain is None:
        domain = POLYNOMIAL if parameters else RATIONAL
    if domain == RATIONAL and parameters:
        raise DomainMismatchError(f"rational span requested for vectors in {', '.join(parameters)}")

    if domain == RATIONAL:
        matrix = {i: row for i, row in enumerate(_to_rational(v) for v in vectors) if row}
        if not matrix:
            return SpanBasis(dimension, {})
        rref, pivots, _ = sdm_irref(matrix)
        rows = {}
        for row in rref.values():
            pivot = min(row)
            rows[pivot] = {k: Poly(x) for k, x in row.items()}
        logger.debug(f"Rational reduce: {len(vectors)} vectors, rank {len(rows)}")
        return SpanBasis(dimension, rows)

    ring = poly_ring(parameters)
    engine = _EchelonPoly(ring)
    for vector in vectors:
        engine.insert({k: x.lift(ring) for k, x in vector.items() if x})
    rows = {p: {k: Poly(x) for k, x in row.items()} for p, row in engine.rows.items()}
    certificate = Poly(engine.certificate())
    logger.debug(f"Polynomial reduce over {parameters}: {len(vectors)} vectors, generic rank {len(rows)}")
    return SpanBasis(dimension, rows, POLYNOMIAL, parameters, certificate, engine)


def rank(vectors: Sequence[Vector], dimension: int) -> int:
    return reduce(vectors, dimension).rank


def rank_at(vectors: Sequence[Vector], dimension: int, point: Mapping[str, Rational]) -> int:
    """Rank after specializing every parameter."""
    return reduce([evaluate_vector(v, point) for v in vectors], dimension, RATIONAL).rank


def residual(vector: Vector, basis: SpanBasis) -> Vector:
    """
    Remainder of a vector modulo a rational span.
    Entries may carry parameters; they are reduced coefficient-wise.
    """
    if basis.domain != RATIONAL:
        raise DomainMismatchError("residual needs a rational span")
    _check_dimension([vector], basis.dimension)
    out = {k: x for k, x in vector.items() if x}
    for pivot in [p for p in out if p in basis.rows]:
        factor = out.get(pivot)
        if not factor:
            continue
        for k, x in basis.rows[pivot].items():
            value = out.get(k, ZERO) - factor * x
            if value:
                out[k] = value
            else:
                out.pop(k, None)
    return out


def member(vector: Vector, basis: SpanBasis) -> Membership:
    """
    Decide whether a vector lies in a span.

    Args:
        vector: Sparse vector
        basis: Span from reduce()

    Returns:
        Membership with coordinates (by pivot column) when the answer is yes
    """
    _check_dimension([vector], basis.dimension)
    if basis.domain == RATIONAL:
        coordinates = {p: vector[p] for p in basis.rows if p in vector and vector[p]}
        is_member = not residual(vector, basis)
        return Membership(is_member, coordinates if is_member else {}, ONE, ONE)

    extra = set(vector_parameters([vector])) - set(basis.parameters)
    if extra:
        raise DomainMismatchError(f"vector parameters {sorted(extra)} are not in the span's {basis.parameters}")
    engine = basis._engine
    if engine is None:
        engine = _EchelonPoly(poly_ring(basis.parameters))
        for row in basis.vectors():
            engine.insert({k: x.lift(engine.ring) for k, x in row.items()})
    is_member, coords, scale = engine.member({k: x.lift(engine.ring) for k, x in vector.items() if x})
    return Membership(
        is_member,
        {k: Poly(x) for k, x in coords.items()} if is_member else {},
        Poly(scale),
        basis.certificate,
    )


def check_coordinates(vector: Vector, basis: SpanBasis, result: Membership) -> bool:
    """Re-verify a membership certificate: scale * v == Σ coords * rows."""
    total: Vector = {}
    for pivot, coeff in result.coordinates.items():
        for k, x in basis.rows[pivot].items():
            total[k] = total.get(k, ZERO) + coeff * x
    scaled = {k: x * result.scale for k, x in vector.items()}
    keys = set(total) | set(scaled)
    return all(total.get(k, ZERO) == scaled.get(k, ZERO) for k in keys)


def same_span(first: SpanBasis, second: SpanBasis) -> bool:
    """Span equality of two rational spans (reduced forms are unique)."""
    if first.domain != RATIONAL or second.domain != RATIONAL:
        raise DomainMismatchError("span equality is decided over the rationals")
    return first.dimension == second.dimension and first.rows == second.rows


# ============================================
# SELECTION AND COORDINATES
# ============================================

def independent_subset(vectors: Sequence[Vector], point: Optional[Mapping[str, Rational]] = None,
                       limit: Optional[int] = None) -> List[int]:
    """
    Indices of a maximal independent subset, chosen greedily in input order.

    Vectors with parameters are compared after specializing at point.
    """
    engine = _EchelonQQ()
    chosen = []
    for i, vector in enumerate(vectors):
        if point is not None:
            vector = evaluate_vector(vector, point)
        if engine.insert(_to_rational(vector)):
            chosen.append(i)
            if limit is not None and len(chosen) >= limit:
                break
    return chosen


class IncrementalSpan:
    """Greedy selection of independent vectors one at a time."""

    def __init__(self, point: Optional[Mapping[str, Rational]] = None):
        self.point = point
        self._engine = _EchelonQQ()

    def add(self, vector: Vector) -> bool:
        if self.point is not None:
            vector = evaluate_vector(vector, self.point)
        return self._engine.insert(_to_rational(vector))

    @property
    def rank(self) -> int:
        return self._engine.rank


def express(vector: Vector, generators: Sequence[Vector]) -> Optional[List[Rational]]:
    """
    Coordinates of a rational vector with respect to a generating list.

    Args:
        vector: Target vector
        generators: Named generating vectors (rational)

    Returns:
        x with vector = Σ x[i] * generators[i] (free coordinates set to 0), or None
    """
    k = len(generators)
    columns: Dict[int, Dict[int, Rational]] = {}
    for j, gen in enumerate(generators):
        for row, x in _to_rational(gen).items():
            columns.setdefault(row, {})[j] = x
    for row, x in _to_rational(vector).items():
        columns.setdefault(row, {})[k] = x
    matrix = {i: columns[row] for i, row in enumerate(sorted(columns))}
    coords = [QQ.zero] * k
    if not matrix:
        return coords
    rref, pivots, _ = sdm_irref(matrix)
    if k in pivots:
        return None
    for row in rref.values():
        pivot = min(row)
        coords[pivot] = row.get(k, QQ.zero)
    return coords


# ============================================
# PARAMETER CONSTRAINTS
# ============================================

@dataclass(frozen=True)
class Constraint:
    """Linear condition ``name = value`` (value free of name)."""
    name: str
    value: Poly

    def __str__(self) -> str:
        return f"{self.name} = {self.value}"


@dataclass
class ConstraintSet:
    """
    Conditions on parameters equivalent to a set of membership statements.

    Attributes:
        equations: Each residual condition on its own, normalized and sorted
        solution: Reduced system, one condition per pivot parameter
        satisfiable: False when the conditions contradict each other
    """
    equations: List[Constraint] = field(default_factory=list)
    solution: List[Constraint] = field(default_factory=list)
    satisfiable: bool = True

    def __str__(self) -> str:
        items = self.solution if self.satisfiable else self.equations
        text = "{" + ", ".join(str(c) for c in items) + "}"
        return text if self.satisfiable else text + " (unsatisfiable)"

    def as_dict(self) -> Dict[str, str]:
        return {c.name: str(c.value) for c in self.solution}

    def holds_at(self, point: Mapping[str, Rational]) -> bool:
        if not self.satisfiable:
            return False
        for c in self.solution:
            if as_poly(c.value).evaluate(point, strict=False) != point[c.name]:
                return False
        return True


def _affine(entry: Poly, unknowns: Sequence[str]) -> Dict[str, Rational]:
    """Coefficients of an affine polynomial; key '' is the constant."""
    out: Dict[str, Rational] = {}
    for exponents, coeff in entry.monomials():
        degree = sum(exponents.values())
        if degree > 1 or any(name not in unknowns for name in exponents):
            raise NonlinearParameterError(f"{entry} is not linear in {', '.join(unknowns)}")
        key = next(iter(exponents)) if exponents else ''
        out[key] = coeff
    return out


def _solve_affine(rows: List[Dict[str, Rational]], unknowns: Sequence[str]) -> Tuple[List[Constraint], bool]:
    order = sorted(unknowns, reverse=True)
    constant = len(order)
    matrix = {}
    for i, row in enumerate(rows):
        entries = {order.index(name) if name else constant: x for name, x in row.items() if x}
        if entries:
            matrix[i] = entries
    if not matrix:
        return [], True
    rref, pivots, _ = sdm_irref(matrix)
    if constant in pivots:
        return [], False
    constraints = []
    for row in rref.values():
        pivot = min(row)
        value = Poly(-row.get(constant, QQ.zero))
        for col, x in row.items():
            if col not in (pivot, constant):
                value = value - Poly.param(order[col]) * x
        constraints.append(Constraint(order[pivot], value))
    return sorted(constraints, key=lambda c: c.name), True


def solve_parameter_constraints(vectors: Sequence[Vector], basis: SpanBasis,
                                unknowns: Optional[Sequence[str]] = None) -> ConstraintSet:
    """
    Linear conditions on parameters under which every vector lies in a rational span.

    Args:
        vectors: Vectors whose entries are affine in the unknowns
        basis: Rational span to reduce modulo
        unknowns: Parameters to solve for (default: all occurring)

    Returns:
        ConstraintSet; unsatisfiable when the conditions contradict
    """
    remainders = [residual(v, basis) for v in vectors]
    if unknowns is None:
        unknowns = vector_parameters(remainders)
    unknowns = tuple(sorted(unknowns))

    rows = []
    equations = set()
    for remainder in remainders:
        for entry in remainder.values():
            row = _affine(entry, unknowns)
            rows.append(row)
            single, ok = _solve_affine([row], unknowns)
            equations.update(single)

    solution, satisfiable = _solve_affine(rows, unknowns)
    result = ConstraintSet(
        equations=sorted(equations, key=lambda c: (c.name, str(c.value))),
        solution=solution,
        satisfiable=satisfiable,
    )
    logger.debug(f"Parameter constraints {result}")
    return result
