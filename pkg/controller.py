"""
Controller Module
Central orchestrator that routes one command to its handler.
Every handler returns a result dict; errors never escape as tracebacks.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import config
from operads.coeff import Rational, as_poly, rational
from operads.errors import ArityError, OperadError, UnknownPresetError
from operads.graded import arity_report, gr_dimensions
from operads.linalg import member
from operads.morphism import (
    INVERSES, GenMap, builtin_map, describe_image, iso_check_low_arity, relations_map_into_ideal,
)
from operads.presentation import Document, Presentation, parse_document
from operads.presets import preset
from operads.spanning import free_basis, ideal_span, quotient_dimension
from operads.term import parse_element
from proofs import VERIFICATIONS, VerificationReport, run_verification, selected

logger = logging.getLogger(__name__)


@dataclass
class RunConfig:
    """
    One command line invocation.

    Attributes:
        command: One of config.AVAILABLE_COMMANDS
        preset: Built-in presentation name
        file: Path of a presentation file
        arity: Arity (upper bound for classify and map-check)
        assignments: Parameter name -> rational value
        output: 'text' or 'records'
        optional: Include optional-tier verifications
        allow_big: Permit arity 5
        target: Verification name for verify
        element: Element text for member
        map_name: Map name for map-check
        inverse: Inverse map name for map-check
        jobs: Worker processes for verify all
    """
    command: str
    preset: Optional[str] = None
    file: Optional[str] = None
    arity: int = config.DEFAULT_ARITY
    assignments: Dict[str, Rational] = field(default_factory=dict)
    output: str = "text"
    optional: bool = False
    allow_big: bool = False
    target: Optional[str] = None
    element: Optional[str] = None
    map_name: Optional[str] = None
    inverse: Optional[str] = None
    jobs: int = 1

    def __post_init__(self):
        if self.arity > config.MAX_ARITY:
            raise ArityError(f"arity {self.arity} exceeds the limit {config.MAX_ARITY}")
        if self.arity >= config.BIG_ARITY and not self.allow_big:
            raise ArityError(f"arity {self.arity} needs --allow-big")
        if self.arity < 1:
            raise ArityError("arity must be at least 1")
        self.assignments = {name: rational(value) for name, value in self.assignments.items()}


def parse_assignment(text: str) -> Tuple[str, Rational]:
    """NAME=RATIONAL from --set."""
    name, sep, value = text.partition('=')
    if not sep or not name.strip():
        raise OperadError(f"expected NAME=RATIONAL, got {text!r}")
    return name.strip(), rational(value.strip())


class Controller:
    """
    Main controller that runs workbench commands.
    Loads presentations and maps, routes to a handler, and packages the result.
    """

    def __init__(self, run: RunConfig):
        self.run = run
        self._document: Optional[Document] = None

        self.handlers = {
            'dim': self._handle_dim,
            'grdim': self._handle_grdim,
            'ideal-rank': self._handle_ideal_rank,
            'member': self._handle_member,
            'classify': self._handle_classify,
            'map-check': self._handle_map_check,
            'verify': self._handle_verify,
            'parse': self._handle_parse,
        }

    # ------------------------------------------------------------------
    # Inputs
    # ------------------------------------------------------------------

    @property
    def document(self) -> Document:
        """Lazy-load the presentation file."""
        if self._document is None:
            if not self.run.file:
                raise OperadError("no presentation file given")
            try:
                with open(self.run.file, encoding='utf-8') as handle:
                    source = handle.read()
            except OSError as e:
                raise OperadError(f"cannot read {self.run.file}: {e.strerror}")
            self._document = parse_document(source)
        return self._document

    def presentation(self) -> Presentation:
        """The presentation named by --preset or the single operad of --file, specialized by --set."""
        if self.run.preset:
            P = preset(self.run.preset)
        elif self.run.file:
            operads = self.document.operads
            if len(operads) != 1:
                raise OperadError(f"{self.run.file} declares {len(operads)} operads; expected one")
            P = next(iter(operads.values()))
        else:
            raise OperadError("give --preset NAME or --file PATH")
        return P.specialize(self.run.assignments)

    def generator_map(self, name: str) -> GenMap:
        if self.run.file and name in self.document.maps:
            return GenMap.from_decl(self.document.maps[name])
        return builtin_map(name)

    # ------------------------------------------------------------------
    # Handlers
    # ------------------------------------------------------------------

    def _handle_dim(self) -> Dict[str, Any]:
        P = self.presentation()
        n = self.run.arity
        dim = quotient_dimension(P, n, seed=config.SAMPLE_SEED)
        return {
            'formatted': f"dim = {dim}",
            'records': [{'kind': 'dim', 'presentation': P.name, 'arity': n, 'dim': dim}],
            'passed': True,
        }

    def _handle_grdim(self) -> Dict[str, Any]:
        P = self.presentation()
        table = gr_dimensions(P, self.run.arity, seed=config.SAMPLE_SEED)
        records = [dict(r, kind='grdim', presentation=P.name) for r in table.records()]
        return {'formatted': table.format(), 'records': records, 'passed': True}

    def _handle_ideal_rank(self) -> Dict[str, Any]:
        P = self.presentation()
        n = self.run.arity
        free = len(free_basis(P, n))
        rank = ideal_span(P, n, config.SAMPLE_SEED).rank if n >= 3 else 0
        return {
            'formatted': f"free = {free}\nrank = {rank}",
            'records': [{'kind': 'ideal-rank', 'presentation': P.name, 'arity': n, 'free': free, 'rank': rank}],
            'passed': True,
        }

    def _handle_member(self) -> Dict[str, Any]:
        if not self.run.element:
            raise OperadError("member needs --element EXPR")
        P = self.presentation()
        e = parse_element(self.run.element, P.generators, P.parameters)
        if e.arity < 3:
            is_member = not e
            coordinates = {}
        else:
            basis = free_basis(P, e.arity)
            result = member(basis.vector(e), ideal_span(P, e.arity, config.SAMPLE_SEED).reduce())
            is_member = result.is_member
            coordinates = {str(basis.element({k: as_poly(1)})): str(c) for k, c in sorted(result.coordinates.items())}
        lines = [f"member = {'yes' if is_member else 'no'}"]
        lines.extend(f"  {c} * [{mono}]" for mono, c in coordinates.items())
        return {
            'formatted': "\n".join(lines),
            'records': [{'kind': 'member', 'presentation': P.name, 'element': str(e), 'member': is_member,
                         'coordinates': coordinates}],
            'passed': is_member,
        }

    def _handle_classify(self) -> Dict[str, Any]:
        P = self.presentation()
        lines = [P.summary(), f"{'arity':>5} {'free':>6} {'ideal':>6} {'dim':>6}  gr"]
        records = []
        for n in range(1, self.run.arity + 1):
            report = arity_report(P, n, config.SAMPLE_SEED)
            graded = report.table.as_tuple() if report.table else ()
            lines.append(f"{n:>5} {report.free_dimension:>6} {report.ideal_rank:>6} "
                         f"{report.quotient_dimension:>6}  {graded}")
            records.append({'kind': 'classify', 'presentation': P.name, 'arity': n,
                            'free': report.free_dimension, 'ideal_rank': report.ideal_rank,
                            'dim': report.quotient_dimension, 'gr': list(graded)})
        return {'formatted': "\n".join(lines), 'records': records, 'passed': True}

    def _handle_map_check(self) -> Dict[str, Any]:
        if not self.run.map_name:
            raise OperadError("map-check needs --map NAME")
        f = self.generator_map(self.run.map_name)
        inverse_name = self.run.inverse or INVERSES.get(self.run.map_name)
        lines = [f"map {f.name}: {f.source.name} -> {f.target.name}"]
        lines.extend(f"  {line}" for line in describe_image(f))
        records: List[Dict[str, Any]] = []

        if inverse_name is None:
            checks = relations_map_into_ideal(f)
            for check in checks:
                lines.append(f"  {check.relation}: {'ok' if check.passed else 'FAIL'}")
                records.append({'kind': 'relation', 'map': f.name, 'relation': check.relation,
                                'passed': check.passed})
            passed = all(c.passed for c in checks)
        else:
            inverse = self.generator_map(inverse_name)
            iso = iso_check_low_arity(f, inverse, self.run.arity)
            for direction, checks in (("forward", iso.forward), ("backward", iso.backward)):
                for check in checks:
                    lines.append(f"  {direction} {check.relation}: {'ok' if check.passed else 'FAIL'}")
                    records.append({'kind': 'relation', 'map': f.name, 'direction': direction,
                                    'relation': check.relation, 'passed': check.passed})
            for label, ok in iso.composites.items():
                lines.append(f"  composite {label}: {'ok' if ok else 'FAIL'}")
            lines.append(f"  dims {tuple(iso.source_dims)} vs {tuple(iso.target_dims)}")
            records.append({'kind': 'iso', 'map': f.name, 'inverse': inverse.name,
                            'source_dims': iso.source_dims, 'target_dims': iso.target_dims,
                            'passed': iso.passed})
            passed = iso.passed
        lines.append("PASS" if passed else "FAIL")
        return {'formatted': "\n".join(lines), 'records': records, 'passed': passed}

    def _handle_verify(self) -> Dict[str, Any]:
        target = self.run.target or 'all'
        if target == 'all':
            names = selected(self.run.optional)
        elif target in VERIFICATIONS:
            names = [target]
        else:
            raise UnknownPresetError(f"unknown verification {target!r}; available: {', '.join(VERIFICATIONS)}")

        reports = self._run_reports(names)
        blocks = [r.format() for r in reports]
        records = [record for r in reports for record in r.records()]
        passed = all(r.passed for r in reports)
        if len(reports) > 1:
            count = sum(r.passed for r in reports)
            blocks.append(f"{count}/{len(reports)} verifications passed")
        return {'formatted': "\n\n".join(blocks), 'records': records, 'passed': passed}

    def _run_reports(self, names: List[str]) -> List[VerificationReport]:
        if self.run.jobs > 1 and len(names) > 1:
            # results are collected in submission order
            with ProcessPoolExecutor(max_workers=self.run.jobs) as pool:
                futures = [pool.submit(run_verification, name, self.run.allow_big) for name in names]
                return [future.result() for future in futures]
        return [run_verification(name, self.run.allow_big) for name in names]

    def _handle_parse(self) -> Dict[str, Any]:
        document = self.document
        lines = [P.to_dsl().rstrip() for P in document.operads.values()]
        lines.extend(GenMap.from_decl(decl).to_dsl().rstrip() for decl in document.maps.values())
        records = [{'kind': 'operad', 'name': P.name, 'generators': len(P.generators),
                    'relations': len(P.relations), 'parameters': list(P.parameters)}
                   for P in document.operads.values()]
        records.extend({'kind': 'map', 'name': name} for name in document.maps)
        return {'formatted': "\n\n".join(lines), 'records': records, 'passed': True}

    # ------------------------------------------------------------------
    # Entry point
    # ------------------------------------------------------------------

    def process(self) -> Dict[str, Any]:
        """
        Run the configured command.

        Returns:
            Dictionary with 'formatted', 'records', 'passed' and 'error' keys
        """
        response = {'formatted': '', 'records': [], 'passed': False, 'error': None}
        handler = self.handlers.get(self.run.command)
        if handler is None:
            response['error'] = f"unknown command {self.run.command!r}"
            return response
        try:
            response.update(handler())
        except OperadError as e:
            logger.debug(f"{self.run.command} failed: {e!r}")
            response['error'] = str(e)
        return response
