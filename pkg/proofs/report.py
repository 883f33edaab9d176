"""
Report Module
VerificationReport: the pass/fail record every named verification returns.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from operads.morphism import IsoReport, coordinates_in_relations, relation_generators
from operads.presentation import Presentation
from operads.term import Element


@dataclass
class Check:
    label: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    """
    Outcome of one verification.

    Attributes:
        name: Verification name
        passed: True when every check passed
        checks: Individual assertions in the order they were made
        constraints: Derived parameter constraints, as text
        tables: Dimension tables used, label -> dims
        certificates: Membership certificates, label -> (generator label, coefficient) pairs
        notes: Informational lines that do not affect the verdict
        counterexample: First failing vector or dimension mismatch
        wall_time: Seconds spent; logged, never part of the text output
    """
    name: str
    passed: bool = True
    checks: List[Check] = field(default_factory=list)
    constraints: List[str] = field(default_factory=list)
    tables: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    certificates: Dict[str, List[Tuple[str, str]]] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    counterexample: Optional[str] = None
    wall_time: float = field(default=0.0, compare=False)

    def check(self, label: str, ok: bool, detail: str = "", counterexample: Optional[str] = None) -> bool:
        """Record an assertion; the first failure keeps its counterexample."""
        ok = bool(ok)
        self.checks.append(Check(label, ok, detail))
        if not ok:
            self.passed = False
            if self.counterexample is None:
                self.counterexample = counterexample or detail or label
        return ok

    def table(self, label: str, dims: Sequence[int]):
        self.tables[label] = tuple(int(d) for d in dims)

    def certificate(self, label: str, coordinates: Sequence[Tuple[str, Any]]):
        self.certificates[label] = [(name, str(c)) for name, c in coordinates]

    def note(self, text: str):
        self.notes.append(text)

    # ------------------------------------------------------------------
    # Output
    # ------------------------------------------------------------------

    def format(self) -> str:
        lines = [f"== {self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for check in self.checks:
            mark = "ok" if check.passed else "FAIL"
            suffix = f": {check.detail}" if check.detail else ""
            lines.append(f"  [{mark}] {check.label}{suffix}")
        if self.constraints:
            lines.append(f"  constraints: {{{', '.join(self.constraints)}}}")
        for label, dims in self.tables.items():
            lines.append(f"  dims {label}: ({', '.join(map(str, dims))})")
        for label, coords in self.certificates.items():
            body = ", ".join(f"{c}*{name}" for name, c in coords) or "0"
            lines.append(f"  certificate {label}: {body}")
        for text in self.notes:
            lines.append(f"  note: {text}")
        if self.counterexample is not None:
            lines.append(f"  counterexample: {self.counterexample}")
        return "\n".join(lines)

    def records(self) -> List[Dict[str, Any]]:
        out: List[Dict[str, Any]] = [{
            'kind': 'verification',
            'name': self.name,
            'passed': self.passed,
            'constraints': list(self.constraints),
            'counterexample': self.counterexample,
        }]
        for check in self.checks:
            out.append({'kind': 'check', 'verification': self.name, 'label': check.label,
                        'passed': check.passed, 'detail': check.detail})
        for label, dims in self.tables.items():
            out.append({'kind': 'dims', 'verification': self.name, 'label': label, 'dims': list(dims)})
        for label, coords in self.certificates.items():
            out.append({'kind': 'certificate', 'verification': self.name, 'label': label,
                        'coordinates': [[name, c] for name, c in coords]})
        for text in self.notes:
            out.append({'kind': 'note', 'verification': self.name, 'text': text})
        return out


def certify(report: VerificationReport, label: str, element: Element, P: Presentation) -> bool:
    """
    Check that a rational arity-3 element is a combination of P's permuted
    relations, re-verify the coordinates and record them on the report.
    """
    coords = coordinates_in_relations(element, P)
    if coords is None:
        return report.check(label, False, "not in the relation span", counterexample=str(element))
    labels, generators = relation_generators(P)
    by_label = dict(zip(labels, generators))
    total = Element.zero(element.arity)
    for name, c in coords:
        total = total + by_label[name] * c
    report.certificate(label, coords)
    return report.check(label, total == element, f"{len(coords)} coordinates")


def record_iso(report: VerificationReport, iso: IsoReport):
    """Copy an IsoReport's relation checks, composites and dimension tables onto a report."""
    for direction, checks in (("forward", iso.forward), ("backward", iso.backward)):
        for check in checks:
            report.check(f"{direction}: {check.relation} maps into the ideal", check.passed, str(check.image),
                         counterexample=str(check.image))
            if check.coordinates:
                report.certificate(f"{direction}:{check.relation}", check.coordinates)
    for label, ok in iso.composites.items():
        report.check(f"composite {label} is the identity", ok)
    report.table("source", iso.source_dims)
    report.table("target", iso.target_dims)
    report.check("dimensions agree", iso.dims_ok,
                 counterexample=f"{iso.source_dims} vs {iso.target_dims}")
