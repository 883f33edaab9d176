"""
Alternative Module
The alternative operad filtered by its commutator: the almost Poisson
identities hold, but the bracket also satisfies the Malcev identity, so the
associated graded is strictly smaller than almost Poisson.
"""

import logging

from operads.coeff import Poly
from operads.graded import gr_dimensions
from operads.linalg import member
from operads.presets import assoc_m, b, jacobi, jacobiator, leibniz, preset
from operads.spanning import free_basis, ideal_span, quotient_dimension
from operads.term import combine, multilinearize, to_element

import config
from proofs.report import VerificationReport, certify

logger = logging.getLogger(__name__)

ALMOST_POISSON_TOTAL_4 = 37


def malcev(x, x2, y, z):
    """J(x, y, {x2, z}) - {J(x, y, z), x2} for the bracket b."""
    return combine((1, jacobiator(b, x, y, b(x2, z))), (-1, b(jacobiator(b, x, y, z), x2)))


def malcev_element():
    """Malcev identity with its repeated variable polarized over inputs 1 and 4."""
    return to_element(4, multilinearize(malcev, 1, 4, 2, 3))


def alt_warning() -> VerificationReport:
    report = VerificationReport("alt-warning")
    alternative = preset('alternative-polarized')

    associativity = assoc_m() + jacobi() * (Poly(1) / 3) + to_element(3, b(b(1, 3), 2))
    certify(report, "associator identity", associativity, alternative)
    certify(report, "Leibniz identity", leibniz(), alternative)

    basis = free_basis(alternative, 4)
    span = ideal_span(alternative, 4).reduce()
    identity = malcev_element()
    report.check("Malcev identity is nonzero in the free operad", bool(identity))
    report.check("Malcev identity lies in the ideal", member(basis.vector(identity), span).is_member)

    dims = [quotient_dimension(alternative, n) for n in range(1, config.DEFAULT_ARITY + 1)]
    report.table("alternative", dims)
    table = gr_dimensions(alternative, 4)
    report.table("graded arity 4", table.as_tuple())
    report.check("graded total differs from almost Poisson", table.total != ALMOST_POISSON_TOTAL_4, str(table.total))
    return report


if __name__ == "__main__":
    print(alt_warning().format())
