"""
Kokoris Module
Depolarization of almost Poisson algebras into Kokoris algebras, the trivial
star product, and identities implied by the Kokoris axiom.
"""

import logging

from operads.coeff import Poly
from operads.linalg import member, reduce, same_span
from operads.morphism import GenMap, apply, builtin_map, iso_check_low_arity, relations_map_into_ideal
from operads.presets import M, assoc_m, assoc_p, associator, bracket, kokoris_relation, p, preset
from operads.spanning import ap_dimension_oracle, free_basis, ideal_span
from operads.term import Element, Node, all_permutations, combine, degree_split, permute_inputs, to_element

import config
from proofs.report import VerificationReport, certify, record_iso

logger = logging.getLogger(__name__)


def kokoris_iso(max_arity: int = config.DEFAULT_ARITY) -> VerificationReport:
    """Almost Poisson and Kokoris operads agree through arity max_arity."""
    report = VerificationReport("kokoris-iso")
    iso = iso_check_low_arity(builtin_map('kokoris-depolarization'), builtin_map('kokoris-polarization'), max_arity)
    record_iso(report, iso)
    oracle = [ap_dimension_oracle(n) for n in range(1, max_arity + 1)]
    report.check("almost Poisson dimensions match the partition count", iso.source_dims == oracle, str(oracle))
    return report


def star_trivial() -> VerificationReport:
    """
    m + (hbar/2) b satisfies the Kokoris identity modulo the almost Poisson
    relations, identically in hbar.
    """
    report = VerificationReport("star-trivial")
    ap = preset('almost-poisson')
    basis = free_basis(ap, 3)
    span = ideal_span(ap, 3).reduce()

    image = apply(builtin_map('star-product'), kokoris_relation())
    report.check("Kokoris identity of the star product lies in the ideal",
                 member(basis.vector(image), span).is_member, counterexample=str(image))

    for degree, part in degree_split(image, 'hbar').items():
        homogeneous = part.evaluate({'hbar': 1})
        report.check(f"hbar^{degree} part lies in the ideal", member(basis.vector(part), span).is_member,
                     counterexample=str(part))
        certify(report, f"hbar^{degree} coordinates", homogeneous, ap)

    classical = image.evaluate({'hbar': 0})
    report.check("hbar=0 part is -4 times associativity of m", classical == assoc_m() * -4, str(classical))

    for check in relations_map_into_ideal(builtin_map('star-rescaling')):
        report.check(f"rescaling b keeps {check.relation}", check.passed, counterexample=str(check.image))
    return report


def flexible() -> VerificationReport:
    """
    The flexible law follows from the Kokoris axiom; associativity and right
    alternativity do not.
    """
    report = VerificationReport("flexible")
    kokoris = preset('kokoris')
    basis = free_basis(kokoris, 3)
    span = ideal_span(kokoris, 3).reduce()

    flex = assoc_p() + permute_inputs(assoc_p(), (3, 2, 1))
    report.check("flexible law lies in the ideal", member(basis.vector(flex), span).is_member)
    certify(report, "flexible coordinates", flex, kokoris)

    report.check("associator alone is not in the ideal", not member(basis.vector(assoc_p()), span).is_member)
    right = assoc_p() + permute_inputs(assoc_p(), (1, 3, 2))
    report.check("right alternative law is not in the ideal", not member(basis.vector(right), span).is_member)
    return report


def primed_associator() -> Element:
    """(a1,a2,a3) minus the associator of {a,b}' = (ab - ba)/2."""
    half = Poly(1) / 2

    def primed(x, y):
        return combine((half, bracket(x, y)))

    return to_element(3, combine((1, associator(p, 1, 2, 3)),
                                 (-1, associator(primed, 1, 2, 3))))


def kokoris_remark() -> VerificationReport:
    """Equal associators of the product and of the halved commutator span the Kokoris relations."""
    report = VerificationReport("kokoris-remark")
    kokoris = preset('kokoris')
    basis = free_basis(kokoris, 3)
    remark = primed_associator()

    primed_span = reduce([basis.vector(permute_inputs(remark, s)) for s in all_permutations(3)], len(basis))
    kokoris_span = reduce([basis.vector(permute_inputs(kokoris_relation(), s)) for s in all_permutations(3)],
                          len(basis))
    report.table("ranks", (primed_span.rank, kokoris_span.rank))
    report.check("spans are equal", same_span(primed_span, kokoris_span))
    report.check("ranks are 5", primed_span.rank == kokoris_span.rank == 5)
    if remark * -4 == kokoris_relation():
        report.note("the Kokoris relation is exactly -4 times the primed form")

    commutative = preset('commutative-assoc')
    collapse = GenMap('commutative-collapse', kokoris, commutative, {'p': Element.from_tree(Node(M, 1, 2))})
    report.check("commutative collapse of the primed form is associativity",
                 apply(collapse, remark) == assoc_m())
    report.check("commutative collapse of the Kokoris relation is -4 associativity",
                 apply(collapse, kokoris_relation()) == assoc_m() * -4)
    return report


if __name__ == "__main__":
    print(star_trivial().format())
