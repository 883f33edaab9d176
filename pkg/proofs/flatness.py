"""
Flatness Module
Dimension checks for one-parameter families: the Livernet-Loday family, its
associative fiber at t = 1, and the classification of Poisson deformations.
"""

import logging
from math import factorial

from operads.graded import gr_dimensions, weight_split
from operads.linalg import reduce, residual, same_span, solve_parameter_constraints
from operads.morphism import builtin_map, iso_check_low_arity
from operads.presets import b, jacobi, preset
from operads.spanning import free_basis, ideal_span, quotient_dimension
from operads.term import cyclic_sum, to_element

import config
from proofs.report import VerificationReport, record_iso

logger = logging.getLogger(__name__)


def ll_flatness(include_big: bool = False) -> VerificationReport:
    """
    Livernet-Loday quotient dimensions are n! generically in t and at every
    check point, and the t = 0 fiber is the Poisson operad.

    Args:
        include_big: Also check arity 5

    Returns:
        VerificationReport
    """
    report = VerificationReport("ll-flatness")
    family = preset('livernet-loday')
    top = config.BIG_ARITY if include_big else config.DEFAULT_ARITY

    dims = [quotient_dimension(family, n) for n in range(1, 3)]
    for n in range(3, top + 1):
        span = ideal_span(family, n)
        size = len(free_basis(family, n))
        generic = reduce(span.vectors, size)
        dims.append(size - generic.rank)
        report.check(f"arity {n}: generic dimension is {n}!", size - generic.rank == factorial(n),
                     str(size - generic.rank))
        for t in config.LL_CHECK_POINTS:
            if generic.certificate.evaluate({'t': t}, strict=False):
                report.check(f"arity {n}, t={t}: certificate does not vanish", True)
                continue
            # the certificate is a superset of the degenerate locus
            specialized = quotient_dimension(family, n, point={'t': t})
            report.check(f"arity {n}, t={t}: specialized dimension", specialized == factorial(n), str(specialized))
            report.note(f"arity {n}: certificate {generic.certificate} vanishes at t={t}; checked by specialization")
    report.table("livernet-loday", dims)
    report.check("arity 2: dimension 2", dims[1] == 2)

    poisson = preset('poisson')
    at_zero = family.specialize({'t': 0})
    report.check("t=0 relations are the Poisson relations",
                 [r.element for r in at_zero.relations] == [r.element for r in poisson.relations])
    poisson_dims = [quotient_dimension(poisson, n) for n in range(1, top + 1)]
    report.table("poisson", poisson_dims)
    report.check("t=0 dimensions agree with Poisson", poisson_dims == dims)
    return report


def ll_assoc_iso(max_arity: int = config.DEFAULT_ARITY) -> VerificationReport:
    """Polarization identifies the t = 1 fiber with the associative operad."""
    report = VerificationReport("ll-assoc-iso")
    forward = builtin_map('associative-polarization')
    backward = builtin_map('associative-depolarization')
    iso = iso_check_low_arity(forward, backward, max_arity)
    record_iso(report, iso)
    report.check("dimensions are n!", iso.source_dims == [factorial(n) for n in range(1, max_arity + 1)],
                 str(iso.source_dims))
    return report


def poisson_classify(points=config.POISSON_SAMPLE_POINTS,
                     v_points=config.POISSON_V_POINTS) -> VerificationReport:
    """
    Deformations of the Poisson operad in the (s, t, u, v) family: the
    Jacobiator must vanish outright, the cyclic condition forces s = 0, a
    nonzero v breaks flatness, and what is left depends on t + u only.
    """
    report = VerificationReport("poisson-classify")
    family = preset('poisson-family')
    poisson = preset('poisson')

    weights = set(weight_split(jacobi(), family.ideal_gens))
    report.check("Jacobiator sits in the top weight only", weights == {2}, str(sorted(weights)))

    basis = free_basis(poisson, 3)
    span = ideal_span(poisson, 3).reduce()
    cyclic = cyclic_sum(family.relation('assoc'))
    constraints = solve_parameter_constraints([basis.vector(cyclic)], span, unknowns=("s", "t", "u"))
    report.check("cyclic sum of the associator relation", str(constraints) == "{s = 0}", str(constraints))
    report.constraints.extend(str(c) for c in constraints.solution)
    middle = to_element(3, b(b(1, 3), 2))
    report.check("cyclic sum of {{a1,a3},a2} vanishes modulo Jacobi",
                 not residual(basis.vector(cyclic_sum(middle)), span))

    # (t, u) pairs with equal sums give equal relation spans
    for v in (0, 1):
        spans = [ideal_span(family.specialize({'s': 0, 't': t, 'u': 3 - t, 'v': v}), 3).reduce() for t in (0, 1, 3)]
        report.check(f"v={v}: span depends on t+u only", all(same_span(spans[0], other) for other in spans[1:]))

    for t, u in points:
        point = {'s': 0, 't': t, 'u': u, 'v': 0}
        dims = [quotient_dimension(family, n, point=point) for n in (3, 4)]
        report.table(f"t={t},u={u}", dims)
        report.check(f"t={t},u={u},v=0: flat", dims == [6, 24], str(dims))

    bad = gr_dimensions(family.specialize({'s': 1, 't': 0, 'u': 0, 'v': 0}), 3).as_tuple()
    report.table("s=1 graded", bad)
    report.check("s=1 breaks the Poisson graded table", bad != (1, 3, 2), str(bad))

    for v in v_points:
        point = {'s': 0, 't': 0, 'u': 0, 'v': v}
        dims = [quotient_dimension(family, n, point=point) for n in (3, 4)]
        report.table(f"v={v}", dims)
        report.check(f"v={v},s=t=u=0: not flat", dims != [6, 24], str(dims))
    return report


if __name__ == "__main__":
    print(ll_flatness().format())
