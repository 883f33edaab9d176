"""
Tests for the named verifications and their building blocks.
"""

import pytest

from operads.presets import jacobi, kokoris_relation, leibniz

from proofs import OPTIONAL, VERIFICATIONS, VerificationReport, certify, run_verification, selected
from proofs.alternative import malcev_element
from proofs.kokoris import primed_associator
from proofs.rigidity import AP_GRADED_ARITY_4, ansatz_dimensions, ap_rigidity_dims, step_one, step_two


# ----------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------

def test_report_keeps_first_counterexample():
    report = VerificationReport("demo")
    assert report.check("first", True)
    assert not report.check("second", False, "bad", counterexample="x")
    report.check("third", False, "worse")
    assert not report.passed
    assert report.counterexample == "x"


def test_report_text_form():
    report = VerificationReport("demo")
    report.check("holds", True, "detail")
    report.constraints.append("v = 0")
    report.table("dims", (2, 7))
    report.note("informational")
    assert report.format().splitlines() == [
        "== demo: PASS",
        "  [ok] holds: detail",
        "  constraints: {v = 0}",
        "  dims dims: (2, 7)",
        "  note: informational",
    ]


def test_report_records():
    report = VerificationReport("demo")
    report.check("holds", True)
    report.table("dims", (2, 7))
    kinds = [record['kind'] for record in report.records()]
    assert kinds == ['verification', 'check', 'dims']
    assert report.records()[2]['dims'] == [2, 7]


def test_certify_records_coordinates(ap):
    report = VerificationReport("demo")
    assert certify(report, "leibniz", leibniz(), ap)
    assert report.certificates["leibniz"] == [("leibniz(1,2,3)", "1")]
    assert not certify(report, "jacobi", jacobi(), ap)


# ----------------------------------------------------------------------
# rigidity building blocks
# ----------------------------------------------------------------------

def test_step_one_forces_v():
    one = step_one()
    factor = one['factor']
    assert factor is not None and factor
    assert factor.evaluate({'v': 0}, strict=False) == 0
    assert str(one['constraints']) == "{v = 0}"


def test_step_two_forces_t():
    two = step_two()
    assert two['expressible']
    assert two['coefficient']
    assert two['coefficient'].evaluate({'t': 0}, strict=False) == 0
    assert str(two['constraints']) == "{t = 0}"


def test_ansatz_dimensions():
    assert ansatz_dimensions(2, 1, 3, -1, cyclic=True) == (2, 1)
    assert ansatz_dimensions(2, 1, 2, 1, cyclic=False)[0] == 1


def test_graded_dims_at_sample_points():
    report = ap_rigidity_dims(points=((0, 0), (0, 1), (1, 0)))
    assert report.passed
    assert report.tables["t=0,v=0"] == AP_GRADED_ARITY_4
    assert report.tables["t=0,v=1"][2] < 15
    assert report.tables["t=1,v=0"][3] < 15


def test_symbolic_constraints_match_sampled_dims():
    symbolic = run_verification('ap-rigidity-symbolic')
    assert {"v = 0", "t = 0"} <= set(symbolic.constraints)
    dims = ap_rigidity_dims()
    for label, table in dims.tables.items():
        t, v = (int(part.split('=')[1]) for part in label.split(','))
        assert (table == AP_GRADED_ARITY_4) == (t == 0 and v == 0)


# ----------------------------------------------------------------------
# identities
# ----------------------------------------------------------------------

def test_primed_form_is_a_multiple_of_kokoris():
    assert primed_associator() * -4 == kokoris_relation()


def test_malcev_identity_is_multilinear():
    e = malcev_element()
    assert e.arity == 4
    assert e


# ----------------------------------------------------------------------
# verifications
# ----------------------------------------------------------------------

def test_registry_order():
    assert list(VERIFICATIONS)[0] == 'll-flatness'
    assert selected() == [name for name in VERIFICATIONS if name not in OPTIONAL]
    assert selected(True) == list(VERIFICATIONS)


@pytest.mark.parametrize("name", list(VERIFICATIONS))
def test_verification_passes(name):
    report = run_verification(name)
    assert report.passed, report.format()
    assert report.format().startswith(f"== {name}: PASS")
    assert report.wall_time > 0


def test_poisson_classification_constraint():
    report = run_verification('poisson-classify')
    assert report.constraints == ["s = 0"]
    assert report.tables["t=0,u=0"] == (6, 24)


def test_nonzero_v_breaks_poisson_flatness():
    report = run_verification('poisson-classify')
    tables = [report.tables[f"v={v}"] for v in (1, -1, 2)]
    assert tables[0][1] == 16
    # rescaling b by 1/v identifies every nonzero v at s = t = u = 0
    assert tables[0] == tables[1] == tables[2]
    breaking = [c for c in report.checks if c.label.endswith("not flat")]
    assert len(breaking) == 3 and all(c.passed for c in breaking)


def test_alternative_dimensions():
    report = run_verification('alt-warning')
    assert report.tables["alternative"] == (1, 2, 7, 32)


def test_kokoris_dims_match_oracle():
    report = run_verification('kokoris-iso')
    assert report.tables["source"] == report.tables["target"] == (1, 2, 7, 37)


@pytest.mark.slow
def test_livernet_loday_arity_five():
    report = run_verification('ll-flatness', allow_big=True)
    assert report.passed
    assert report.tables["livernet-loday"] == (1, 2, 6, 24, 120)
