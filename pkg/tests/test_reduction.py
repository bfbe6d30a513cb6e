"""Reduction verification, equivalence kinds, the decide-via-reduction check."""

import pytest

from enumlab import assemble
from enumlab.errors import (
    EvaluationError,
    InconsistentBranchesError,
    NondeterminismError,
)
from enumlab.listing import DETERMINISTIC, NONDETERMINISTIC
from enumlab.order import increasing_listing
from enumlab.reduction import (
    equivalence,
    turing_consistency,
    verify_reduction,
    violations_to_csv,
)

import asmlib

PLUS_ONE = assemble(asmlib.PLUS_ONE, name="plus_one")
MINUS_ONE = assemble(asmlib.MINUS_ONE, name="minus_one")
IDENTITY = assemble(asmlib.IDENTITY, name="identity")
EVEN = assemble(asmlib.EVEN_DECIDER, name="even_decider")
ODD = assemble(asmlib.ODD_DECIDER, name="odd_decider")


def test_even_to_odd_verifies():
    report = verify_reduction(PLUS_ONE, EVEN, ODD, (0, 99))
    assert report.verified
    assert report.violations == ()
    assert report.f_profile.steps == (3,) * 100
    assert report.fit is not None and abs(report.fit.exponent_estimate) < 0.01


def test_identity_is_not_a_parity_reduction():
    report = verify_reduction(IDENTITY, EVEN, ODD, (0, 9))
    assert not report.verified
    assert len(report.violations) == 10
    assert report.violations[0] == (0, 1, 0)
    assert report.violations[1] == (1, 0, 1)


def test_reflexivity_via_identity():
    report = verify_reduction(IDENTITY, EVEN, EVEN, (0, 49))
    assert report.verified


def test_odd_to_even_breaks_at_zero():
    # truncated decrement maps 0 to 0, which is even but not odd
    report = verify_reduction(MINUS_ONE, ODD, EVEN, (0, 99))
    assert report.violations == ((0, 0, 1),)
    assert verify_reduction(MINUS_ONE, ODD, EVEN, (1, 99)).verified


def test_short_domain_has_no_fit():
    report = verify_reduction(PLUS_ONE, EVEN, ODD, (0, 9))
    assert report.fit is None


def test_nondet_mode_is_conservative_for_det_f():
    det = verify_reduction(PLUS_ONE, EVEN, ODD, (0, 39))
    nd = verify_reduction(PLUS_ONE, EVEN, ODD, (0, 39), mode=NONDETERMINISTIC)
    assert nd.violations == det.violations
    assert nd.f_profile.steps == det.f_profile.steps
    assert nd.mode == NONDETERMINISTIC


def test_nondet_f_with_consistent_branches():
    guess = assemble(asmlib.GUESS_BIT, name="guess")
    report = verify_reduction(guess, EVEN, EVEN, (0, 19), mode=NONDETERMINISTIC)
    assert report.verified
    assert report.f_profile.steps == (4,) * 20


def test_nondet_f_under_det_mode_rejected():
    guess = assemble(asmlib.GUESS_BIT, name="guess")
    with pytest.raises(NondeterminismError):
        verify_reduction(guess, EVEN, EVEN, (0, 3))


def test_inconsistent_f_raises():
    scatter = assemble("CHOOSE r1, r0\nCPY r1, r0\nHALT", name="scatter")
    with pytest.raises(InconsistentBranchesError):
        verify_reduction(scatter, EVEN, EVEN, (1, 1), mode=NONDETERMINISTIC)


def test_nonhalting_f_carries_input():
    spin = assemble("loop:\nJZ r1, loop\nHALT", name="spin")
    with pytest.raises(EvaluationError) as exc:
        verify_reduction(spin, EVEN, ODD, (5, 9), fuel=100)
    assert exc.value.index == 5


def test_domain_validation():
    with pytest.raises(ValueError):
        verify_reduction(PLUS_ONE, EVEN, ODD, (5, 4))
    with pytest.raises(ValueError):
        verify_reduction(PLUS_ONE, EVEN, ODD, (-1, 4))


def _parity_prefixes(k=20):
    return (increasing_listing(EVEN, k), increasing_listing(ODD, k))


def test_pu_equivalence_valid():
    report = equivalence(
        PLUS_ONE, MINUS_ONE, EVEN, ODD, (1, 199),
        kind="pu", coorder_input=_parity_prefixes(),
    )
    assert report.valid
    assert report.kind == "pu"
    assert report.forward.mode == DETERMINISTIC
    assert report.coorder is not None and report.coorder.co_order


def test_npu_rerun_matches_pu():
    pu = equivalence(
        PLUS_ONE, MINUS_ONE, EVEN, ODD, (1, 199),
        kind="pu", coorder_input=_parity_prefixes(),
    )
    npu = equivalence(
        PLUS_ONE, MINUS_ONE, EVEN, ODD, (1, 199),
        kind="npu", coorder_input=_parity_prefixes(),
    )
    assert npu.valid
    assert npu.forward.violations == pu.forward.violations
    assert npu.backward.violations == pu.backward.violations
    assert npu.forward.f_profile.steps == pu.forward.f_profile.steps


def test_np_equiv_needs_no_prefixes():
    report = equivalence(PLUS_ONE, MINUS_ONE, EVEN, ODD, (1, 99), kind="np_equiv")
    assert report.valid
    assert report.coorder is None


def test_pu_requires_prefixes():
    with pytest.raises(ValueError):
        equivalence(PLUS_ONE, MINUS_ONE, EVEN, ODD, (1, 99), kind="pu")


def test_unknown_kind():
    with pytest.raises(ValueError):
        equivalence(PLUS_ONE, MINUS_ONE, EVEN, ODD, (1, 99), kind="turbo")


def test_pu_invalid_only_via_coorder():
    from enumlab.listing import Prefix

    scrambled = (Prefix((1, 0, 3, 2)), Prefix((0, 1, 2, 3)))
    report = equivalence(
        PLUS_ONE, MINUS_ONE, EVEN, ODD, (1, 99),
        kind="pu", coorder_input=scrambled,
    )
    assert report.forward.verified and report.backward.verified
    assert not report.valid
    assert report.coorder is not None and not report.coorder.co_order


def test_broken_equivalence_direction():
    report = equivalence(
        IDENTITY, MINUS_ONE, EVEN, ODD, (1, 49),
        kind="pu", coorder_input=_parity_prefixes(),
    )
    assert not report.forward.verified
    assert not report.valid


def test_consistency_of_verified_reduction():
    report = turing_consistency(PLUS_ONE, EVEN, ODD, (0, 99))
    assert report.consistent
    assert report.mismatches == ()


def test_consistency_of_broken_reduction():
    report = turing_consistency(IDENTITY, EVEN, ODD, (0, 19))
    assert not report.consistent
    assert report.mismatches == tuple(range(20))


def test_consistency_matches_verification_domain():
    sub = (10, 29)
    assert verify_reduction(MINUS_ONE, ODD, EVEN, sub).verified
    assert turing_consistency(MINUS_ONE, ODD, EVEN, sub).consistent


def test_violations_csv():
    report = verify_reduction(IDENTITY, EVEN, ODD, (0, 2))
    assert violations_to_csv(report) == "x,a_bit,b_bit\n0,1,0\n1,0,1\n2,1,0\n"


def test_report_serialization():
    report = verify_reduction(PLUS_ONE, EVEN, ODD, (0, 19))
    data = report.to_dict()
    assert data["verified"] is True
    assert data["domain"] == [0, 19]
    assert data["f_steps"] == [3] * 20
    assert data["fit"] is not None
