"""Growth fitting, bound checks, certificates, the deterministic-to-nondet lift."""

import json

import pytest

from enumlab import assemble
from enumlab.complexity import (
    Certificate,
    check_bound,
    certify_np_coorder,
    certify_p_coorder,
    fit_poly_exponent,
    lift_certificate,
    verify_certificate,
)
from enumlab.errors import (
    EvaluationError,
    InvalidCertificateError,
    LengthMismatchError,
    NondeterminismError,
    UnfittableProfileError,
)
from enumlab.listing import (
    DETERMINISTIC,
    NONDETERMINISTIC,
    Listing,
    Prefix,
    TimeProfile,
    prefix,
)
from enumlab.order import increasing_listing

import asmlib


def _power_profile(k, c, length=64):
    return TimeProfile(tuple(c * (n + 1) ** k for n in range(length)))


def _listing(text, name, mode=DETERMINISTIC, **kw):
    return Listing(name, assemble(text, name=name), mode, **kw)


IDENTITY = _listing(asmlib.IDENTITY, "identity")


def test_fit_exact_square():
    fit = fit_poly_exponent(_power_profile(2, 1))
    assert abs(fit.exponent_estimate - 2.0) < 0.01
    assert fit.residual < 1e-12
    assert fit.sample_range == (32, 63)


def test_fit_flat_profile():
    fit = fit_poly_exponent(TimeProfile((1,) * 40))
    assert abs(fit.exponent_estimate) < 0.01
    assert abs(fit.intercept) < 0.01


def test_fit_recovers_small_exponents():
    for k in (0, 1, 2, 3):
        for c in (1, 5):
            fit = fit_poly_exponent(_power_profile(k, c))
            assert abs(fit.exponent_estimate - k) < 0.05, (k, c)


def test_fit_too_short():
    with pytest.raises(UnfittableProfileError):
        fit_poly_exponent(TimeProfile((1,) * 15))


def test_fit_degenerate():
    with pytest.raises(UnfittableProfileError):
        fit_poly_exponent(TimeProfile((0,) * 40))


def test_fit_ignores_startup_transient():
    # garbage below the cutoff must not move the slope
    steps = tuple(10**6 if n < 32 else (n + 1) ** 2 for n in range(64))
    fit = fit_poly_exponent(TimeProfile(steps))
    assert abs(fit.exponent_estimate - 2.0) < 0.01


def test_fit_custom_cutoff():
    steps = tuple((n + 1) ** 3 for n in range(64))
    fit = fit_poly_exponent(TimeProfile(steps), n_lo=10)
    assert fit.sample_range == (10, 63)
    assert abs(fit.exponent_estimate - 3.0) < 0.01


def test_bound_flat_holds():
    check = check_bound(TimeProfile((1,) * 20), k=0, c=1, n0=0)
    assert check.holds and check.first_violation is None


def test_bound_square_fails_fast():
    check = check_bound(_power_profile(2, 1, 20), k=1, c=1, n0=0)
    assert not check.holds
    assert check.first_violation == 1


def test_bound_monotone_in_c_antitone_in_n0():
    t = _power_profile(2, 3, 40)
    base = check_bound(t, k=2, c=1, n0=0)
    assert not base.holds
    assert check_bound(t, k=2, c=3, n0=0).holds
    assert check_bound(t, k=2, c=1, n0=len(t)).holds  # vacuous window


def test_bound_argument_validation():
    t = TimeProfile((1, 1))
    with pytest.raises(ValueError):
        check_bound(t, k=-1, c=1, n0=0)
    with pytest.raises(ValueError):
        check_bound(t, k=1, c=0, n0=0)


def _even_prefix(k):
    even = assemble(asmlib.EVEN_DECIDER, name="even_decider")
    return increasing_listing(even, k)


def test_p_certificate_valid():
    cert = certify_p_coorder(
        _even_prefix(50), IDENTITY, k=1, c=1, n0=0, horizon=50, subject_name="evens"
    )
    assert cert.valid
    assert cert.kind == "P_coorder"
    assert cert.bound.holds and cert.coorder.co_order
    assert cert.subject_set == "evens"
    assert cert.witness_listing == "identity"
    assert cert.witness_steps == (1,) * 50


def test_p_certificate_coorder_failure():
    swap = _listing(asmlib.SWAP_ORDER, "swap_order")
    cert = certify_p_coorder(
        prefix(swap, 16), IDENTITY, k=1, c=1, n0=0, horizon=16
    )
    assert not cert.valid
    assert cert.bound.holds
    assert not cert.coorder.co_order
    assert cert.coorder.violating_pair == (0, 1)


def test_p_certificate_bound_failure():
    slow = _listing(asmlib.SLOW_IDENTITY, "slow_identity")
    cert = certify_p_coorder(
        prefix(IDENTITY, 16), slow, k=0, c=1, n0=0, horizon=16
    )
    assert not cert.valid
    assert not cert.bound.holds
    assert cert.coorder.co_order


def test_certify_horizon_mismatch():
    with pytest.raises(LengthMismatchError):
        certify_p_coorder(_even_prefix(10), IDENTITY, k=1, c=1, n0=0, horizon=20)


def test_p_certify_rejects_nondet_witness():
    guess = _listing(asmlib.GUESS_BIT, "guess", mode=NONDETERMINISTIC)
    with pytest.raises(NondeterminismError):
        certify_p_coorder(Prefix((0, 1)), guess, k=1, c=4, n0=0, horizon=2)


def test_np_certificate_accepts_nondet_witness():
    guess = _listing(asmlib.GUESS_BIT, "guess", mode=NONDETERMINISTIC)
    cert = certify_np_coorder(Prefix((0, 1)), guess, k=1, c=4, n0=0, horizon=2)
    assert cert.valid
    assert cert.witness_steps == (4, 4)


def test_np_certificate_conservative_on_det_witness():
    p = certify_p_coorder(_even_prefix(20), IDENTITY, k=1, c=1, n0=0, horizon=20)
    np_ = certify_np_coorder(_even_prefix(20), IDENTITY, k=1, c=1, n0=0, horizon=20)
    assert np_.kind == "NP_coorder"
    assert np_.witness_steps == p.witness_steps
    assert np_.witness_values == p.witness_values
    assert np_.bound == p.bound


def test_np_certificate_indeterminate_aborts():
    guess = _listing(
        asmlib.GUESS_BIT, "guess", mode=NONDETERMINISTIC, branch_cap=2
    )
    with pytest.raises(EvaluationError) as exc:
        certify_np_coorder(Prefix((0, 1)), guess, k=1, c=4, n0=0, horizon=2)
    assert exc.value.status == "indeterminate"


def test_lift_preserves_bound_fields():
    cert = certify_p_coorder(
        _even_prefix(30), IDENTITY, k=1, c=1, n0=0, horizon=30, subject_name="evens"
    )
    lifted = lift_certificate(cert)
    assert lifted.kind == "NP_coorder"
    assert lifted.valid
    assert lifted.bound == cert.bound
    assert lifted.witness_steps == cert.witness_steps
    assert lifted.subject_set == "evens"


def test_lift_rejects_invalid():
    swap = _listing(asmlib.SWAP_ORDER, "swap_order")
    bad = certify_p_coorder(prefix(swap, 8), IDENTITY, k=1, c=1, n0=0, horizon=8)
    with pytest.raises(InvalidCertificateError):
        lift_certificate(bad)


def test_lift_rejects_np_input():
    cert = certify_np_coorder(_even_prefix(10), IDENTITY, k=1, c=1, n0=0, horizon=10)
    with pytest.raises(InvalidCertificateError):
        lift_certificate(cert)


def test_certificate_json_roundtrip():
    cert = certify_p_coorder(_even_prefix(10), IDENTITY, k=1, c=1, n0=0, horizon=10)
    data = json.loads(cert.to_json())
    assert data == cert.to_dict()
    assert data["valid"] is True
    assert cert.to_json() == cert.to_json()


def test_verify_good_certificate():
    cert = certify_p_coorder(_even_prefix(12), IDENTITY, k=1, c=1, n0=0, horizon=12)
    data = json.loads(cert.to_json())
    ok, report = verify_certificate(data)
    assert ok and report["verified"]
    assert not report["reprofiled"]
    ok, report = verify_certificate(data, witness=IDENTITY)
    assert ok and report["reprofiled"]


def test_verify_detects_tampered_flag():
    cert = certify_p_coorder(
        prefix(_listing(asmlib.SWAP_ORDER, "swap_order"), 8),
        IDENTITY, k=1, c=1, n0=0, horizon=8,
    )
    data = json.loads(cert.to_json())
    data["valid"] = True  # lie about the verdict
    ok, report = verify_certificate(data)
    assert not ok
    assert any("validity" in r for r in report["reasons"])


def test_verify_detects_tampered_steps():
    cert = certify_p_coorder(_even_prefix(12), IDENTITY, k=1, c=1, n0=0, horizon=12)
    data = json.loads(cert.to_json())
    data["witness_steps"][3] = 10**9  # stored bound verdict no longer reproduces
    ok, report = verify_certificate(data)
    assert not ok
    data = json.loads(cert.to_json())
    data["witness_steps"][3] = 2  # bound still holds, but not what was run
    ok, _ = verify_certificate(data)
    assert ok  # undetectable without the witness
    ok, report = verify_certificate(data, witness=IDENTITY)
    assert not ok
    assert any("step counts" in r for r in report["reasons"])


def test_verify_rejects_malformed():
    with pytest.raises(InvalidCertificateError):
        verify_certificate({"kind": "P_coorder"})
    with pytest.raises(InvalidCertificateError):
        verify_certificate({})


def test_verify_length_drift():
    cert = certify_p_coorder(_even_prefix(6), IDENTITY, k=1, c=1, n0=0, horizon=6)
    data = json.loads(cert.to_json())
    data["witness_steps"] = data["witness_steps"][:-1]
    ok, report = verify_certificate(data)
    assert not ok
    assert any("horizon" in r for r in report["reasons"])
