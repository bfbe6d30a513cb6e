"""Growth estimation and co-order certificates with polynomial step bounds.

A certificate packages the evidence that some target set shares the order of
a witness listing whose step profile sits under an explicit polynomial
c*(n+1)**k for n >= n0.  The deterministic kind profiles the witness with the
sequential runner, the nondeterministic kind with shortest accepting branches.
Certificates serialize to JSON and can be re-checked from the serialized
evidence alone; re-profiling the witness needs the listing itself.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidCertificateError, NondeterminismError, UnfittableProfileError
from .listing import DETERMINISTIC, NONDETERMINISTIC, Listing, Prefix, TimeProfile, sample
from .order import CoOrderReport, coorder_prefix

MIN_FIT_LENGTH = 16

P_COORDER = "P_coorder"
NP_COORDER = "NP_coorder"


@dataclass(frozen=True)
class GrowthFit:
    exponent_estimate: float
    intercept: float
    residual: float
    sample_range: tuple[int, int]

    def to_dict(self) -> dict:
        return {
            "exponent_estimate": self.exponent_estimate,
            "intercept": self.intercept,
            "residual": self.residual,
            "sample_range": list(self.sample_range),
        }


@dataclass(frozen=True)
class BoundCheck:
    k: int
    c: float
    n0: int
    horizon: int
    holds: bool
    first_violation: int | None

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "c": self.c,
            "n0": self.n0,
            "horizon": self.horizon,
            "holds": self.holds,
            "first_violation": self.first_violation,
        }


@dataclass(frozen=True)
class Certificate:
    kind: str
    subject_set: str
    witness_set: str
    witness_listing: str
    horizon: int
    bound: BoundCheck
    coorder: CoOrderReport
    subject_values: tuple[int, ...]
    witness_values: tuple[int, ...]
    witness_steps: tuple[int, ...]
    # execution context, kept out of serialization and equality
    subject: Prefix = field(compare=False, repr=False)
    witness: Listing | None = field(default=None, compare=False, repr=False)

    @property
    def valid(self) -> bool:
        return self.bound.holds and self.coorder.co_order

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "subject_set": self.subject_set,
            "witness_set": self.witness_set,
            "witness_listing": self.witness_listing,
            "horizon": self.horizon,
            "bound": self.bound.to_dict(),
            "coorder": self.coorder.to_dict(),
            "subject_values": list(self.subject_values),
            "witness_values": list(self.witness_values),
            "witness_steps": list(self.witness_steps),
            "valid": self.valid,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def fit_poly_exponent(t: TimeProfile, n_lo: int | None = None) -> GrowthFit:
    """Least-squares slope of log(steps) against log(n+1), upper half only.

    The lower half of the profile is dropped so early transients do not bias
    the slope; pass n_lo to move the cutoff.  Needs at least MIN_FIT_LENGTH
    samples and two positive step counts past the cutoff.
    """
    length = len(t)
    if length < MIN_FIT_LENGTH:
        raise UnfittableProfileError(
            f"need at least {MIN_FIT_LENGTH} samples, got {length}"
        )
    if n_lo is None:
        n_lo = length // 2
    if not 0 <= n_lo < length:
        raise ValueError("n_lo out of range")
    xs = []
    ys = []
    for n in range(n_lo, length):
        s = t.steps[n]
        if s >= 1:
            xs.append(math.log(n + 1))
            ys.append(math.log(s))
    if len(xs) < 2:
        raise UnfittableProfileError("too few positive step counts to fit")
    slope, intercept = np.polyfit(np.array(xs), np.array(ys), 1)
    resid = float(np.mean((np.array(ys) - (slope * np.array(xs) + intercept)) ** 2))
    return GrowthFit(float(slope), float(intercept), resid, (n_lo, length - 1))


def check_bound(t: TimeProfile, k: int, c: float, n0: int) -> BoundCheck:
    """Does steps[n] <= c*(n+1)**k hold for every n0 <= n < horizon?

    Vacuously true when n0 is at or past the horizon.
    """
    if k < 0 or n0 < 0:
        raise ValueError("k and n0 must be naturals")
    if c <= 0:
        raise ValueError("c must be positive")
    horizon = len(t)
    for n in range(n0, horizon):
        if t.steps[n] > c * (n + 1) ** k:
            return BoundCheck(k, c, n0, horizon, False, n)
    return BoundCheck(k, c, n0, horizon, True, None)


def _certify(
    kind: str,
    subject: Prefix,
    witness: Listing,
    k: int,
    c: float,
    n0: int,
    horizon: int,
    subject_name: str,
) -> Certificate:
    mode = DETERMINISTIC if kind == P_COORDER else NONDETERMINISTIC
    if mode == DETERMINISTIC and not witness.source.deterministic:
        raise NondeterminismError(
            f"witness {witness.name!r} uses CHOOSE; only the"
            " nondeterministic certificate kind can profile it"
        )
    profiled = Listing(
        witness.name, witness.source, mode, witness.fuel, witness.branch_cap
    )
    rows = sample(profiled, horizon)
    wprefix = Prefix(tuple(v for v, _ in rows))
    wprofile = TimeProfile(tuple(s for _, s in rows), mode)
    bound = check_bound(wprofile, k, c, n0)
    coorder = coorder_prefix(subject, wprefix)
    return Certificate(
        kind=kind,
        subject_set=subject_name,
        witness_set=witness.name,
        witness_listing=witness.name,
        horizon=horizon,
        bound=bound,
        coorder=coorder,
        subject_values=tuple(subject.values),
        witness_values=tuple(wprefix.values),
        witness_steps=tuple(wprofile.steps),
        subject=subject,
        witness=witness,
    )


def certify_p_coorder(
    subject: Prefix,
    witness: Listing,
    k: int,
    c: float,
    n0: int,
    horizon: int,
    subject_name: str = "subject",
) -> Certificate:
    """Deterministic-time co-order certificate over the first `horizon` ranks."""
    return _certify(P_COORDER, subject, witness, k, c, n0, horizon, subject_name)


def certify_np_coorder(
    subject: Prefix,
    witness: Listing,
    k: int,
    c: float,
    n0: int,
    horizon: int,
    subject_name: str = "subject",
) -> Certificate:
    """Like certify_p_coorder but charges shortest accepting branches."""
    return _certify(NP_COORDER, subject, witness, k, c, n0, horizon, subject_name)


def lift_certificate(cert: Certificate) -> Certificate:
    """Re-issue a valid deterministic certificate as a nondeterministic one.

    Deterministic programs run identically branch-for-branch under the
    branching runner, so the lifted certificate keeps the same bound
    constants and stays valid.
    """
    if cert.kind != P_COORDER:
        raise InvalidCertificateError("only deterministic certificates lift")
    if not cert.valid:
        raise InvalidCertificateError("refusing to lift an invalid certificate")
    if cert.witness is None:
        raise InvalidCertificateError("certificate lacks its witness listing")
    return _certify(
        NP_COORDER,
        cert.subject,
        cert.witness,
        cert.bound.k,
        cert.bound.c,
        cert.bound.n0,
        cert.horizon,
        cert.subject_set,
    )


def verify_certificate(
    data: dict, witness: Listing | None = None
) -> tuple[bool, dict]:
    """Re-check a serialized certificate from its embedded evidence.

    Recomputes the bound verdict and the co-order verdict from the stored
    value and step lists and compares them field by field against what the
    certificate claims.  When the witness listing is supplied it is also
    re-profiled and must reproduce the stored values and steps exactly.
    Returns (verified, report) where the report lists every discrepancy.
    """
    reasons: list[str] = []
    try:
        kind = data["kind"]
        horizon = int(data["horizon"])
        bound_claim = dict(data["bound"])
        coorder_claim = dict(data["coorder"])
        subject_values = [int(v) for v in data["subject_values"]]
        witness_values = [int(v) for v in data["witness_values"]]
        witness_steps = [int(s) for s in data["witness_steps"]]
        claimed_valid = bool(data["valid"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidCertificateError(f"malformed certificate: {exc}") from exc
    if kind not in (P_COORDER, NP_COORDER):
        raise InvalidCertificateError(f"unknown certificate kind {kind!r}")

    for label, seq in (
        ("subject_values", subject_values),
        ("witness_values", witness_values),
        ("witness_steps", witness_steps),
    ):
        if len(seq) != horizon:
            reasons.append(f"{label} has {len(seq)} entries, horizon is {horizon}")

    mode = DETERMINISTIC if kind == P_COORDER else NONDETERMINISTIC
    if not reasons:
        profile = TimeProfile(tuple(witness_steps), mode)
        bound_redone = check_bound(
            profile,
            int(bound_claim["k"]),
            float(bound_claim["c"]),
            int(bound_claim["n0"]),
        ).to_dict()
        if bound_redone != bound_claim:
            reasons.append(
                f"bound check does not reproduce: claimed {bound_claim},"
                f" recomputed {bound_redone}"
            )
        coorder_redone = coorder_prefix(
            Prefix(tuple(subject_values)), Prefix(tuple(witness_values))
        ).to_dict()
        if coorder_redone != coorder_claim:
            reasons.append(
                f"co-order check does not reproduce: claimed {coorder_claim},"
                f" recomputed {coorder_redone}"
            )
        redone_valid = bound_redone["holds"] and coorder_redone["co_order"]
        if redone_valid != claimed_valid:
            reasons.append(
                f"validity flag is {claimed_valid}, evidence says {redone_valid}"
            )

    reprofiled = False
    if witness is not None and not reasons:
        profiled = Listing(
            witness.name, witness.source, mode, witness.fuel, witness.branch_cap
        )
        rows = sample(profiled, horizon)
        fresh_values = [v for v, _ in rows]
        fresh_steps = [s for _, s in rows]
        reprofiled = True
        if fresh_values != witness_values:
            reasons.append("witness re-profiling produced different values")
        if fresh_steps != witness_steps:
            reasons.append("witness re-profiling produced different step counts")

    report = {
        "verified": not reasons,
        "claimed_valid": claimed_valid,
        "reprofiled": reprofiled,
        "reasons": reasons,
    }
    return (not reasons, report)
