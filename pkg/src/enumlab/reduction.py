"""Many-one reduction checking on finite domains, plus equivalence bundles.

A reduction f from A to B is verified on a contiguous integer domain by
computing y = f(x) on the machine and comparing the membership bits
a_decider(x) and b_decider(y) pointwise.  Equivalence reports pair a verified
reduction in each direction; the unified kinds additionally demand a co-order
check on supplied prefixes.  The consistency check replays the classic
argument that a many-one reduction lets b_decider decide A.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexity import GrowthFit, MIN_FIT_LENGTH, fit_poly_exponent
from .errors import EvaluationError
from .listing import DETERMINISTIC, NONDETERMINISTIC, Prefix, TimeProfile
from .machine import DEFAULT_BRANCH_CAP, DEFAULT_FUEL, Program, run_det, run_nondet
from .order import CoOrderReport, coorder_prefix

NP_EQUIV = "np_equiv"
PU = "pu"
NPU = "npu"
_KINDS = (NP_EQUIV, PU, NPU)


@dataclass(frozen=True)
class ReductionReport:
    f_name: str
    a_name: str
    b_name: str
    domain: tuple[int, int]
    mode: str
    violations: tuple[tuple[int, int, int], ...]
    f_profile: TimeProfile
    fit: GrowthFit | None

    @property
    def verified(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "f_name": self.f_name,
            "a_name": self.a_name,
            "b_name": self.b_name,
            "domain": list(self.domain),
            "mode": self.mode,
            "verified": self.verified,
            "violations": [list(v) for v in self.violations],
            "f_steps": list(self.f_profile.steps),
            "fit": self.fit.to_dict() if self.fit is not None else None,
        }


@dataclass(frozen=True)
class EquivalenceReport:
    kind: str
    forward: ReductionReport
    backward: ReductionReport
    coorder: CoOrderReport | None

    @property
    def valid(self) -> bool:
        if not (self.forward.verified and self.backward.verified):
            return False
        if self.kind in (PU, NPU):
            return self.coorder is not None and self.coorder.co_order
        return True

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "valid": self.valid,
            "forward": self.forward.to_dict(),
            "backward": self.backward.to_dict(),
            "coorder": self.coorder.to_dict() if self.coorder else None,
        }


@dataclass(frozen=True)
class ConsistencyReport:
    f_name: str
    a_name: str
    b_name: str
    domain: tuple[int, int]
    mismatches: tuple[int, ...]

    @property
    def consistent(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "f_name": self.f_name,
            "a_name": self.a_name,
            "b_name": self.b_name,
            "domain": list(self.domain),
            "consistent": self.consistent,
            "mismatches": list(self.mismatches),
        }


def _bit(x: int) -> int:
    return 1 if x != 0 else 0


def _decide(decider: Program, x: int, fuel: int) -> int:
    out = run_det(decider, x, fuel)
    if out.status != "halted":
        raise EvaluationError(decider.name, x, out.status)
    return _bit(out.output)


def _apply(f: Program, x: int, fuel: int, mode: str, branch_cap: int) -> tuple[int, int]:
    """Run the mapping program on x, returning (y, steps charged)."""
    if mode == DETERMINISTIC:
        out = run_det(f, x, fuel)
        if out.status != "halted":
            raise EvaluationError(f.name, x, out.status)
        return out.output, out.steps
    nout = run_nondet(f, x, fuel, branch_cap)
    if nout.status != "halted":
        raise EvaluationError(f.name, x, nout.status)
    return nout.output, nout.min_steps


def verify_reduction(
    f: Program,
    a_decider: Program,
    b_decider: Program,
    domain: tuple[int, int],
    fuel: int = DEFAULT_FUEL,
    mode: str = DETERMINISTIC,
    branch_cap: int = DEFAULT_BRANCH_CAP,
) -> ReductionReport:
    """Check a_decider(x) = b_decider(f(x)) for every x in lo..hi inclusive.

    Decider outputs are taken as membership bits with any nonzero count as 1.
    The mapping program is profiled over the domain; a growth fit is attached
    when the domain is long enough to support one.
    """
    if mode not in (DETERMINISTIC, NONDETERMINISTIC):
        raise ValueError(f"unknown mode {mode!r}")
    lo, hi = domain
    if lo < 0 or hi < lo:
        raise ValueError(f"bad domain {domain!r}")
    violations = []
    steps = []
    for x in range(lo, hi + 1):
        y, fsteps = _apply(f, x, fuel, mode, branch_cap)
        steps.append(fsteps)
        a_bit = _decide(a_decider, x, fuel)
        b_bit = _decide(b_decider, y, fuel)
        if a_bit != b_bit:
            violations.append((x, a_bit, b_bit))
    profile = TimeProfile(tuple(steps), mode)
    fit = fit_poly_exponent(profile) if len(profile) >= MIN_FIT_LENGTH else None
    return ReductionReport(
        f_name=f.name,
        a_name=a_decider.name,
        b_name=b_decider.name,
        domain=(lo, hi),
        mode=mode,
        violations=tuple(violations),
        f_profile=profile,
        fit=fit,
    )


def equivalence(
    f_ab: Program,
    f_ba: Program,
    a_decider: Program,
    b_decider: Program,
    domain: tuple[int, int],
    fuel: int = DEFAULT_FUEL,
    kind: str = PU,
    coorder_input: tuple[Prefix, Prefix] | None = None,
    branch_cap: int = DEFAULT_BRANCH_CAP,
) -> EquivalenceReport:
    """Verify reductions both ways and, for the unified kinds, the co-order.

    kind np_equiv runs both directions nondeterministically and needs no
    prefixes.  kind pu runs deterministically, kind npu nondeterministically;
    both require coorder_input = (a_prefix, b_prefix).
    """
    if kind not in _KINDS:
        raise ValueError(f"unknown equivalence kind {kind!r}")
    if kind in (PU, NPU) and coorder_input is None:
        raise ValueError(f"kind {kind!r} requires coorder_input prefixes")
    mode = DETERMINISTIC if kind == PU else NONDETERMINISTIC
    forward = verify_reduction(
        f_ab, a_decider, b_decider, domain, fuel, mode, branch_cap
    )
    backward = verify_reduction(
        f_ba, b_decider, a_decider, domain, fuel, mode, branch_cap
    )
    coorder = None
    if coorder_input is not None:
        coorder = coorder_prefix(coorder_input[0], coorder_input[1])
    return EquivalenceReport(kind, forward, backward, coorder)


def turing_consistency(
    f: Program,
    a_decider: Program,
    b_decider: Program,
    domain: tuple[int, int],
    fuel: int = DEFAULT_FUEL,
    mode: str = DETERMINISTIC,
    branch_cap: int = DEFAULT_BRANCH_CAP,
) -> ConsistencyReport:
    """Decide membership through the reduction and compare with the direct decider."""
    lo, hi = domain
    if lo < 0 or hi < lo:
        raise ValueError(f"bad domain {domain!r}")
    mismatches = []
    for x in range(lo, hi + 1):
        y, _ = _apply(f, x, fuel, mode, branch_cap)
        if _decide(b_decider, y, fuel) != _decide(a_decider, x, fuel):
            mismatches.append(x)
    return ConsistencyReport(
        f.name, a_decider.name, b_decider.name, (lo, hi), tuple(mismatches)
    )


def violations_to_csv(report: ReductionReport) -> str:
    lines = ["x,a_bit,b_bit"]
    for x, a_bit, b_bit in report.violations:
        lines.append(f"{x},{a_bit},{b_bit}")
    return "\n".join(lines) + "\n"
