"""Listings: enumerations of sets as machine programs, with step profiles.

A listing wraps an enumerator program: on input n it must halt with the n-th
element of the listed set as output.  All step counts come from actually
running the program (deterministically, or breadth-first for nondeterministic
enumerators, in which case the cost of an input is the depth of the shallowest
halting branch).  Closed-form descriptions of the same sets exist only as
oracles inside the test suite; nothing here consults them.

Injectivity of a listing is audited, never assumed: prefixes with repeated
values can be constructed and audit() will point at the first collision.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EvaluationError
from .machine import (
    DEFAULT_BRANCH_CAP,
    DEFAULT_FUEL,
    Program,
    run_det,
    run_nondet,
)

DETERMINISTIC = "deterministic"
NONDETERMINISTIC = "nondeterministic"


@dataclass(frozen=True)
class Listing:
    """A named enumerator with its execution policy.

    `fuel` is the per-input step budget; every evaluation of the listing uses
    it unless the caller overrides it explicitly.
    """

    name: str
    source: Program
    mode: str = DETERMINISTIC
    fuel: int = DEFAULT_FUEL
    branch_cap: int = DEFAULT_BRANCH_CAP

    def __post_init__(self):
        if self.mode not in (DETERMINISTIC, NONDETERMINISTIC):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == DETERMINISTIC and not self.source.deterministic:
            raise ValueError(
                f"program {self.source.name!r} contains CHOOSE; "
                "the listing must be nondeterministic"
            )


@dataclass(frozen=True)
class Prefix:
    """The first k values of a listing, in input order."""

    values: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)


@dataclass(frozen=True)
class TimeProfile:
    """Per-input step counts for the first k inputs of a listing."""

    steps: tuple[int, ...]
    mode: str = DETERMINISTIC

    def __len__(self) -> int:
        return len(self.steps)

    def __getitem__(self, i):
        return self.steps[i]

    def __iter__(self):
        return iter(self.steps)


@dataclass(frozen=True)
class AuditReport:
    prefix_length: int
    injective: bool
    first_collision: tuple[int, int] | None
    membership_violations: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return self.injective and not self.membership_violations

    def to_dict(self) -> dict:
        return {
            "prefix_length": self.prefix_length,
            "injective": self.injective,
            "first_collision": list(self.first_collision)
            if self.first_collision
            else None,
            "membership_violations": [list(v) for v in self.membership_violations],
            "ok": self.ok,
        }


def evaluate(listing: Listing, n: int, fuel: int | None = None) -> tuple[int, int]:
    """Value and step count of the listing at input n.

    Raises EvaluationError when the run does not halt successfully within
    fuel; nondeterministic output inconsistencies propagate from the runner.
    """
    budget = listing.fuel if fuel is None else fuel
    if listing.mode == DETERMINISTIC:
        out = run_det(listing.source, n, budget)
        if out.status != "halted":
            raise EvaluationError(listing.name, n, out.status)
        return out.output, out.steps
    out = run_nondet(listing.source, n, budget, listing.branch_cap)
    if out.status != "halted":
        raise EvaluationError(listing.name, n, out.status)
    return out.output, out.min_steps


def sample(listing: Listing, k: int, fuel: int | None = None) -> list[tuple[int, int]]:
    """(value, steps) rows for inputs 0..k-1; one machine run per row."""
    return [evaluate(listing, n, fuel) for n in range(k)]


def prefix(listing: Listing, k: int, fuel: int | None = None) -> Prefix:
    return Prefix(tuple(v for v, _ in sample(listing, k, fuel)))


def time_profile(listing: Listing, k: int, fuel: int | None = None) -> TimeProfile:
    return TimeProfile(tuple(s for _, s in sample(listing, k, fuel)), listing.mode)


def audit(
    p: Prefix,
    decider: Program | None = None,
    fuel: int = DEFAULT_FUEL,
) -> AuditReport:
    """Check a prefix for duplicate values and, optionally, membership.

    The decider is run on every prefix value; values it rejects (output 0)
    are reported.  A decider that does not halt within fuel is an error.
    """
    first_collision = None
    seen: dict[int, int] = {}
    for j, value in enumerate(p.values):
        if value in seen:
            first_collision = (seen[value], j)
            break
        seen[value] = j

    violations: list[tuple[int, int]] = []
    if decider is not None:
        for i, value in enumerate(p.values):
            out = run_det(decider, value, fuel)
            if out.status != "halted":
                raise EvaluationError(decider.name, value, out.status)
            if out.output == 0:
                violations.append((i, value))

    return AuditReport(
        prefix_length=len(p),
        injective=first_collision is None,
        first_collision=first_collision,
        membership_violations=tuple(violations),
    )


def rows_to_csv(p: Prefix, t: TimeProfile) -> str:
    """CSV with header n,value,steps; one row per input."""
    if len(p) != len(t):
        raise ValueError("prefix and profile lengths differ")
    lines = ["n,value,steps"]
    for n, (value, steps) in enumerate(zip(p.values, t.steps)):
        lines.append(f"{n},{value},{steps}")
    return "\n".join(lines) + "\n"


def rows_to_json(p: Prefix, t: TimeProfile) -> list[dict]:
    if len(p) != len(t):
        raise ValueError("prefix and profile lengths differ")
    return [
        {"n": n, "value": value, "steps": steps}
        for n, (value, steps) in enumerate(zip(p.values, t.steps))
    ]
